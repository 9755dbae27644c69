/*
  This is laurent.cpp

  Arithmetic and rendering for integer Laurent polynomials.
*/

#include "coxcells/laurent.hpp"

#include <algorithm>
#include <limits>

namespace coxcells {

void LaurentPoly::normalize() {
  std::size_t front = 0;
  while (front < coeffs_.size() && coeffs_[front] == 0) ++front;
  if (front == coeffs_.size()) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  std::size_t back = coeffs_.size();
  while (coeffs_[back - 1] == 0) --back;
  if (front > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(front));
    lo_ += static_cast<int>(front);
  }
  coeffs_.resize(back - front);
}

LaurentPoly& LaurentPoly::add_scaled(const LaurentPoly& p, Coeff scale,
                                     int shift) {
  if (p.is_zero() || scale == 0) return *this;
  int plo = p.lo_ + shift;
  int phi = plo + static_cast<int>(p.coeffs_.size()) - 1;
  if (is_zero()) {
    lo_ = plo;
    coeffs_.assign(p.coeffs_.size(), 0);
  } else {
    int hi = max_deg();
    int nlo = std::min(lo_, plo);
    int nhi = std::max(hi, phi);
    if (nlo < lo_ || nhi > hi) {
      std::vector<Coeff> merged(static_cast<std::size_t>(nhi - nlo + 1), 0);
      std::copy(coeffs_.begin(), coeffs_.end(),
                merged.begin() + (lo_ - nlo));
      coeffs_ = std::move(merged);
      lo_ = nlo;
    }
  }
  for (std::size_t k = 0; k < p.coeffs_.size(); ++k) {
    Coeff& slot = coeffs_[static_cast<std::size_t>(plo - lo_) + k];
    slot = add_checked(slot, mul_checked(scale, p.coeffs_[k]));
  }
  normalize();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.lo_ = a.lo_ + b.lo_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      Coeff& slot = r.coeffs_[i + j];
      slot = add_checked(slot, mul_checked(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  r.normalize();
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (Coeff& c : r.coeffs_) {
    if (c == std::numeric_limits<Coeff>::min()) throw overflow_error();
    c = -c;
  }
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r = *this;
  if (r.is_zero()) return r;
  std::reverse(r.coeffs_.begin(), r.coeffs_.end());
  r.lo_ = -max_deg();
  return r;
}

std::vector<std::pair<int, Coeff>> LaurentPoly::terms() const {
  std::vector<std::pair<int, Coeff>> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0)
      out.emplace_back(lo_ + static_cast<int>(k), coeffs_[k]);
  return out;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto [exp, c] : terms()) {
    Coeff mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string vpart;
    if (exp == 0) {
      vpart = "";
    } else if (exp == 1) {
      vpart = "v";
    } else {
      vpart = "v^" + std::to_string(exp);
    }
    if (vpart.empty()) {
      out += std::to_string(mag);
    } else if (mag == 1) {
      out += vpart;
    } else {
      out += std::to_string(mag) + "*" + vpart;
    }
  }
  return out;
}

}  // namespace coxcells
