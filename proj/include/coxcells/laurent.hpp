/*
  This is laurent.hpp

  Integer Laurent polynomials in one variable v, with overflow-checked
  64-bit coefficients.  All ring arithmetic in the library runs through
  this type; there is no floating point anywhere.
*/

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxcells {

using Coeff = std::int64_t;

/* Thrown when a coefficient leaves the 64-bit range.  Results are never
   silently wrapped. */
struct overflow_error : std::runtime_error {
  overflow_error() : std::runtime_error("coefficient overflow") {}
};

inline Coeff add_checked(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error();
  return r;
}

inline Coeff mul_checked(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error();
  return r;
}

/* A Laurent polynomial is stored densely between its minimal and maximal
   exponent: coeffs_[k] is the coefficient of v^(lo_ + k).  The zero
   polynomial has an empty coefficient vector; otherwise both ends are
   nonzero.  Every mutating operation restores this normal form, so
   operator== is coefficient-wise equality. */
class LaurentPoly {
public:
  LaurentPoly() = default;

  static LaurentPoly constant(Coeff n) { return monomial(n, 0); }

  static LaurentPoly monomial(Coeff coeff, int exp) {
    LaurentPoly p;
    if (coeff != 0) {
      p.lo_ = exp;
      p.coeffs_.push_back(coeff);
    }
    return p;
  }

  /* Builds from a dense coefficient run starting at exponent lo.
     Leading and trailing zeros are trimmed, so any run is accepted. */
  static LaurentPoly from_dense(int lo, std::vector<Coeff> coeffs) {
    LaurentPoly p;
    p.lo_ = lo;
    p.coeffs_ = std::move(coeffs);
    p.normalize();
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }

  /* Degree bounds; only meaningful on nonzero polynomials. */
  int min_deg() const { return lo_; }
  int max_deg() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }

  Coeff coeff(int exp) const {
    int k = exp - lo_;
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
  }

  /* *this += scale * v^shift * p.  The workhorse for row operations. */
  LaurentPoly& add_scaled(const LaurentPoly& p, Coeff scale, int shift = 0);

  LaurentPoly& operator+=(const LaurentPoly& p) { return add_scaled(p, 1); }
  LaurentPoly& operator-=(const LaurentPoly& p) { return add_scaled(p, -1); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly operator-() const;

  /* The involution v -> v^-1 (coefficient vector reversed). */
  LaurentPoly bar() const;

  bool operator==(const LaurentPoly&) const = default;

  /* Renders like "v^-3 + 2*v^-1": terms ordered by descending power of
     v^-1, coefficient factor dropped when it is +-1, "*" between a kept
     coefficient and the v power.  Zero renders as "0". */
  std::string to_string() const;

  /* Exponent/coefficient pairs, lowest exponent first. */
  std::vector<std::pair<int, Coeff>> terms() const;

private:
  void normalize();

  int lo_ = 0;
  std::vector<Coeff> coeffs_;
};

}  // namespace coxcells
