/*
  This is kl.cpp

  Row-by-row computation of the canonical basis, plus the T-basis
  multiplication helpers used for spot products and base change.
*/

#include "coxcells/kl.hpp"

#include <algorithm>
#include <thread>

namespace coxcells {

namespace {

/* Scratch accumulator for one row: dense over the group with a touched
   list, reused across rows by each worker. */
struct RowAccum {
  std::vector<LaurentPoly> val;
  std::vector<Elt> touched;

  explicit RowAccum(std::size_t n) : val(n) {}

  LaurentPoly& at(Elt x) {
    if (val[x].is_zero()) touched.push_back(x);
    return val[x];
  }

  void reset() {
    for (Elt x : touched) val[x] = LaurentPoly();
    touched.clear();
  }
};

}  // namespace

KLTable KLTable::build(const GroupTable& g, int threads) {
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  KLTable t;
  t.g_ = &g;
  t.rows_.resize(static_cast<std::size_t>(g.size()));

  bool check_support = g.size() <= 4096;

  auto fill_row = [&](Elt w, RowAccum& acc) {
    acc.reset();
    Gen s = static_cast<Gen>(__builtin_ctz(g.left_descents(w)));
    Elt wp = g.left(s, w);
    const KLRow& prev = t.rows_[wp];

    // c_s c_{w'}: each T_x of c_{w'} contributes T_{sx} + v^{+-1} T_x.
    auto push = [&](Elt x, const LaurentPoly& p) {
      Elt sx = g.left(s, x);
      acc.at(sx) += p;
      int shift = g.length(sx) > g.length(x) ? -1 : 1;
      acc.at(x).add_scaled(p, 1, shift);
    };
    push(wp, LaurentPoly::constant(1));
    for (std::size_t i = 0; i < prev.x.size(); ++i) push(prev.x[i], prev.p[i]);

    // Correction terms -mu(z,w') c_z over z < w' with sz < z.
    for (auto [z, m] : prev.mu) {
      if (!g.is_left_descent(s, z)) continue;
      acc.at(z).add_scaled(LaurentPoly::constant(1), -m);
      const KLRow& zrow = t.rows_[z];
      for (std::size_t i = 0; i < zrow.x.size(); ++i)
        acc.at(zrow.x[i]).add_scaled(zrow.p[i], -m);
    }

    KLRow& out = t.rows_[w];
    std::sort(acc.touched.begin(), acc.touched.end());
    for (Elt x : acc.touched) {
      const LaurentPoly& p = acc.val[x];
      if (p.is_zero()) continue;
      if (x == w) {
        if (!(p == LaurentPoly::constant(1)))
          throw compute_error("canonical basis row lost unitriangularity");
        continue;
      }
      if (p.max_deg() > -1)
        throw compute_error("canonical basis row violates the degree bound");
      for (auto [e, c] : p.terms())
        if (c < 0)
          throw compute_error("canonical basis row has a negative coefficient");
      if (check_support && !g.bruhat_leq(x, w))
        throw compute_error("canonical basis row escapes the Bruhat interval");
      out.x.push_back(x);
      out.p.push_back(p);
      Coeff m = p.coeff(-1);
      if (m != 0) out.mu.emplace_back(x, m);
    }
  };

  for (int len = 1; len <= g.max_length(); ++len) {
    Elt lo = g.first_of_length(len);
    Elt hi = g.first_of_length(len + 1);
    int nw = hi - lo;
    int nthreads = std::min(threads, nw);
    if (nthreads <= 1) {
      RowAccum acc(static_cast<std::size_t>(g.size()));
      for (Elt w = lo; w < hi; ++w) fill_row(w, acc);
    } else {
      std::vector<std::thread> pool;
      std::exception_ptr err;
      std::mutex err_mu;
      for (int k = 0; k < nthreads; ++k) {
        pool.emplace_back([&, k]() {
          try {
            RowAccum acc(static_cast<std::size_t>(g.size()));
            // Contiguous slice per worker; slices partition the stratum.
            Elt begin = lo + static_cast<Elt>(
                                 std::int64_t(nw) * k / nthreads);
            Elt end = lo + static_cast<Elt>(
                               std::int64_t(nw) * (k + 1) / nthreads);
            for (Elt w = begin; w < end; ++w) fill_row(w, acc);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      if (err) std::rethrow_exception(err);
    }
  }
  return t;
}

const LaurentPoly& KLTable::p(Elt x, Elt w) const {
  static const LaurentPoly kZero;
  static const LaurentPoly kOne = LaurentPoly::constant(1);
  if (x == w) return kOne;
  const KLRow& r = rows_[w];
  auto it = std::lower_bound(r.x.begin(), r.x.end(), x);
  if (it == r.x.end() || *it != x) return kZero;
  return r.p[static_cast<std::size_t>(it - r.x.begin())];
}

Coeff KLTable::mu(Elt x, Elt w) const {
  if (g_->length(x) > g_->length(w)) std::swap(x, w);
  return p(x, w).coeff(-1);
}

HeckeElt KLTable::t_left_mul_gen(Gen s, const HeckeElt& elem) const {
  HeckeElt out;
  for (const auto& [x, f] : elem) {
    Elt sx = g_->left(s, x);
    out[sx] += f;
    if (g_->length(sx) < g_->length(x)) {
      LaurentPoly& slot = out[x];
      slot.add_scaled(f, 1, 1);
      slot.add_scaled(f, -1, -1);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

HeckeElt KLTable::t_right_mul_gen(const HeckeElt& elem, Gen s) const {
  HeckeElt out;
  for (const auto& [x, f] : elem) {
    Elt xs = g_->right(x, s);
    out[xs] += f;
    if (g_->length(xs) < g_->length(x)) {
      LaurentPoly& slot = out[x];
      slot.add_scaled(f, 1, 1);
      slot.add_scaled(f, -1, -1);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

HeckeElt KLTable::t_mul(Elt a, Elt b) const {
  HeckeElt out;
  out[b] = LaurentPoly::constant(1);
  const auto& word = g_->word(a);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    out = t_left_mul_gen(*it, out);
  return out;
}

HeckeElt KLTable::c_elt(Elt w) const {
  HeckeElt out;
  const KLRow& r = rows_[w];
  for (std::size_t i = 0; i < r.x.size(); ++i) out[r.x[i]] = r.p[i];
  out[w] = LaurentPoly::constant(1);
  return out;
}

std::vector<std::pair<Elt, LaurentPoly>> KLTable::to_c(HeckeElt elem) const {
  std::vector<std::pair<Elt, LaurentPoly>> out;
  while (!elem.empty()) {
    // Strip the longest surviving term; c_z is unitriangular on T_z.
    auto top = std::prev(elem.end());
    for (auto it = elem.begin(); it != elem.end(); ++it)
      if (g_->length(it->first) > g_->length(top->first)) top = it;
    Elt z = top->first;
    LaurentPoly f = top->second;
    const KLRow& r = rows_[z];
    elem.erase(top);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      LaurentPoly& slot = elem[r.x[i]];
      slot.add_scaled(r.p[i] * f, -1);
      if (slot.is_zero()) elem.erase(r.x[i]);
    }
    out.emplace_back(z, std::move(f));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<std::pair<Elt, LaurentPoly>> KLTable::c_mul(Elt x, Elt y) const {
  HeckeElt cy = c_elt(y);
  HeckeElt prod;
  // c_x c_y = sum_a p(a,x) T_a c_y, with T_a applied letter by letter.
  const KLRow& rx = rows_[x];
  auto add_term = [&](Elt a, const LaurentPoly& f) {
    HeckeElt t = cy;
    const auto& word = g_->word(a);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      t = t_left_mul_gen(*it, t);
    for (auto& [z, val] : t) {
      LaurentPoly& slot = prod[z];
      slot += val * f;
      if (slot.is_zero()) prod.erase(z);
    }
  };
  add_term(x, LaurentPoly::constant(1));
  for (std::size_t i = 0; i < rx.x.size(); ++i) add_term(rx.x[i], rx.p[i]);
  return to_c(std::move(prod));
}

LaurentPoly KLTable::h(Elt x, Elt y, Elt z) const {
  for (auto& [w, f] : c_mul(x, y))
    if (w == z) return f;
  return LaurentPoly();
}

}  // namespace coxcells
