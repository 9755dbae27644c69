/*
  Test-side oracles, deliberately written against the table modules'
  public surface only and along different algorithmic routes than the
  production code they check:

    - KLOracle recovers every p(x,w) by solving the bar-invariance
      condition directly, term by term, from explicit bar(T_w)
      expansions.  Nothing here touches the production recursion.
    - t_vec_mul multiplies raw T-basis vectors letter by letter, giving
      an independent route to structure constants.

  Slow on purpose; use on small groups.
*/

#pragma once

#include <map>
#include <vector>

#include "coxcells/coxeter.hpp"
#include "coxcells/laurent.hpp"

namespace oracles {

using coxcells::Coeff;
using coxcells::Elt;
using coxcells::Gen;
using coxcells::GroupTable;
using coxcells::LaurentPoly;

using TVec = std::map<Elt, LaurentPoly>;

/* T_s * elem in the T basis, directly from the quadratic relation. */
inline TVec t_gen_mul(const GroupTable& g, Gen s, const TVec& elem) {
  TVec out;
  for (const auto& [x, f] : elem) {
    Elt sx = g.left(s, x);
    out[sx] += f;
    if (g.length(sx) < g.length(x)) {
      out[x].add_scaled(f, 1, 1);
      out[x].add_scaled(f, -1, -1);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/* elem * T_s in the T basis. */
inline TVec t_gen_mul_right(const GroupTable& g, const TVec& elem, Gen s) {
  TVec out;
  for (const auto& [x, f] : elem) {
    Elt xs = g.right(x, s);
    out[xs] += f;
    if (g.length(xs) < g.length(x)) {
      out[x].add_scaled(f, 1, 1);
      out[x].add_scaled(f, -1, -1);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/* elem * T_s^{-1} = elem * (T_s - (v - v^-1)). */
inline TVec t_gen_inv_mul_right(const GroupTable& g, const TVec& elem, Gen s) {
  TVec out = t_gen_mul_right(g, elem, s);
  for (const auto& [x, f] : elem) {
    out[x].add_scaled(f, -1, 1);
    out[x].add_scaled(f, 1, -1);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/* Full multiplication of T-basis elements. */
inline TVec t_vec_mul(const GroupTable& g, const TVec& a, const TVec& b) {
  TVec out;
  for (const auto& [x, f] : a) {
    TVec t = b;
    const auto& word = g.word(x);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      t = t_gen_mul(g, *it, t);
    for (auto& [z, val] : t) out[z] += val * f;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/* Canonical-basis rows solved from scratch via bar invariance. */
class KLOracle {
public:
  explicit KLOracle(const GroupTable& g) : g_(g) {
    // bar(T_w) = T_{s1}^{-1} ... T_{sk}^{-1} walking w's word; canonical
    // words are prefix-closed, so each element extends its prefix parent
    // by one right factor.
    bart_.resize(static_cast<std::size_t>(g.size()));
    bart_[0][0] = LaurentPoly::constant(1);
    for (Elt w = 1; w < g.size(); ++w) {
      const auto& word = g_.word(w);
      Elt parent = 0;
      for (std::size_t i = 0; i + 1 < word.size(); ++i)
        parent = g_.right(parent, word[i]);
      bart_[w] = t_gen_inv_mul_right(g_, bart_[parent], word.back());
    }
    rows_.resize(static_cast<std::size_t>(g.size()));
    for (Elt w = 0; w < g.size(); ++w) solve_row(w);
  }

  /* p(x,w); zero when x is not below w. */
  LaurentPoly p(Elt x, Elt w) const {
    auto it = rows_[w].find(x);
    return it == rows_[w].end() ? LaurentPoly() : it->second;
  }

  Coeff mu(Elt x, Elt w) const { return p(x, w).coeff(-1); }

  /* The row as a T-basis element; callers use it to re-verify
     bar-invariance independently. */
  TVec c_vec(Elt w) const {
    TVec out;
    for (const auto& [x, f] : rows_[w]) out[x] = f;
    return out;
  }

  bool bar_fixed(const TVec& elem) const {
    TVec img;
    for (const auto& [x, f] : elem)
      for (const auto& [y, r] : bart_[x]) img[y] += f.bar() * r;
    std::erase_if(img, [](const auto& kv) { return kv.second.is_zero(); });
    return img == elem;
  }

private:
  void solve_row(Elt w) {
    auto& row = rows_[w];
    row[w] = LaurentPoly::constant(1);
    // Work down the length strata.  The coefficient of T_x in
    // bar(sum p(z,w) T_z) must equal p(x,w); isolating the z = x term
    // (bar(T_x) has unit T_x coefficient) leaves
    //   p(x,w) - bar(p(x,w)) = sum_{z != x} bar(p(z,w)) * [T_x] bar(T_z)
    // whose right side is already known for longer z, and the unique
    // solution without nonnegative exponents is the negative part.
    for (Elt x = static_cast<Elt>(g_.size() - 1); x >= 0; --x) {
      if (x == w || g_.length(x) >= g_.length(w)) continue;
      LaurentPoly f;
      for (const auto& [z, pz] : row) {
        if (z == x) continue;
        auto it = bart_[z].find(x);
        if (it != bart_[z].end()) f += pz.bar() * it->second;
      }
      if (f.is_zero()) continue;
      LaurentPoly sol;
      for (auto [e, c] : f.terms())
        if (e < 0) sol += LaurentPoly::monomial(c, e);
      if (!(sol - sol.bar() == f))
        throw std::runtime_error("oracle: bar condition is not solvable");
      if (!sol.is_zero()) row[x] = sol;
    }
    std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
  }

  const GroupTable& g_;
  std::vector<TVec> bart_;
  std::vector<std::map<Elt, LaurentPoly>> rows_;
};

}  // namespace oracles
