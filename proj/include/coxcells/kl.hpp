/*
  This is kl.hpp

  The Hecke algebra side of the library.  Multiplication is written in
  the normalized presentation T_s^2 = 1 + (v - v^-1) T_s, and the
  canonical basis elements c_w = sum_x p(x,w) T_x carry normalized
  polynomials p(x,w) in v^-1 Z[v^-1] for x < w, p(w,w) = 1.

  KLTable computes all rows by induction on length, peeling the
  smallest-index left descent:

      c_w = c_s c_{w'} - sum_{z < w', sz < z} mu(z,w') c_z,   w = s w'.

  Rows within one length stratum are independent, so they are filled in
  parallel; the result is identical for any thread count.
*/

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "coxcells/coxeter.hpp"
#include "coxcells/laurent.hpp"

namespace coxcells {

/* Element of the Hecke algebra in the T basis. */
using HeckeElt = std::map<Elt, LaurentPoly>;

/* One row of the table: the x < w with p(x,w) != 0, index-sorted.
   The diagonal p(w,w) = 1 is implicit. */
struct KLRow {
  std::vector<Elt> x;
  std::vector<LaurentPoly> p;
  std::vector<std::pair<Elt, Coeff>> mu;  // x with mu(x,w) != 0
};

class KLTable {
public:
  /* Fills every row.  threads <= 0 picks the hardware count. */
  static KLTable build(const GroupTable& g, int threads = 1);

  const GroupTable& group() const { return *g_; }

  /* p(x,w); zero unless x <= w in Bruhat order. */
  const LaurentPoly& p(Elt x, Elt w) const;

  /* mu(x,w), the v^-1 coefficient of p(x,w), extended symmetrically so
     that mu(x,w) = mu(w,x) when lengths rule one direction out. */
  Coeff mu(Elt x, Elt w) const;

  const KLRow& row(Elt w) const { return rows_[w]; }

  /* T_a * T_b expanded in the T basis. */
  HeckeElt t_mul(Elt a, Elt b) const;

  /* T_s * elem (left) and elem * T_s (right). */
  HeckeElt t_left_mul_gen(Gen s, const HeckeElt& elem) const;
  HeckeElt t_right_mul_gen(const HeckeElt& elem, Gen s) const;

  /* c_w as a T-basis element (diagonal included). */
  HeckeElt c_elt(Elt w) const;

  /* Rewrites a T-basis element in the canonical basis. */
  std::vector<std::pair<Elt, LaurentPoly>> to_c(HeckeElt elem) const;

  /* c_x * c_y in the canonical basis: the structure polynomials
     h(x,y,z) over their support. */
  std::vector<std::pair<Elt, LaurentPoly>> c_mul(Elt x, Elt y) const;

  /* h(x,y,z) as a single lookup on c_mul. */
  LaurentPoly h(Elt x, Elt y, Elt z) const;

private:
  friend struct CacheIO;

  const GroupTable* g_ = nullptr;
  std::vector<KLRow> rows_;
};

}  // namespace coxcells
