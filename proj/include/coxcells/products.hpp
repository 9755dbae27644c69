/*
  This is products.hpp

  Bulk canonical-basis products.  For a fixed right factor y, the
  expansions of c_x c_y for every x are generated by one sweep over x in
  index order, reusing the descent recursion on the left factor:

      c_x = c_s c_{x'} - sum_{u < x', su < u} mu(u,x') c_u,  x = s x',

  so each product vector is a generator action on an earlier vector
  minus a few earlier vectors.  The sweep can run against the full
  column space or against the columns of one two-sided cell; in the
  latter case components outside the cell are discarded, which is the
  multiplication of the quotient by the ideal spanned by lower cells.
  Entries inside the cell's columns are exact either way.

  Cost per y is O(|W| * avg support * row ops); callers parallelize
  over y with one workspace each.
*/

#pragma once

#include <vector>

#include "coxcells/kl.hpp"

namespace coxcells {

struct ColumnBasis {
  std::vector<Elt> cols;    // ascending element indices
  std::vector<Elt> col_of;  // |W|-sized inverse map, -1 = dropped

  static ColumnBasis full(const GroupTable& g) {
    ColumnBasis b;
    b.cols.resize(static_cast<std::size_t>(g.size()));
    b.col_of.resize(static_cast<std::size_t>(g.size()));
    for (Elt z = 0; z < g.size(); ++z) {
      b.cols[z] = z;
      b.col_of[z] = z;
    }
    return b;
  }

  static ColumnBasis restricted(const GroupTable& g,
                                const std::vector<Elt>& members) {
    ColumnBasis b;
    b.cols = members;
    b.col_of.assign(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
      b.col_of[members[i]] = static_cast<Elt>(i);
    return b;
  }
};

/* Workspace holding the product vectors of every left factor processed
   so far; an empty inner vector stands for zero. */
struct ProductSweep {
  std::vector<std::vector<LaurentPoly>> vec;
};

/* Runs the sweep for right factor y and calls consume(x, v) for every x
   in index order, where v is c_x c_y expressed on basis.cols (empty
   vector = zero).  y's column must be inside the basis. */
template <class Fn>
void left_products(const KLTable& t, const ColumnBasis& basis, Elt y,
                   ProductSweep& ws, Fn&& consume) {
  const GroupTable& g = t.group();
  std::size_t ncols = basis.cols.size();
  ws.vec.assign(static_cast<std::size_t>(g.size()), {});

  ws.vec[0].assign(ncols, LaurentPoly());
  ws.vec[0][basis.col_of[y]] = LaurentPoly::constant(1);
  consume(static_cast<Elt>(0), ws.vec[0]);

  std::vector<LaurentPoly> out;
  for (Elt x = 1; x < g.size(); ++x) {
    Gen s = static_cast<Gen>(__builtin_ctz(g.left_descents(x)));
    Elt xp = g.left(s, x);
    const std::vector<LaurentPoly>& base = ws.vec[xp];
    out.assign(ncols, LaurentPoly());
    bool any = false;
    if (!base.empty()) {
      for (std::size_t col = 0; col < ncols; ++col) {
        const LaurentPoly& f = base[col];
        if (f.is_zero()) continue;
        Elt z = basis.cols[col];
        if (g.is_left_descent(s, z)) {
          out[col].add_scaled(f, 1, 1);
          out[col].add_scaled(f, 1, -1);
          any = true;
        } else {
          Elt col_sz = basis.col_of[g.left(s, z)];
          if (col_sz >= 0) {
            out[col_sz] += f;
            any = true;
          }
          for (auto [u, m] : t.row(z).mu) {
            if (!g.is_left_descent(s, u)) continue;
            Elt col_u = basis.col_of[u];
            if (col_u >= 0) {
              out[col_u].add_scaled(f, m);
              any = true;
            }
          }
        }
      }
    }
    for (auto [u, m] : t.row(xp).mu) {
      if (!g.is_left_descent(s, u)) continue;
      const std::vector<LaurentPoly>& vu = ws.vec[u];
      if (vu.empty()) continue;
      for (std::size_t col = 0; col < ncols; ++col)
        if (!vu[col].is_zero()) {
          out[col].add_scaled(vu[col], -m);
          any = true;
        }
    }
    if (any) {
      // Cancellation can still leave an all-zero vector; normalize so
      // zero has one representation.
      any = false;
      for (const LaurentPoly& f : out)
        if (!f.is_zero()) {
          any = true;
          break;
        }
    }
    if (any)
      ws.vec[x] = out;
    else
      ws.vec[x].clear();
    consume(x, ws.vec[x]);
  }
}

}  // namespace coxcells
