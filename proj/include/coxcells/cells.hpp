/*
  This is cells.hpp

  Cell partitions and the numeric invariants attached to them.  The
  preorder edges come straight from the canonical basis recursion data:
  multiplying c_y on the left by c_s reaches c_{sy} (on an ascent) and
  the mu-partners of y with an s-descent, so those are the left edges;
  right edges are left edges of the inverses.  Cells are the strongly
  connected components, two-sided cells those of the union graph.

  For groups of at most guard_size elements the partition is recomputed
  from scratch out of full product supports and compared, so the edge
  shortcut is never trusted alone where it can be checked.

  a(z) is the top h-degree seen at column z: over all pairs for small
  groups, over the pairs inside z's two-sided cell for large ones (the
  small-group path asserts the two agree).  delta and the leading
  coefficient come from p(e,z), and the distinguished elements are
  those with a = delta; every left cell must carry exactly one, and
  each must be an involution.
*/

#pragma once

#include <vector>

#include "coxcells/kl.hpp"

namespace coxcells {

struct verdict_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CellPartition {
  /* Cell id per element; ids count from 0 in order of each cell's
     smallest element index. */
  std::vector<Elt> left_of, right_of, lr_of;
  /* Members per cell, ascending element index. */
  std::vector<std::vector<Elt>> left_cells, right_cells, lr_cells;
  /* lr_leq[a][b]: two-sided cell a is below-or-equal b. */
  std::vector<std::vector<char>> lr_leq;
};

/* Options bundled to keep signatures stable. */
struct CellOptions {
  int threads = 1;
  /* Up to this group size, a-values use full products over all pairs
     and the restricted computation is cross-checked against them. */
  Elt full_product_threshold = 200;
  /* Up to this group size, the edge-generated partition is re-derived
     from full product supports and compared. */
  Elt guard_size = 48;
};

CellPartition cells_partition(const KLTable& t,
                              const CellOptions& opt = CellOptions{});

struct CellInvariants {
  std::vector<int> a;               // per element
  std::vector<int> delta;           // per element, from p(e,z)
  std::vector<Coeff> lead;          // leading coefficient of p(e,z)
  std::vector<char> distinguished;  // a(z) == delta(z)
  std::vector<int> a_of_lr;         // per two-sided cell
};

CellInvariants cell_invariants(const KLTable& t, const CellPartition& part,
                               const CellOptions& opt = CellOptions{});

}  // namespace coxcells
