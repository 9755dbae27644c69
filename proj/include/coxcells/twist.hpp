/*
  This is twist.hpp

  Diagram automorphisms and their action on the group.  An
  automorphism of the Coxeter matrix qualifies as ordinary when any
  two distinct generators it puts in one orbit have product of order
  at most 3; the square-bond and hexagon-bond flips fail this, the
  simply-laced flips and the D4 triality pass.  Each qualifying
  permutation is extended to the whole group along canonical words,
  and the extension is checked to be a length-preserving homomorphism
  rather than assumed.

  boc0 of a two-sided cell under an automorphism eps is the set of
  members z whose left cell is the left cell of eps(z^-1); it is only
  defined when eps maps the cell onto itself.
*/

#pragma once

#include <string>
#include <vector>

#include "coxcells/cells.hpp"

namespace coxcells {

struct OrdinaryAut {
  std::vector<Gen> gen_map;  // image of each generator index
  std::vector<Elt> elt_map;  // image of each element index
  std::string name;          // "id", "flip", or 1-based cycles "(1 3)(2)"

  Elt operator()(Elt w) const { return elt_map[w]; }
  bool is_identity() const;
};

/* Every ordinary automorphism, identity first, then ascending by
   generator images; the list is closed under composition and inverse. */
std::vector<OrdinaryAut> ordinary_automorphisms(const GroupTable& g);

/* Resolves "id", "flip" (only meaningful when the group has exactly
   one automorphism besides the identity), or explicit 1-based cycles
   such as "(1 3)(2)"; unmentioned generators stay fixed. */
const OrdinaryAut& eps_by_name(const std::vector<OrdinaryAut>& auts,
                               const std::string& name);

/* Induced permutations of the cell ids. */
struct EpsCellAction {
  std::vector<int> left, right, lr;
};
EpsCellAction eps_on_cells(const OrdinaryAut& aut, const CellPartition& part);

/* Members z of the cell with z and eps(z^-1) in the same left cell,
   ascending element index. */
std::vector<Elt> boc0(const GroupTable& g, const OrdinaryAut& aut,
                      const CellPartition& part, int lr_cell);

}  // namespace coxcells
