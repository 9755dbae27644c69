/*
  This is jring.hpp

  The asymptotic ring of a single two-sided cell.  The basis is
  indexed by the cell's elements; the multiplicity of t_z in t_x t_y
  is the integer coefficient of v^a in h(x,y,z), where a is the cell's
  common a-value.  The unit is the sum of the cell's distinguished
  involutions and tau reads off their coefficients.

  The degree convention here is the kind that can drift without any
  one example noticing, so build() refuses to return a table before
  the ring laws hold on the computed constants: the distinguished sum
  must be a two-sided unit, multiplication must associate, and
  tau(t_x t_y) must be 1 exactly when y is the inverse of x.
*/

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "coxcells/cells.hpp"

namespace coxcells {

/* Integer combination of basis elements over one fixed cell, keyed by
   element index.  Support must stay inside the owning table's cell. */
using JElement = std::map<Elt, long long>;

struct JRingOptions {
  int threads = 1;
  /* Cells up to this size get the associativity law checked on every
     triple; larger ones on seeded random triples. */
  std::size_t assoc_exhaustive = 200;
  int assoc_samples = 10000;
  std::uint64_t assoc_seed = 12345;
};

class JRingTable {
 public:
  static JRingTable build(const KLTable& t, const CellPartition& part,
                          const CellInvariants& inv, int lr_cell,
                          const JRingOptions& opt = JRingOptions{});

  const GroupTable& group() const { return *g_; }
  int cell_id() const { return cell_; }
  int a_value() const { return a_; }
  /* Cell members, ascending element index. */
  const std::vector<Elt>& members() const { return members_; }
  /* Distinguished involutions of the cell, ascending element index. */
  const std::vector<Elt>& distinguished() const { return dist_; }

  /* Dense position of an element inside members(); throws for
     elements outside the cell. */
  int rank(Elt w) const { return rank_of(w); }

  /* Multiplicity of t_z in t_x t_y; all three must lie in the cell. */
  long long jc(Elt x, Elt y, Elt z) const;
  /* Nonzero terms of t_x t_y as (position in members(), constant)
     pairs, ascending position. */
  const std::vector<std::pair<int, long long>>& product_terms(Elt x,
                                                              Elt y) const;
  /* Triple-symmetric form: gamma(x,y,z) = jc(x,y,z^-1). */
  long long gamma(Elt x, Elt y, Elt z) const;

  JElement unit() const;
  JElement j_mul(const JElement& a, const JElement& b) const;
  long long tau(const JElement& a) const;

  /* Visits every nonzero constant as (x, y, z, jc) in lexicographic
     element order. */
  void for_each(
      const std::function<void(Elt, Elt, Elt, long long)>& f) const;
  std::size_t nonzero_count() const;

 private:
  friend struct CacheIO;

  int rank_of(Elt w) const;

  const GroupTable* g_ = nullptr;
  int cell_ = -1;
  int a_ = 0;
  std::vector<Elt> members_;
  std::vector<Elt> dist_;
  std::vector<int> rank_;  // element index -> position in members_, -1 outside
  /* rows_[rx * n + ry]: nonzero (rz, constant) pairs, ascending rz. */
  std::vector<std::vector<std::pair<int, long long>>> rows_;
};

}  // namespace coxcells
