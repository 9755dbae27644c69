/*
  This is coxeter.hpp

  Finite Coxeter groups as explicit multiplication tables.  A group is
  built from its Coxeter matrix by coset enumeration over the trivial
  subgroup, then re-indexed so that element i < element j whenever
  length(i) < length(j), with ties broken by the ShortLex order on
  canonical words.  Index 0 is the identity.

  The table view makes everything downstream (length, descent sets,
  Bruhat order, Hecke multiplication) cheap array lookups.
*/

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxcells {

using Gen = int;       // generator index, 0-based internally
using Elt = std::int32_t;  // element index into the group table

struct compute_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* A symmetric matrix of bond orders m(s,t), with m(s,s) = 1 and
   off-diagonal entries >= 2 (0 would mean an infinite bond; those are
   rejected since only finite groups are supported here). */
class CoxeterMatrix {
public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(std::vector<std::vector<int>> entries);

  /* Standard irreducible types: "A".."I", e.g. of_type("B", 3) or
     of_type("I", 2, 7) for the dihedral group with bond order 7. */
  static CoxeterMatrix of_type(const std::string& letter, int rank,
                               int bond = 0);

  int rank() const { return static_cast<int>(m_.size()); }
  int m(Gen s, Gen t) const { return m_[s][t]; }

  /* Order of the group when the type is recognized, 0 if unknown.
     Used as a sanity check after enumeration. */
  std::int64_t known_order() const;

  bool operator==(const CoxeterMatrix&) const = default;

  /* Stable identity string, e.g. "coxeter[3,1;1,3]" flattened row-major.
     Cache keys and table validation hang off this. */
  std::string key() const;

  const std::vector<std::vector<int>>& entries() const { return m_; }

private:
  std::vector<std::vector<int>> m_;
};

/* The fully enumerated group. */
class GroupTable {
public:
  /* Enumerates the group presented by `mat`.  Fails with "group exceeds
     cap" if more than `cap` elements are found (or the intermediate
     coset table grows past a fixed multiple of it, which is how an
     infinite group shows up). */
  static GroupTable build(const CoxeterMatrix& mat, std::int64_t cap = 200000);

  const CoxeterMatrix& matrix() const { return mat_; }
  int rank() const { return mat_.rank(); }
  Elt size() const { return static_cast<Elt>(length_.size()); }

  Elt identity() const { return 0; }
  Elt longest() const { return size() - 1; }

  int length(Elt w) const { return length_[w]; }
  Elt right(Elt w, Gen s) const { return right_[w][s]; }
  Elt left(Gen s, Elt w) const { return left_[w][s]; }
  Elt inverse(Elt w) const { return inv_[w]; }

  /* Product by repeated right multiplication along b's canonical word. */
  Elt mul(Elt a, Elt b) const;

  bool is_right_descent(Elt w, Gen s) const {
    return length_[right_[w][s]] < length_[w];
  }
  bool is_left_descent(Gen s, Elt w) const {
    return length_[left_[w][s]] < length_[w];
  }

  /* Descent sets as generator bitmasks (bit s set iff s is a descent). */
  std::uint32_t left_descents(Elt w) const { return ldesc_[w]; }
  std::uint32_t right_descents(Elt w) const { return rdesc_[w]; }

  /* Canonical reduced word: the ShortLex-least among reduced words,
     as 0-based generator indices. */
  const std::vector<Gen>& word(Elt w) const { return word_[w]; }

  /* Bruhat order.  Constant time once the relation is materialized
     (default for groups up to 4096 elements), otherwise evaluated on
     demand by the descent-walk test. */
  bool bruhat_leq(Elt x, Elt w) const;

  /* Elements are sorted by length; first_of_length(k) is the index of
     the first element of length k, and first_of_length(nu+1) == size. */
  Elt first_of_length(int k) const { return strata_[k]; }
  int max_length() const { return static_cast<int>(strata_.size()) - 2; }

  /* Parses "s1 s2 s1" (1-based, space separated) to an element.  The
     empty string or "e" is the identity. */
  Elt parse_word(const std::string& text) const;
  std::string word_string(Elt w) const;

private:
  GroupTable() = default;
  bool bruhat_leq_walk(Elt x, Elt w) const;

  CoxeterMatrix mat_;
  std::vector<int> length_;
  std::vector<std::vector<Elt>> right_;  // right_[w][s] = w * s
  std::vector<std::vector<Elt>> left_;   // left_[w][s]  = s * w
  std::vector<Elt> inv_;
  std::vector<std::uint32_t> ldesc_, rdesc_;
  std::vector<std::vector<Gen>> word_;
  std::vector<Elt> strata_;
  std::vector<std::uint64_t> bruhat_bits_;  // row-major n x n bitset, optional
  std::size_t bruhat_row_words_ = 0;
};

}  // namespace coxcells
