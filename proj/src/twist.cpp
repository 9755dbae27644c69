/*
  This is twist.cpp

  Matrix automorphisms come from a depth-first search over generator
  images with the bond orders checked at assignment time, so nothing
  close to rank! is ever enumerated.  The ordinarity filter and the
  group-closure sanity check run on the handful of survivors.
*/

#include "coxcells/twist.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace coxcells {

namespace {

/* All permutations p of the generators with m(p(i), p(j)) = m(i, j). */
std::vector<std::vector<Gen>> matrix_automorphisms(const CoxeterMatrix& m) {
  int r = m.rank();
  std::vector<std::vector<Gen>> out;
  std::vector<Gen> perm(static_cast<std::size_t>(r), -1);
  std::vector<char> used(static_cast<std::size_t>(r), 0);
  auto dfs = [&](auto&& self, int i) -> void {
    if (i == r) {
      out.push_back(perm);
      return;
    }
    for (Gen j = 0; j < r; ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        ok = m.m(perm[k], j) == m.m(k, i);
      if (!ok) continue;
      perm[i] = j;
      used[j] = 1;
      self(self, i + 1);
      used[j] = 0;
    }
  };
  dfs(dfs, 0);
  return out;
}

/* Distinct generators sharing an orbit must braid with order <= 3. */
bool is_ordinary(const CoxeterMatrix& m, const std::vector<Gen>& perm) {
  int r = m.rank();
  std::vector<char> seen(static_cast<std::size_t>(r), 0);
  for (Gen s = 0; s < r; ++s) {
    if (seen[s]) continue;
    std::vector<Gen> orbit;
    for (Gen t = s; !seen[t]; t = perm[t]) {
      seen[t] = 1;
      orbit.push_back(t);
    }
    for (std::size_t a = 0; a < orbit.size(); ++a)
      for (std::size_t b = a + 1; b < orbit.size(); ++b)
        if (m.m(orbit[a], orbit[b]) > 3) return false;
  }
  return true;
}

std::string cycle_name(const std::vector<Gen>& perm) {
  std::ostringstream os;
  int r = static_cast<int>(perm.size());
  std::vector<char> seen(static_cast<std::size_t>(r), 0);
  for (Gen s = 0; s < r; ++s) {
    if (seen[s]) continue;
    os << '(';
    bool first = true;
    for (Gen t = s; !seen[t]; t = perm[t]) {
      seen[t] = 1;
      os << (first ? "" : " ") << t + 1;
      first = false;
    }
    os << ')';
  }
  return os.str();
}

std::vector<Elt> extend_to_elements(const GroupTable& g,
                                    const std::vector<Gen>& perm) {
  std::vector<Elt> map(static_cast<std::size_t>(g.size()));
  map[0] = 0;
  for (Elt w = 1; w < g.size(); ++w) {
    Gen s = static_cast<Gen>(__builtin_ctz(g.left_descents(w)));
    map[w] = g.left(perm[s], map[g.left(s, w)]);
    if (g.length(map[w]) != g.length(w))
      throw verdict_error("generator permutation does not extend to the group");
  }
  for (Elt w = 0; w < g.size(); ++w)
    for (Gen s = 0; s < g.rank(); ++s)
      if (map[g.left(s, w)] != g.left(perm[s], map[w]))
        throw verdict_error(
            "generator permutation does not extend to the group");
  return map;
}

std::vector<Gen> parse_cycles(const std::string& text, int r) {
  std::vector<Gen> perm(static_cast<std::size_t>(r));
  for (Gen s = 0; s < r; ++s) perm[s] = s;
  std::vector<char> mentioned(static_cast<std::size_t>(r), 0);
  std::size_t i = 0;
  auto fail = []() -> void {
    throw std::invalid_argument("bad automorphism name");
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail();
    ++i;
    std::vector<Gen> cycle;
    while (true) {
      while (i < text.size() &&
             std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      if (j == i) fail();
      int val = std::stoi(text.substr(i, j - i));
      if (val < 1 || val > r || mentioned[val - 1]) fail();
      mentioned[val - 1] = 1;
      cycle.push_back(static_cast<Gen>(val - 1));
      i = j;
    }
    if (cycle.empty()) fail();
    for (std::size_t k = 0; k < cycle.size(); ++k)
      perm[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return perm;
}

}  // namespace

bool OrdinaryAut::is_identity() const {
  for (Gen s = 0; s < static_cast<Gen>(gen_map.size()); ++s)
    if (gen_map[s] != s) return false;
  return true;
}

std::vector<OrdinaryAut> ordinary_automorphisms(const GroupTable& g) {
  const CoxeterMatrix& m = g.matrix();
  std::vector<std::vector<Gen>> perms;
  for (const auto& p : matrix_automorphisms(m))
    if (is_ordinary(m, p)) perms.push_back(p);
  std::sort(perms.begin(), perms.end());

  // Closure under composition and inverse; with it, the list is a group.
  for (const auto& p : perms) {
    std::vector<Gen> inv(p.size()), comp(p.size());
    for (Gen s = 0; s < static_cast<Gen>(p.size()); ++s) inv[p[s]] = s;
    if (!std::binary_search(perms.begin(), perms.end(), inv))
      throw verdict_error("automorphisms do not close into a group");
    for (const auto& q : perms) {
      for (Gen s = 0; s < static_cast<Gen>(p.size()); ++s) comp[s] = p[q[s]];
      if (!std::binary_search(perms.begin(), perms.end(), comp))
        throw verdict_error("automorphisms do not close into a group");
    }
  }

  std::vector<OrdinaryAut> out;
  for (const auto& p : perms) {
    OrdinaryAut a;
    a.gen_map = p;
    a.elt_map = extend_to_elements(g, p);
    out.push_back(std::move(a));
  }
  for (auto& a : out) {
    if (a.is_identity())
      a.name = "id";
    else if (out.size() == 2)
      a.name = "flip";
    else
      a.name = cycle_name(a.gen_map);
  }
  return out;
}

const OrdinaryAut& eps_by_name(const std::vector<OrdinaryAut>& auts,
                               const std::string& name) {
  if (name == "id") {
    for (const auto& a : auts)
      if (a.is_identity()) return a;
  }
  if (name == "flip") {
    if (auts.size() != 2)
      throw std::invalid_argument("flip is not defined for this group");
    return auts[auts[0].is_identity() ? 1 : 0];
  }
  if (name == "id" || name.empty() || name[0] != '(')
    throw std::invalid_argument("bad automorphism name");
  int r = static_cast<int>(auts.front().gen_map.size());
  std::vector<Gen> perm = parse_cycles(name, r);
  for (const auto& a : auts)
    if (a.gen_map == perm) return a;
  throw std::invalid_argument(
      "not an ordinary automorphism: it must preserve the Coxeter matrix "
      "and may only merge generators whose product has order at most 3");
}

EpsCellAction eps_on_cells(const OrdinaryAut& aut, const CellPartition& part) {
  auto induce = [&](const std::vector<Elt>& of,
                    const std::vector<std::vector<Elt>>& cells) {
    std::vector<int> image(cells.size(), -1);
    for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
      for (Elt z : cells[c]) {
        int ic = of[aut(z)];
        if (image[c] < 0) image[c] = ic;
        if (image[c] != ic || cells[ic].size() != cells[c].size())
          throw verdict_error("automorphism does not permute the cells");
      }
    }
    return image;
  };
  EpsCellAction act;
  act.left = induce(part.left_of, part.left_cells);
  act.right = induce(part.right_of, part.right_cells);
  act.lr = induce(part.lr_of, part.lr_cells);
  return act;
}

std::vector<Elt> boc0(const GroupTable& g, const OrdinaryAut& aut,
                      const CellPartition& part, int lr_cell) {
  if (lr_cell < 0 || lr_cell >= static_cast<int>(part.lr_cells.size()))
    throw std::invalid_argument("no such two-sided cell");
  const std::vector<Elt>& members = part.lr_cells[lr_cell];
  for (Elt z : members)
    if (part.lr_of[aut(z)] != lr_cell)
      throw std::invalid_argument("cell not ε-stable");
  std::vector<Elt> out;
  for (Elt z : members)
    if (part.left_of[z] == part.left_of[aut(g.inverse(z))]) out.push_back(z);
  return out;
}

}  // namespace coxcells
