/*
  This is cells.cpp

  Preorder graphs, strongly connected components, and the a/delta
  invariants with their structural guards.
*/

#include "coxcells/cells.hpp"

#include <algorithm>

#include "coxcells/parallel.hpp"
#include "coxcells/products.hpp"

namespace coxcells {

namespace {

using Graph = std::vector<std::vector<Elt>>;

/* Left preorder edges y -> z: z's class is below-or-equal y's.  One
   block per ascent generator: the ascent target plus the mu-partners
   that s pushes down. */
Graph left_edges(const KLTable& t) {
  const GroupTable& g = t.group();
  Graph adj(static_cast<std::size_t>(g.size()));
  for (Elt y = 0; y < g.size(); ++y) {
    std::vector<Elt>& out = adj[y];
    for (Gen s = 0; s < g.rank(); ++s) {
      if (g.is_left_descent(s, y)) continue;
      out.push_back(g.left(s, y));
      for (auto [z, m] : t.row(y).mu) {
        (void)m;
        if (g.is_left_descent(s, z)) out.push_back(z);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return adj;
}

Graph transport_by_inverse(const GroupTable& g, const Graph& adj) {
  Graph out(adj.size());
  for (Elt y = 0; y < static_cast<Elt>(adj.size()); ++y)
    for (Elt z : adj[y]) out[g.inverse(y)].push_back(g.inverse(z));
  for (auto& row : out) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return out;
}

Graph merge_graphs(const Graph& a, const Graph& b) {
  Graph out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i];
    out[i].insert(out[i].end(), b[i].begin(), b[i].end());
    std::sort(out[i].begin(), out[i].end());
    out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
  }
  return out;
}

/* Iterative Tarjan; returns the component id per node, then relabels
   components by their smallest member so ids are intrinsic. */
std::pair<std::vector<Elt>, std::vector<std::vector<Elt>>> scc(
    const Graph& adj) {
  Elt n = static_cast<Elt>(adj.size());
  std::vector<Elt> comp(n, -1), low(n, 0), num(n, -1), stack;
  std::vector<char> onstack(n, 0);
  Elt counter = 0;
  int ncomp = 0;
  struct Frame {
    Elt v;
    std::size_t edge;
  };
  std::vector<Frame> frames;
  for (Elt root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    frames.push_back({root, 0});
    num[root] = low[root] = counter++;
    stack.push_back(root);
    onstack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        Elt w = adj[f.v][f.edge++];
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          onstack[w] = 1;
          frames.push_back({w, 0});
        } else if (onstack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        Elt v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == num[v]) {
          while (true) {
            Elt w = stack.back();
            stack.pop_back();
            onstack[w] = 0;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
      }
    }
  }
  // Relabel by smallest member.
  std::vector<Elt> min_member(static_cast<std::size_t>(ncomp), n);
  for (Elt v = 0; v < n; ++v)
    min_member[comp[v]] = std::min(min_member[comp[v]], v);
  std::vector<int> order(static_cast<std::size_t>(ncomp));
  for (int i = 0; i < ncomp; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return min_member[a] < min_member[b]; });
  std::vector<Elt> relabel(static_cast<std::size_t>(ncomp));
  for (int i = 0; i < ncomp; ++i) relabel[order[i]] = i;
  std::vector<std::vector<Elt>> members(static_cast<std::size_t>(ncomp));
  for (Elt v = 0; v < n; ++v) {
    comp[v] = relabel[comp[v]];
    members[comp[v]].push_back(v);
  }
  return {std::move(comp), std::move(members)};
}

/* Reachability closure on the condensation of `adj` under `comp`:
   result[a][b] = a reachable from b (i.e. a is below-or-equal b). */
std::vector<std::vector<char>> condensation_leq(const Graph& adj,
                                                const std::vector<Elt>& comp,
                                                int ncomp) {
  std::vector<std::vector<int>> cadj(static_cast<std::size_t>(ncomp));
  for (Elt y = 0; y < static_cast<Elt>(adj.size()); ++y)
    for (Elt z : adj[y])
      if (comp[y] != comp[z]) cadj[comp[y]].push_back(comp[z]);
  for (auto& row : cadj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  std::vector<std::vector<char>> leq(
      static_cast<std::size_t>(ncomp),
      std::vector<char>(static_cast<std::size_t>(ncomp), 0));
  for (int from = 0; from < ncomp; ++from) {
    std::vector<int> todo = {from};
    leq[from][from] = 1;
    while (!todo.empty()) {
      int c = todo.back();
      todo.pop_back();
      for (int d : cadj[c])
        if (!leq[d][from]) {
          leq[d][from] = 1;
          todo.push_back(d);
        }
    }
  }
  return leq;
}

}  // namespace

CellPartition cells_partition(const KLTable& t, const CellOptions& opt) {
  const GroupTable& g = t.group();
  Graph ledges = left_edges(t);
  Graph redges = transport_by_inverse(g, ledges);
  Graph lredges = merge_graphs(ledges, redges);

  CellPartition part;
  auto [lcomp, lcells] = scc(ledges);
  auto [rcomp, rcells] = scc(redges);
  auto [lrcomp, lrcells] = scc(lredges);
  part.left_of = std::move(lcomp);
  part.left_cells = std::move(lcells);
  part.right_of = std::move(rcomp);
  part.right_cells = std::move(rcells);
  part.lr_of = std::move(lrcomp);
  part.lr_cells = std::move(lrcells);
  part.lr_leq = condensation_leq(lredges, part.lr_of,
                                 static_cast<int>(part.lr_cells.size()));

  // Structural facts that hold for every finite group here: inverse maps
  // left cells onto right cells, and every element shares its two-sided
  // cell with its inverse.
  for (Elt w = 0; w < g.size(); ++w) {
    if (part.lr_of[w] != part.lr_of[g.inverse(w)])
      throw verdict_error("element and inverse fell in different two-sided cells");
  }

  // For tiny groups, rebuild the partition from full product supports:
  // z is below y on the left iff some c_x c_y contains c_z.
  if (g.size() <= opt.guard_size) {
    Graph full(static_cast<std::size_t>(g.size()));
    ColumnBasis basis = ColumnBasis::full(g);
    ProductSweep ws;
    for (Elt y = 0; y < g.size(); ++y) {
      std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
      left_products(t, basis, y, ws,
                    [&](Elt, const std::vector<LaurentPoly>& vec) {
                      for (Elt z = 0; z < g.size(); ++z)
                        if (!vec.empty() && !vec[z].is_zero()) seen[z] = 1;
                    });
      for (Elt z = 0; z < g.size(); ++z)
        if (seen[z]) full[y].push_back(z);
    }
    auto [flcomp, flcells] = scc(full);
    Graph fredges = transport_by_inverse(g, full);
    auto [frcomp, frcells] = scc(fredges);
    auto [flrcomp, flrcells] = scc(merge_graphs(full, fredges));
    if (flcomp != part.left_of || frcomp != part.right_of ||
        flrcomp != part.lr_of)
      throw verdict_error("edge-generated cells disagree with product supports");
  }

  return part;
}

CellInvariants cell_invariants(const KLTable& t, const CellPartition& part,
                               const CellOptions& opt) {
  const GroupTable& g = t.group();
  Elt n = g.size();
  CellInvariants inv;
  inv.delta.resize(static_cast<std::size_t>(n));
  inv.lead.resize(static_cast<std::size_t>(n));
  for (Elt z = 0; z < n; ++z) {
    const LaurentPoly& pe = t.p(g.identity(), z);
    inv.delta[z] = -pe.max_deg();
    inv.lead[z] = pe.coeff(pe.max_deg());
  }

  int nlr = static_cast<int>(part.lr_cells.size());
  std::vector<int> restricted_a(static_cast<std::size_t>(n), -1);

  // Restricted a: per two-sided cell, sweep y over the cell and fold the
  // top degree of every h(x,y,z) with x in the cell into column z.
  for (int c = 0; c < nlr; ++c) {
    const std::vector<Elt>& members = part.lr_cells[c];
    ColumnBasis basis = ColumnBasis::restricted(g, members);
    std::vector<std::vector<int>> local(
        static_cast<std::size_t>(opt.threads),
        std::vector<int>(members.size(), -1));
    run_parallel(opt.threads, static_cast<int>(members.size()),
                 [&](int yi, int worker) {
                   ProductSweep ws;
                   std::vector<int>& acc = local[worker];
                   left_products(
                       t, basis, members[yi], ws,
                       [&](Elt x, const std::vector<LaurentPoly>& vec) {
                         if (vec.empty() || part.lr_of[x] != c) return;
                         for (std::size_t col = 0; col < vec.size(); ++col)
                           if (!vec[col].is_zero())
                             acc[col] =
                                 std::max(acc[col], vec[col].max_deg());
                       });
                 });
    for (std::size_t col = 0; col < members.size(); ++col) {
      int best = -1;
      for (int k = 0; k < opt.threads; ++k)
        best = std::max(best, local[k][col]);
      restricted_a[members[col]] = best;
    }
  }

  // Small groups: the unrestricted maximum over all pairs, which is the
  // definition; the restricted sweep must reproduce it.
  if (n <= opt.full_product_threshold) {
    std::vector<int> full_a(static_cast<std::size_t>(n), -1);
    ColumnBasis basis = ColumnBasis::full(g);
    std::vector<std::vector<int>> local(
        static_cast<std::size_t>(opt.threads),
        std::vector<int>(static_cast<std::size_t>(n), -1));
    run_parallel(opt.threads, n, [&](int y, int worker) {
      ProductSweep ws;
      std::vector<int>& acc = local[worker];
      left_products(t, basis, static_cast<Elt>(y), ws,
                    [&](Elt, const std::vector<LaurentPoly>& vec) {
                      if (vec.empty()) return;
                      for (Elt z = 0; z < n; ++z)
                        if (!vec[z].is_zero())
                          acc[z] = std::max(acc[z], vec[z].max_deg());
                    });
    });
    for (Elt z = 0; z < n; ++z) {
      for (int k = 0; k < opt.threads; ++k)
        full_a[z] = std::max(full_a[z], local[k][z]);
      if (full_a[z] != restricted_a[z])
        throw verdict_error(
            "restricted a-value disagrees with the full product maximum");
    }
  }

  inv.a = std::move(restricted_a);

  // Constant across each two-sided cell, and symmetric under inverse.
  inv.a_of_lr.assign(static_cast<std::size_t>(nlr), -1);
  for (Elt z = 0; z < n; ++z) {
    int& slot = inv.a_of_lr[part.lr_of[z]];
    if (slot < 0) slot = inv.a[z];
    if (slot != inv.a[z])
      throw verdict_error("a-value is not constant on a two-sided cell");
    if (inv.a[z] != inv.a[g.inverse(z)])
      throw verdict_error("a-value differs across inversion");
    if (inv.a[z] > inv.delta[z])
      throw verdict_error("a-value exceeds delta");
  }

  inv.distinguished.assign(static_cast<std::size_t>(n), 0);
  for (Elt z = 0; z < n; ++z)
    inv.distinguished[z] = inv.a[z] == inv.delta[z] ? 1 : 0;

  // Exactly one distinguished element per left cell, always an involution.
  for (const auto& cell : part.left_cells) {
    int count = 0;
    for (Elt z : cell)
      if (inv.distinguished[z]) {
        ++count;
        if (g.inverse(z) != z)
          throw verdict_error("distinguished-involution invariant violated");
      }
    if (count != 1)
      throw verdict_error("distinguished-involution invariant violated");
  }

  return inv;
}

}  // namespace coxcells
