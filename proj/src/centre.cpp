/*
  This is centre.cpp

  The report builder walks the structure-constant rows directly rather
  than going through JElement maps; the pairing law turns the closing
  factor t_{u^-1} of the Hom sum into a plain column read, so each
  matrix costs one sparse double loop per (row, y) pair.  The literal
  per-entry operations stay around as the slow reference path.
*/

#include "coxcells/centre.hpp"

#include <algorithm>
#include <stdexcept>

#include "coxcells/parallel.hpp"

namespace coxcells {

namespace {

/* The twisted layer only exists when eps maps the cell onto itself. */
void require_stable(const JRingTable& j, const OrdinaryAut& eps) {
  const std::vector<Elt>& mem = j.members();
  for (Elt z : mem)
    if (!std::binary_search(mem.begin(), mem.end(), eps(z)))
      throw std::invalid_argument("cell not ε-stable");
}

JElement basis(Elt w) { return JElement{{w, 1}}; }

}  // namespace

long long dim_hom(const JRingTable& j, const OrdinaryAut& eps, Elt z, Elt u) {
  require_stable(j, eps);
  const GroupTable& g = j.group();
  long long total = 0;
  for (Elt y : j.members()) {
    JElement left = j.j_mul(basis(g.inverse(y)), basis(z));
    JElement right = j.j_mul(basis(eps(y)), basis(g.inverse(u)));
    total += j.tau(j.j_mul(left, right));
  }
  if (total < 0) throw verdict_error("negative dimension");
  return total;
}

std::map<Elt, long long> psi(const JRingTable& j, const OrdinaryAut& eps,
                             Elt x) {
  require_stable(j, eps);
  const GroupTable& g = j.group();
  std::map<Elt, long long> acc;
  for (Elt y : j.members()) {
    JElement term =
        j.j_mul(j.j_mul(basis(y), basis(x)), basis(g.inverse(eps(y))));
    for (const auto& [w, c] : term) acc[w] += c;
  }
  for (auto it = acc.begin(); it != acc.end();) {
    if (it->second < 0) throw verdict_error("negative dimension");
    it = it->second == 0 ? acc.erase(it) : std::next(it);
  }
  return acc;
}

JElement i_eps_class(const JRingTable& j, const OrdinaryAut& eps, Elt x) {
  return psi(j, eps, x);
}

std::map<Elt, long long> trunc_conv_class(const JRingTable& j, Elt z, Elt u) {
  std::map<Elt, long long> out;
  for (auto [rw, c] : j.product_terms(z, u)) out[j.members()[rw]] = c;
  return out;
}

bool CentreReport::all_verdicts_pass() const {
  for (const auto& [name, ok] : verdicts) {
    (void)name;
    if (!ok) return false;
  }
  return !verdicts.empty();
}

CentreReport centre_report(const GroupTable& g, const CellPartition& part,
                           const JRingTable& j, const OrdinaryAut& eps,
                           const CentreOptions& opt) {
  require_stable(j, eps);
  const std::vector<Elt>& mem = j.members();
  const int n = static_cast<int>(mem.size());

  CentreReport r;
  r.cell = j.cell_id();
  r.eps = eps.name;
  r.a = j.a_value();
  r.members = mem;

  std::vector<Elt> b0 = boc0(g, eps, part, j.cell_id());
  r.in_boc0.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    r.in_boc0[i] = std::binary_search(b0.begin(), b0.end(), mem[i]) ? 1 : 0;

  /* Per-position images used by both matrix loops. */
  std::vector<Elt> inv_of(static_cast<std::size_t>(n)),
      eps_of(static_cast<std::size_t>(n)),
      eps_inv_of(static_cast<std::size_t>(n));
  std::vector<int> eps_pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    inv_of[i] = g.inverse(mem[i]);
    eps_of[i] = eps(mem[i]);
    eps_inv_of[i] = g.inverse(eps_of[i]);
    eps_pos[i] = j.rank(eps_of[i]);
  }

  /* dim_hom(z, u) = sum_y tau(t_{y^-1} t_z t_{eps(y)} t_{u^-1}); the
     trailing tau( . t_{u^-1}) picks the coefficient of t_u, so the row
     at z is one accumulation per (y, term, term). */
  r.dim_hom.assign(static_cast<std::size_t>(n),
                   std::vector<long long>(static_cast<std::size_t>(n), 0));
  run_parallel(opt.threads, n, [&](int zi, int) {
    std::vector<long long>& row = r.dim_hom[static_cast<std::size_t>(zi)];
    for (int yi = 0; yi < n; ++yi)
      for (auto [rw, ca] : j.product_terms(inv_of[yi], mem[zi]))
        for (auto [ru, cb] : j.product_terms(mem[rw], eps_of[yi]))
          row[ru] += ca * cb;
  });

  /* psi_x = sum_y t_y t_x t_{eps(y)^-1}, one row per x. */
  r.psi.assign(static_cast<std::size_t>(n),
               std::vector<long long>(static_cast<std::size_t>(n), 0));
  run_parallel(opt.threads, n, [&](int xi, int) {
    std::vector<long long>& row = r.psi[static_cast<std::size_t>(xi)];
    for (int yi = 0; yi < n; ++yi)
      for (auto [rw, ca] : j.product_terms(mem[yi], mem[xi]))
        for (auto [rz, cb] : j.product_terms(mem[rw], eps_inv_of[yi]))
          row[rz] += ca * cb;
  });

  r.total_dim = 0;
  for (const auto& row : r.dim_hom)
    for (long long v : row) r.total_dim += v;

  bool nonneg = true, symm = true, support = true, match = true,
       eps_inv = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      long long dh = r.dim_hom[a][b], ps = r.psi[a][b];
      if (dh < 0 || ps < 0) nonneg = false;
      if (dh != r.dim_hom[b][a]) symm = false;
      if (dh != 0 && (!r.in_boc0[a] || !r.in_boc0[b])) support = false;
      if (ps != 0 && !r.in_boc0[b]) support = false;
      if (r.psi[b][a] != dh) match = false;
      if (ps != r.psi[a][eps_pos[b]]) eps_inv = false;
    }
  r.verdicts = {{"nonnegative", nonneg},
                {"symmetric", symm},
                {"boc0-support", support},
                {"psi-matches-dim-hom", match},
                {"psi-eps-invariant", eps_inv}};
  return r;
}

}  // namespace coxcells
