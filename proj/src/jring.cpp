/*
  This is jring.cpp

  Structure constants by restricted product sweeps, then the ring-law
  guards.  Multiplication tables are tiny compared to the Hecke side
  (plain integers, one row per basis pair), so everything after the
  sweeps is cheap.
*/

#include "coxcells/jring.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "coxcells/parallel.hpp"
#include "coxcells/products.hpp"

namespace coxcells {

namespace {

long long mul_ll(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw overflow_error();
  return r;
}

long long add_ll(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw overflow_error();
  return r;
}

}  // namespace

int JRingTable::rank_of(Elt w) const {
  if (w < 0 || w >= static_cast<Elt>(rank_.size()) || rank_[w] < 0)
    throw std::invalid_argument("element outside the cell");
  return rank_[w];
}

long long JRingTable::jc(Elt x, Elt y, Elt z) const {
  int n = static_cast<int>(members_.size());
  const auto& row =
      rows_[static_cast<std::size_t>(rank_of(x)) * n + rank_of(y)];
  int rz = rank_of(z);
  auto it = std::lower_bound(
      row.begin(), row.end(), rz,
      [](const std::pair<int, long long>& e, int v) { return e.first < v; });
  return it != row.end() && it->first == rz ? it->second : 0;
}

long long JRingTable::gamma(Elt x, Elt y, Elt z) const {
  return jc(x, y, g_->inverse(z));
}

const std::vector<std::pair<int, long long>>& JRingTable::product_terms(
    Elt x, Elt y) const {
  int n = static_cast<int>(members_.size());
  return rows_[static_cast<std::size_t>(rank_of(x)) * n + rank_of(y)];
}

JElement JRingTable::unit() const {
  JElement u;
  for (Elt d : dist_) u[d] = 1;
  return u;
}

JElement JRingTable::j_mul(const JElement& a, const JElement& b) const {
  int n = static_cast<int>(members_.size());
  std::vector<long long> acc(static_cast<std::size_t>(n), 0);
  for (const auto& [x, ca] : a) {
    int rx = rank_of(x);
    if (ca == 0) continue;
    for (const auto& [y, cb] : b) {
      int ry = rank_of(y);
      if (cb == 0) continue;
      long long f = mul_ll(ca, cb);
      for (auto [rz, c] : rows_[static_cast<std::size_t>(rx) * n + ry])
        acc[rz] = add_ll(acc[rz], mul_ll(f, c));
    }
  }
  JElement out;
  for (int rz = 0; rz < n; ++rz)
    if (acc[rz] != 0) out[members_[rz]] = acc[rz];
  return out;
}

long long JRingTable::tau(const JElement& a) const {
  long long s = 0;
  for (const auto& [z, c] : a) {
    int rz = rank_of(z);
    if (std::binary_search(dist_.begin(), dist_.end(), members_[rz]))
      s = add_ll(s, c);
  }
  return s;
}

void JRingTable::for_each(
    const std::function<void(Elt, Elt, Elt, long long)>& f) const {
  int n = static_cast<int>(members_.size());
  for (int rx = 0; rx < n; ++rx)
    for (int ry = 0; ry < n; ++ry)
      for (auto [rz, c] : rows_[static_cast<std::size_t>(rx) * n + ry])
        f(members_[rx], members_[ry], members_[rz], c);
}

std::size_t JRingTable::nonzero_count() const {
  std::size_t total = 0;
  for (const auto& row : rows_) total += row.size();
  return total;
}

JRingTable JRingTable::build(const KLTable& t, const CellPartition& part,
                             const CellInvariants& inv, int lr_cell,
                             const JRingOptions& opt) {
  const GroupTable& g = t.group();
  if (lr_cell < 0 || lr_cell >= static_cast<int>(part.lr_cells.size()))
    throw std::invalid_argument("no such two-sided cell");

  JRingTable j;
  j.g_ = &g;
  j.cell_ = lr_cell;
  j.members_ = part.lr_cells[lr_cell];
  j.a_ = inv.a_of_lr[lr_cell];
  j.rank_.assign(static_cast<std::size_t>(g.size()), -1);
  const int n = static_cast<int>(j.members_.size());
  for (int i = 0; i < n; ++i) j.rank_[j.members_[i]] = i;
  for (Elt z : j.members_)
    if (inv.distinguished[z]) j.dist_.push_back(z);
  j.rows_.assign(static_cast<std::size_t>(n) * n, {});

  /* One sweep per right factor; distinct y means distinct row slots,
     so workers never collide and the result is thread-count
     independent. */
  ColumnBasis basis = ColumnBasis::restricted(g, j.members_);
  run_parallel(opt.threads, n, [&](int yi, int) {
    ProductSweep ws;
    left_products(t, basis, j.members_[yi], ws,
                  [&](Elt x, const std::vector<LaurentPoly>& vec) {
                    if (vec.empty()) return;
                    int rx = j.rank_[x];
                    if (rx < 0) return;
                    auto& row = j.rows_[static_cast<std::size_t>(rx) * n + yi];
                    for (int col = 0; col < n; ++col) {
                      const LaurentPoly& f = vec[col];
                      if (f.is_zero()) continue;
                      if (f.max_deg() > j.a_)
                        throw verdict_error("h-degree above the cell a-value");
                      Coeff c = f.coeff(j.a_);
                      if (c < 0)
                        throw verdict_error("negative structure constant");
                      if (c != 0)
                        row.emplace_back(col, static_cast<long long>(c));
                    }
                  });
  });

  auto row_at = [&](int a, int b) -> const std::vector<std::pair<int, long long>>& {
    return j.rows_[static_cast<std::size_t>(a) * n + b];
  };

  /* Unit law: the distinguished sum must act as identity on both
     sides of every basis element. */
  std::vector<int> drank;
  for (Elt d : j.dist_) drank.push_back(j.rank_[d]);
  {
    std::vector<long long> acc(static_cast<std::size_t>(n));
    for (int ry = 0; ry < n; ++ry) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int rd : drank)
        for (auto [rz, c] : row_at(rd, ry)) acc[rz] += c;
      for (int rz = 0; rz < n; ++rz)
        if (acc[rz] != (rz == ry ? 1 : 0))
          throw verdict_error("unit check failed");
    }
    for (int rx = 0; rx < n; ++rx) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int rd : drank)
        for (auto [rz, c] : row_at(rx, rd)) acc[rz] += c;
      for (int rz = 0; rz < n; ++rz)
        if (acc[rz] != (rz == rx ? 1 : 0))
          throw verdict_error("unit check failed");
    }
  }

  /* Pairing law: tau(t_x t_y) = 1 exactly when y = x^-1. */
  {
    std::vector<char> is_dist(static_cast<std::size_t>(n), 0);
    for (int rd : drank) is_dist[rd] = 1;
    for (int rx = 0; rx < n; ++rx) {
      int ry_inv = j.rank_[g.inverse(j.members_[rx])];
      for (int ry = 0; ry < n; ++ry) {
        long long s = 0;
        for (auto [rz, c] : row_at(rx, ry))
          if (is_dist[rz]) s += c;
        if (s != (ry == ry_inv ? 1 : 0))
          throw verdict_error("tau pairing check failed");
      }
    }
  }

  /* Associativity, on every triple when the cell is small enough and
     on seeded random triples otherwise. */
  {
    auto check_triple = [&](int rx, int ry, int rz, std::vector<long long>& lhs,
                            std::vector<long long>& rhs) {
      std::fill(lhs.begin(), lhs.end(), 0);
      std::fill(rhs.begin(), rhs.end(), 0);
      for (auto [u, c1] : row_at(rx, ry))
        for (auto [w, c2] : row_at(u, rz)) lhs[w] += c1 * c2;
      for (auto [u, c1] : row_at(ry, rz))
        for (auto [w, c2] : row_at(rx, u)) rhs[w] += c1 * c2;
      if (lhs != rhs) throw verdict_error("associativity check failed");
    };
    if (static_cast<std::size_t>(n) <= opt.assoc_exhaustive) {
      std::vector<std::vector<long long>> lhs(
          static_cast<std::size_t>(opt.threads),
          std::vector<long long>(static_cast<std::size_t>(n)));
      auto rhs = lhs;
      run_parallel(opt.threads, n, [&](int rx, int worker) {
        for (int ry = 0; ry < n; ++ry)
          for (int rz = 0; rz < n; ++rz)
            check_triple(rx, ry, rz, lhs[worker], rhs[worker]);
      });
    } else {
      std::mt19937_64 rng(opt.assoc_seed);
      std::vector<long long> lhs(static_cast<std::size_t>(n)),
          rhs(static_cast<std::size_t>(n));
      for (int k = 0; k < opt.assoc_samples; ++k) {
        int rx = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int ry = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int rz = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        check_triple(rx, ry, rz, lhs, rhs);
      }
    }
  }

  return j;
}

}  // namespace coxcells
