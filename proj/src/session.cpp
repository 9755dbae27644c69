/*
  This is session.cpp

  Stage wiring for Session.  Loads consult the cache first and fall
  back to computing; a payload that decodes but does not match the
  tables it is supposed to extend (wrong partition, wrong sizes) is
  treated like any other damaged entry: one stderr note, recompute,
  overwrite.
*/

#include "coxcells/session.hpp"

#include <cstdio>

namespace coxcells {

Session::Session(SessionConfig cfg)
    : cfg_(std::move(cfg)), cache_(cfg_.cache_dir) {}

const GroupTable& Session::group() {
  if (!g_)
    g_ = std::make_unique<GroupTable>(GroupTable::build(cfg_.matrix, cfg_.cap));
  return *g_;
}

const KLTable& Session::kl() {
  if (kl_) return *kl_;
  const GroupTable& g = group();
  if (auto payload = cache_.load(cfg_.matrix, "kl")) {
    try {
      kl_ = std::make_unique<KLTable>(kl_from_bytes(g, *payload));
      from_cache_.insert("kl");
      return *kl_;
    } catch (const cache_corrupt& e) {
      std::fprintf(stderr, "cache: %s; recomputing\n", e.what());
    }
  }
  kl_ = std::make_unique<KLTable>(KLTable::build(g, cfg_.threads));
  cache_.store(cfg_.matrix, "kl", kl_to_bytes(*kl_));
  return *kl_;
}

const CellPartition& Session::cells() {
  if (part_) return *part_;
  const KLTable& t = kl();
  if (auto payload = cache_.load(cfg_.matrix, "cells")) {
    try {
      auto [part, inv] = cells_from_bytes(group().size(), *payload);
      part_ = std::make_unique<CellPartition>(std::move(part));
      inv_ = std::make_unique<CellInvariants>(std::move(inv));
      from_cache_.insert("cells");
      return *part_;
    } catch (const cache_corrupt& e) {
      std::fprintf(stderr, "cache: %s; recomputing\n", e.what());
    }
  }
  CellOptions opt;
  opt.threads = cfg_.threads;
  part_ = std::make_unique<CellPartition>(cells_partition(t, opt));
  inv_ = std::make_unique<CellInvariants>(cell_invariants(t, *part_, opt));
  cache_.store(cfg_.matrix, "cells", cells_to_bytes(*part_, *inv_));
  return *part_;
}

const CellInvariants& Session::invariants() {
  cells();
  return *inv_;
}

const std::vector<JRingTable>& Session::jrings() {
  if (rings_) return *rings_;
  const CellPartition& part = cells();
  const CellInvariants& inv = invariants();
  const int ncells = static_cast<int>(part.lr_cells.size());
  if (auto payload = cache_.load(cfg_.matrix, "jring")) {
    try {
      auto rings = jrings_from_bytes(group(), *payload);
      /* The payload decoded, but it must also describe these cells. */
      if (static_cast<int>(rings.size()) != ncells)
        throw cache_corrupt("cell count differs from partition");
      for (int c = 0; c < ncells; ++c) {
        if (rings[c].members() != part.lr_cells[c])
          throw cache_corrupt("cell members differ from partition");
        if (rings[c].a_value() != inv.a_of_lr[c])
          throw cache_corrupt("a-value differs from partition");
      }
      rings_ =
          std::make_unique<std::vector<JRingTable>>(std::move(rings));
      from_cache_.insert("jring");
      return *rings_;
    } catch (const cache_corrupt& e) {
      std::fprintf(stderr, "cache: %s; recomputing\n", e.what());
    }
  }
  JRingOptions opt;
  opt.threads = cfg_.threads;
  auto rings = std::make_unique<std::vector<JRingTable>>();
  rings->reserve(ncells);
  for (int c = 0; c < ncells; ++c)
    rings->push_back(JRingTable::build(kl(), part, inv, c, opt));
  rings_ = std::move(rings);
  cache_.store(cfg_.matrix, "jring", jrings_to_bytes(*rings_));
  return *rings_;
}

const JRingTable& Session::jring(int lr_cell) {
  const auto& rings = jrings();
  if (lr_cell < 0 || lr_cell >= static_cast<int>(rings.size()))
    throw std::invalid_argument("no such two-sided cell");
  return rings[lr_cell];
}

const std::vector<OrdinaryAut>& Session::automorphisms() {
  if (!auts_)
    auts_ = std::make_unique<std::vector<OrdinaryAut>>(
        ordinary_automorphisms(group()));
  return *auts_;
}

const OrdinaryAut& Session::eps(const std::string& name) {
  return eps_by_name(automorphisms(), name);
}

CentreReport Session::centre(int lr_cell, const std::string& eps_name) {
  const JRingTable& j = jring(lr_cell);
  const OrdinaryAut& e = eps(eps_name);
  CentreOptions opt;
  opt.threads = cfg_.threads;
  return centre_report(group(), cells(), j, e, opt);
}

}  // namespace coxcells
