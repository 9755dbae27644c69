/*
  This is session.hpp

  Lazy, cache-aware construction of the whole pipeline for one group:
  multiplication table, canonical-basis table, cell partition with its
  invariants, the asymptotic rings, and the automorphism list.  Each
  stage is built at most once, at a stable heap address, so references
  handed out stay valid for the session's lifetime.

  With a cache directory configured, the three expensive stages are
  loaded from disk when a valid entry exists and stored right after
  being computed otherwise.  A loaded table is exactly as trustworthy
  as its checksum: the ring-law guards run when a table is first
  computed, not again on reload.
*/

#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "coxcells/cache.hpp"
#include "coxcells/centre.hpp"
#include "coxcells/twist.hpp"

namespace coxcells {

struct SessionConfig {
  CoxeterMatrix matrix;
  int threads = 1;
  /* Upper bound on group size; enumeration refuses past it. */
  Elt cap = 200000;
  /* Empty: nothing is persisted. */
  std::string cache_dir;
};

class Session {
public:
  explicit Session(SessionConfig cfg);

  const SessionConfig& config() const { return cfg_; }
  const CoxeterMatrix& matrix() const { return cfg_.matrix; }

  const GroupTable& group();
  const KLTable& kl();
  const CellPartition& cells();
  const CellInvariants& invariants();

  /* All two-sided cells' rings, indexed by cell id.  Asking for any
     ring builds (or loads) all of them, and the whole batch is what
     the cache stores. */
  const std::vector<JRingTable>& jrings();
  const JRingTable& jring(int lr_cell);

  const std::vector<OrdinaryAut>& automorphisms();
  const OrdinaryAut& eps(const std::string& name);

  CentreReport centre(int lr_cell, const std::string& eps_name);

  /* True when the stage was satisfied from disk in this session. */
  bool loaded_from_cache(const std::string& kind) const {
    return from_cache_.count(kind) != 0;
  }

private:
  SessionConfig cfg_;
  Cache cache_;
  std::unique_ptr<GroupTable> g_;
  std::unique_ptr<KLTable> kl_;
  std::unique_ptr<CellPartition> part_;
  std::unique_ptr<CellInvariants> inv_;
  std::unique_ptr<std::vector<JRingTable>> rings_;
  std::unique_ptr<std::vector<OrdinaryAut>> auts_;
  std::set<std::string> from_cache_;
};

}  // namespace coxcells
