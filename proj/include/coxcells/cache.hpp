/*
  This is cache.hpp

  On-disk persistence for the expensive tables.  Each entry is one
  file: a JSON metadata line (schema version, Coxeter matrix, rank,
  normalization tag, payload kind, payload length, checksum) followed
  by a compact length-prefixed binary payload.  Any mismatch on load —
  wrong version, wrong matrix, truncation, bad checksum, malformed
  payload — degrades to a miss: the caller recomputes and overwrites.
  Nothing is ever partially reused.

  A cache directory is owned by one process at a time through an
  advisory lock file; when the lock is busy the cache switches itself
  off for the run instead of blocking or racing.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxcells/jring.hpp"
#include "coxcells/kl.hpp"

namespace coxcells {

/* Bump this whenever the payload encoding or the meaning of any
   stored number changes; old entries then recompute instead of being
   misread. */
inline constexpr int kCacheSchemaVersion = 1;

/* Names the coefficient conventions the payloads assume (quadratic
   relation, basis, degree bounds).  Part of the header so an entry
   written under different conventions can never be reused. */
inline constexpr const char* kNormalizationTag = "v-normalized/c-basis";

/* 64-bit FNV-1a over a byte range. */
std::uint64_t fnv1a64(const unsigned char* data, std::size_t n);

using Bytes = std::vector<unsigned char>;

/* Thrown by the payload decoders on structural damage (truncated
   section, index out of range).  Cache::load never lets it escape a
   well-formed call: the caller sees a miss. */
struct cache_corrupt : std::runtime_error {
  explicit cache_corrupt(const std::string& what)
      : std::runtime_error("corrupt cache entry: " + what) {}
};

class Cache {
public:
  /* A default-constructed cache is disabled: load always misses and
     store does nothing. */
  Cache() = default;

  /* Opens dir (creating it if needed) and takes the advisory lock.
     An empty dir, an unusable directory, or a busy lock leaves the
     cache disabled, with one note on stderr for the latter two. */
  explicit Cache(const std::string& dir);
  ~Cache();

  Cache(Cache&& other) noexcept;
  Cache& operator=(Cache&& other) noexcept;
  Cache(const Cache&) = delete;
  Cache& operator=(const Cache&) = delete;

  bool enabled() const { return fd_ >= 0; }
  const std::string& dir() const { return dir_; }

  /* Payload bytes for (matrix, kind), or nullopt on any miss.  A miss
     caused by a damaged or mismatched entry prints one warning line
     to stderr; a simply absent entry is silent. */
  std::optional<Bytes> load(const CoxeterMatrix& m,
                            const std::string& kind) const;

  /* Writes header + payload to a temporary file and renames it over
     the entry, so readers only ever see complete entries.  I/O
     trouble is reported on stderr and swallowed: a failed store must
     not abort the computation whose result it was saving. */
  void store(const CoxeterMatrix& m, const std::string& kind,
             const Bytes& payload) const;

  /* The file the (matrix, kind) entry lives at. */
  std::string entry_path(const CoxeterMatrix& m,
                         const std::string& kind) const;

private:
  std::string dir_;
  int fd_ = -1;
};

/*
  Byte images of the three expensive stages.  The group itself is
  cheap to rebuild and is passed back in at decode time; decoders
  validate every index against it and throw cache_corrupt on damage.
*/
Bytes kl_to_bytes(const KLTable& t);
KLTable kl_from_bytes(const GroupTable& g, const Bytes& payload);

Bytes cells_to_bytes(const CellPartition& part, const CellInvariants& inv);
std::pair<CellPartition, CellInvariants> cells_from_bytes(
    Elt group_size, const Bytes& payload);

/* All two-sided cells' rings in one image, ascending cell id. */
Bytes jrings_to_bytes(const std::vector<JRingTable>& rings);
std::vector<JRingTable> jrings_from_bytes(const GroupTable& g,
                                          const Bytes& payload);

}  // namespace coxcells
