/*
  This is cache.cpp

  Entry layout, byte codecs for the three table kinds, and the
  directory handling described in cache.hpp.  Decoders treat the
  payload as hostile: every count is checked against the remaining
  bytes and every index against the group before it is used, so a
  damaged entry becomes a miss rather than undefined behaviour.
*/

#include "coxcells/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace coxcells {

std::uint64_t fnv1a64(const unsigned char* data, std::size_t n) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(x));
  return std::string(buf);
}

std::string checksum_string(const Bytes& payload) {
  return "fnv1a64:" + hex64(fnv1a64(payload.data(), payload.size()));
}

/* Little-endian, fixed-width primitives with 32-bit length prefixes
   on every sequence. */
struct ByteWriter {
  Bytes out;

  void u8(unsigned char b) { out.push_back(b); }
  void u32(std::uint32_t x) {
    for (int i = 0; i < 4; ++i) out.push_back((x >> (8 * i)) & 0xff);
  }
  void i32(std::int32_t x) { u32(static_cast<std::uint32_t>(x)); }
  void u64(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) out.push_back((x >> (8 * i)) & 0xff);
  }
  void i64(std::int64_t x) { u64(static_cast<std::uint64_t>(x)); }
};

struct ByteReader {
  const unsigned char* p;
  const unsigned char* end;

  explicit ByteReader(const Bytes& b)
      : p(b.data()), end(b.data() + b.size()) {}

  void need(std::size_t n) const {
    if (static_cast<std::size_t>(end - p) < n)
      throw cache_corrupt("truncated section");
  }
  unsigned char u8() {
    need(1);
    return *p++;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= std::uint32_t(*p++) << (8 * i);
    return x;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  std::uint64_t u64() {
    need(8);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= std::uint64_t(*p++) << (8 * i);
    return x;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  bool done() const { return p == end; }
};

void finish(const ByteReader& r) {
  if (!r.done()) throw cache_corrupt("trailing bytes");
}

/* A count that is about to drive a loop must at least fit in the
   remaining bytes, each item needing min_item_bytes. */
std::uint32_t checked_count(ByteReader& r, std::size_t min_item_bytes) {
  std::uint32_t n = r.u32();
  r.need(static_cast<std::size_t>(n) * min_item_bytes);
  return n;
}

void put_poly(ByteWriter& w, const LaurentPoly& p) {
  if (p.is_zero()) {
    w.i32(0);
    w.u32(0);
    return;
  }
  w.i32(p.min_deg());
  const std::uint32_t len =
      static_cast<std::uint32_t>(p.max_deg() - p.min_deg() + 1);
  w.u32(len);
  for (int d = p.min_deg(); d <= p.max_deg(); ++d) w.i64(p.coeff(d));
}

LaurentPoly get_poly(ByteReader& r) {
  const std::int32_t lo = r.i32();
  const std::uint32_t len = checked_count(r, 8);
  std::vector<Coeff> coeffs(len);
  for (std::uint32_t i = 0; i < len; ++i) coeffs[i] = r.i64();
  return LaurentPoly::from_dense(lo, std::move(coeffs));
}

}  // namespace

/* Friend of KLTable and JRingTable: the only code that reaches their
   private rows directly, so the classes' invariants stay enforced by
   their own builders everywhere else. */
struct CacheIO {
  static Bytes kl_out(const KLTable& t) {
    ByteWriter w;
    const Elt n = t.group().size();
    w.u32(static_cast<std::uint32_t>(n));
    for (Elt z = 0; z < n; ++z) {
      const KLRow& row = t.row(z);
      w.u32(static_cast<std::uint32_t>(row.x.size()));
      for (Elt x : row.x) w.u32(static_cast<std::uint32_t>(x));
      for (const LaurentPoly& p : row.p) put_poly(w, p);
      w.u32(static_cast<std::uint32_t>(row.mu.size()));
      for (const auto& [x, m] : row.mu) {
        w.u32(static_cast<std::uint32_t>(x));
        w.i64(m);
      }
    }
    return std::move(w.out);
  }

  static KLTable kl_in(const GroupTable& g, const Bytes& b) {
    ByteReader r(b);
    const Elt n = g.size();
    if (r.u32() != static_cast<std::uint32_t>(n))
      throw cache_corrupt("group size mismatch");
    KLTable t;
    t.g_ = &g;
    t.rows_.resize(n);
    for (Elt z = 0; z < n; ++z) {
      KLRow& row = t.rows_[z];
      const std::uint32_t k = checked_count(r, 4);
      row.x.resize(k);
      for (std::uint32_t i = 0; i < k; ++i) {
        const std::uint32_t x = r.u32();
        if (x >= static_cast<std::uint32_t>(z))
          throw cache_corrupt("row entry out of range");
        if (i > 0 && x <= static_cast<std::uint32_t>(row.x[i - 1]))
          throw cache_corrupt("row entries out of order");
        row.x[i] = static_cast<Elt>(x);
      }
      row.p.resize(k);
      for (std::uint32_t i = 0; i < k; ++i) row.p[i] = get_poly(r);
      const std::uint32_t mk = checked_count(r, 12);
      row.mu.resize(mk);
      for (std::uint32_t i = 0; i < mk; ++i) {
        const std::uint32_t x = r.u32();
        if (x >= static_cast<std::uint32_t>(z))
          throw cache_corrupt("mu entry out of range");
        row.mu[i] = {static_cast<Elt>(x), r.i64()};
      }
    }
    finish(r);
    return t;
  }

  static Bytes jrings_out(const std::vector<JRingTable>& rings) {
    for (std::size_t i = 0; i < rings.size(); ++i)
      if (rings[i].cell_id() != static_cast<int>(i))
        throw std::invalid_argument("rings must be indexed by cell id");
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(rings.size()));
    for (const JRingTable& j : rings) {
      w.i32(j.a_value());
      const auto& mem = j.members();
      w.u32(static_cast<std::uint32_t>(mem.size()));
      for (Elt x : mem) w.u32(static_cast<std::uint32_t>(x));
      const auto& dist = j.distinguished();
      w.u32(static_cast<std::uint32_t>(dist.size()));
      for (Elt d : dist) w.u32(static_cast<std::uint32_t>(d));
      for (const auto& terms : j.rows_) {
        w.u32(static_cast<std::uint32_t>(terms.size()));
        for (const auto& [pos, c] : terms) {
          w.u32(static_cast<std::uint32_t>(pos));
          w.i64(c);
        }
      }
    }
    return std::move(w.out);
  }

  static std::vector<JRingTable> jrings_in(const GroupTable& g,
                                           const Bytes& b) {
    ByteReader r(b);
    const Elt n = g.size();
    const std::uint32_t ncells = checked_count(r, 4);
    if (ncells == 0 || ncells > static_cast<std::uint32_t>(n))
      throw cache_corrupt("bad cell count");
    std::vector<JRingTable> rings(ncells);
    std::vector<char> seen(n, 0);
    for (std::uint32_t c = 0; c < ncells; ++c) {
      JRingTable& j = rings[c];
      j.g_ = &g;
      j.cell_ = static_cast<int>(c);
      j.a_ = r.i32();
      if (j.a_ < 0) throw cache_corrupt("negative a-value");
      const std::uint32_t nm = checked_count(r, 4);
      if (nm == 0) throw cache_corrupt("empty cell");
      j.members_.resize(nm);
      j.rank_.assign(n, -1);
      for (std::uint32_t i = 0; i < nm; ++i) {
        const std::uint32_t x = r.u32();
        if (x >= static_cast<std::uint32_t>(n))
          throw cache_corrupt("member out of range");
        if (i > 0 && x <= static_cast<std::uint32_t>(j.members_[i - 1]))
          throw cache_corrupt("members out of order");
        if (seen[x]) throw cache_corrupt("element in two cells");
        seen[x] = 1;
        j.members_[i] = static_cast<Elt>(x);
        j.rank_[x] = static_cast<int>(i);
      }
      const std::uint32_t nd = checked_count(r, 4);
      if (nd == 0 || nd > nm) throw cache_corrupt("bad unit support");
      j.dist_.resize(nd);
      for (std::uint32_t i = 0; i < nd; ++i) {
        const std::uint32_t d = r.u32();
        if (d >= static_cast<std::uint32_t>(n) || j.rank_[d] < 0)
          throw cache_corrupt("unit support outside cell");
        if (i > 0 && d <= static_cast<std::uint32_t>(j.dist_[i - 1]))
          throw cache_corrupt("unit support out of order");
        j.dist_[i] = static_cast<Elt>(d);
      }
      j.rows_.resize(static_cast<std::size_t>(nm) * nm);
      for (auto& terms : j.rows_) {
        const std::uint32_t cnt = checked_count(r, 12);
        terms.resize(cnt);
        for (std::uint32_t i = 0; i < cnt; ++i) {
          const std::uint32_t pos = r.u32();
          if (pos >= nm) throw cache_corrupt("product term out of range");
          if (i > 0 && pos <= static_cast<std::uint32_t>(terms[i - 1].first))
            throw cache_corrupt("product terms out of order");
          terms[i] = {static_cast<int>(pos), r.i64()};
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw cache_corrupt("cells do not cover the group");
    finish(r);
    return rings;
  }
};

Bytes kl_to_bytes(const KLTable& t) { return CacheIO::kl_out(t); }

KLTable kl_from_bytes(const GroupTable& g, const Bytes& payload) {
  return CacheIO::kl_in(g, payload);
}

Bytes jrings_to_bytes(const std::vector<JRingTable>& rings) {
  return CacheIO::jrings_out(rings);
}

std::vector<JRingTable> jrings_from_bytes(const GroupTable& g,
                                          const Bytes& payload) {
  return CacheIO::jrings_in(g, payload);
}

namespace {

void put_ids(ByteWriter& w, const std::vector<Elt>& ids) {
  for (Elt x : ids) w.u32(static_cast<std::uint32_t>(x));
}

/* Reads one id-per-element array and rebuilds the matching cell
   lists; ids must be exactly 0..count-1 with every id used. */
std::pair<std::vector<Elt>, std::vector<std::vector<Elt>>> get_ids(
    ByteReader& r, Elt n, std::uint32_t count) {
  std::vector<Elt> of(n);
  std::vector<std::vector<Elt>> cells(count);
  for (Elt w = 0; w < n; ++w) {
    const std::uint32_t id = r.u32();
    if (id >= count) throw cache_corrupt("cell id out of range");
    of[w] = static_cast<Elt>(id);
    cells[id].push_back(w);
  }
  for (const auto& members : cells)
    if (members.empty()) throw cache_corrupt("empty cell id");
  return {std::move(of), std::move(cells)};
}

}  // namespace

Bytes cells_to_bytes(const CellPartition& part, const CellInvariants& inv) {
  ByteWriter w;
  const Elt n = static_cast<Elt>(part.lr_of.size());
  w.u32(static_cast<std::uint32_t>(n));
  w.u32(static_cast<std::uint32_t>(part.left_cells.size()));
  w.u32(static_cast<std::uint32_t>(part.right_cells.size()));
  w.u32(static_cast<std::uint32_t>(part.lr_cells.size()));
  put_ids(w, part.left_of);
  put_ids(w, part.right_of);
  put_ids(w, part.lr_of);
  for (const auto& row : part.lr_leq)
    for (char bit : row) w.u8(bit ? 1 : 0);
  for (int a : inv.a) w.i32(a);
  for (int d : inv.delta) w.i32(d);
  for (Coeff c : inv.lead) w.i64(c);
  for (char d : inv.distinguished) w.u8(d ? 1 : 0);
  for (int a : inv.a_of_lr) w.i32(a);
  return std::move(w.out);
}

std::pair<CellPartition, CellInvariants> cells_from_bytes(
    Elt group_size, const Bytes& payload) {
  ByteReader r(payload);
  const Elt n = group_size;
  if (r.u32() != static_cast<std::uint32_t>(n))
    throw cache_corrupt("group size mismatch");
  const std::uint32_t nl = r.u32();
  const std::uint32_t nr = r.u32();
  const std::uint32_t nlr = r.u32();
  if (nl == 0 || nr == 0 || nlr == 0 || nl > static_cast<std::uint32_t>(n) ||
      nr > static_cast<std::uint32_t>(n) || nlr > static_cast<std::uint32_t>(n))
    throw cache_corrupt("bad cell count");
  CellPartition part;
  std::tie(part.left_of, part.left_cells) = get_ids(r, n, nl);
  std::tie(part.right_of, part.right_cells) = get_ids(r, n, nr);
  std::tie(part.lr_of, part.lr_cells) = get_ids(r, n, nlr);
  part.lr_leq.assign(nlr, std::vector<char>(nlr));
  for (auto& row : part.lr_leq)
    for (char& bit : row) {
      const unsigned char b = r.u8();
      if (b > 1) throw cache_corrupt("bad order bit");
      bit = static_cast<char>(b);
    }
  CellInvariants inv;
  inv.a.resize(n);
  for (int& a : inv.a) a = r.i32();
  inv.delta.resize(n);
  for (int& d : inv.delta) d = r.i32();
  inv.lead.resize(n);
  for (Coeff& c : inv.lead) c = r.i64();
  inv.distinguished.resize(n);
  for (char& d : inv.distinguished) {
    const unsigned char b = r.u8();
    if (b > 1) throw cache_corrupt("bad flag bit");
    d = static_cast<char>(b);
  }
  inv.a_of_lr.resize(nlr);
  for (int& a : inv.a_of_lr) a = r.i32();
  finish(r);
  return {std::move(part), std::move(inv)};
}

/* ---------------- directory handling ---------------- */

namespace {

std::optional<Bytes> warn_miss(const std::string& path, const char* why) {
  std::fprintf(stderr, "cache: ignoring %s (%s); recomputing\n", path.c_str(),
               why);
  return std::nullopt;
}

}  // namespace

Cache::Cache(const std::string& dir) : dir_(dir) {
  if (dir_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    std::fprintf(stderr, "cache: cannot create %s (%s); caching disabled\n",
                 dir_.c_str(), ec.message().c_str());
    return;
  }
  const std::string lock = dir_ + "/lock";
  fd_ = ::open(lock.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    std::fprintf(stderr, "cache: cannot open %s; caching disabled\n",
                 lock.c_str());
    return;
  }
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    std::fprintf(stderr,
                 "cache: %s is in use by another process; caching disabled "
                 "for this run\n",
                 dir_.c_str());
    ::close(fd_);
    fd_ = -1;
  }
}

Cache::~Cache() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

Cache::Cache(Cache&& other) noexcept : dir_(std::move(other.dir_)), fd_(other.fd_) {
  other.fd_ = -1;
}

Cache& Cache::operator=(Cache&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
    dir_ = std::move(other.dir_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

std::string Cache::entry_path(const CoxeterMatrix& m,
                              const std::string& kind) const {
  const std::string key = m.key();
  const std::uint64_t h =
      fnv1a64(reinterpret_cast<const unsigned char*>(key.data()), key.size());
  return dir_ + "/" + kind + "-" + hex64(h) + ".cache";
}

std::optional<Bytes> Cache::load(const CoxeterMatrix& m,
                                 const std::string& kind) const {
  if (!enabled()) return std::nullopt;
  const std::string path = entry_path(m, kind);
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;  // absent entries are a silent miss
  std::string header;
  if (!std::getline(f, header)) return warn_miss(path, "unreadable header");
  const nlohmann::json h = nlohmann::json::parse(header, nullptr, false);
  if (h.is_discarded()) return warn_miss(path, "malformed header");
  try {
    if (h.at("schema_version").get<int>() != kCacheSchemaVersion)
      return warn_miss(path, "schema version mismatch");
    if (h.at("kind").get<std::string>() != kind)
      return warn_miss(path, "kind mismatch");
    if (h.at("normalization").get<std::string>() != kNormalizationTag)
      return warn_miss(path, "normalization mismatch");
    if (h.at("rank").get<int>() != m.rank())
      return warn_miss(path, "rank mismatch");
    if (h.at("matrix").get<std::vector<std::vector<int>>>() != m.entries())
      return warn_miss(path, "matrix mismatch");
    const std::uint64_t nbytes = h.at("payload_bytes").get<std::uint64_t>();
    const std::string want = h.at("checksum").get<std::string>();
    const std::streampos data_start = f.tellg();
    f.seekg(0, std::ios::end);
    const std::streampos data_end = f.tellg();
    if (data_start < 0 || data_end < data_start ||
        static_cast<std::uint64_t>(data_end - data_start) != nbytes)
      return warn_miss(path, "payload length mismatch");
    f.seekg(data_start);
    Bytes payload(nbytes);
    if (nbytes > 0)
      f.read(reinterpret_cast<char*>(payload.data()),
             static_cast<std::streamsize>(nbytes));
    if (!f || static_cast<std::uint64_t>(f.gcount()) != nbytes)
      return warn_miss(path, "truncated payload");
    if (checksum_string(payload) != want)
      return warn_miss(path, "checksum mismatch");
    return payload;
  } catch (const nlohmann::json::exception&) {
    return warn_miss(path, "malformed header");
  }
}

void Cache::store(const CoxeterMatrix& m, const std::string& kind,
                  const Bytes& payload) const {
  if (!enabled()) return;
  nlohmann::ordered_json h;
  h["schema_version"] = kCacheSchemaVersion;
  h["kind"] = kind;
  h["matrix"] = m.entries();
  h["rank"] = m.rank();
  h["normalization"] = kNormalizationTag;
  h["payload_bytes"] = payload.size();
  h["checksum"] = checksum_string(payload);
  const std::string path = entry_path(m, kind);
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      std::fprintf(stderr, "cache: cannot write %s; entry not saved\n",
                   tmp.c_str());
      return;
    }
    const std::string head = h.dump() + "\n";
    f.write(head.data(), static_cast<std::streamsize>(head.size()));
    if (!payload.empty())
      f.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    f.flush();
    if (!f) {
      std::fprintf(stderr, "cache: short write to %s; entry not saved\n",
                   tmp.c_str());
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::fprintf(stderr, "cache: cannot publish %s (%s); entry not saved\n",
                 path.c_str(), ec.message().c_str());
    std::filesystem::remove(tmp, ec);
  }
}

}  // namespace coxcells
