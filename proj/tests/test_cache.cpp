// Round-trip, damage, and locking behaviour of the on-disk cache,
// plus the Session layer that stitches cached stages together.

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "coxcells/cache.hpp"
#include "coxcells/session.hpp"
#include "doctest.h"

using namespace coxcells;
namespace fs = std::filesystem;

namespace {

struct Built {
  GroupTable g;
  KLTable t;
  CellPartition part;
  CellInvariants inv;

  explicit Built(const CoxeterMatrix& m)
      : g(GroupTable::build(m)),
        t(KLTable::build(g)),
        part(cells_partition(t)),
        inv(cell_invariants(t, part)) {}
};

std::unique_ptr<Built> build_all(const std::string& letter, int rank) {
  return std::make_unique<Built>(CoxeterMatrix::of_type(letter, rank));
}

std::vector<JRingTable> build_rings(const Built& b) {
  std::vector<JRingTable> rings;
  for (int c = 0; c < static_cast<int>(b.part.lr_cells.size()); ++c)
    rings.push_back(JRingTable::build(b.t, b.part, b.inv, c));
  return rings;
}

/* A fresh directory per test case so runs never see stale entries. */
fs::path fresh_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() /
               ("coxcells-test-" + std::to_string(::getpid()) + "-" + tag);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, const std::string& data) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  REQUIRE(f.good());
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

using Triple = std::tuple<Elt, Elt, Elt, long long>;

std::vector<Triple> all_constants(const JRingTable& j) {
  std::vector<Triple> out;
  j.for_each([&](Elt x, Elt y, Elt z, long long c) {
    out.emplace_back(x, y, z, c);
  });
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("cache");

TEST_CASE("canonical-basis table: encode/decode identity") {
  auto b = build_all("A", 3);
  const Bytes bytes = kl_to_bytes(b->t);
  const KLTable back = kl_from_bytes(b->g, bytes);
  for (Elt w = 0; w < b->g.size(); ++w) {
    const KLRow& r0 = b->t.row(w);
    const KLRow& r1 = back.row(w);
    REQUIRE(r0.x == r1.x);
    REQUIRE(r0.mu == r1.mu);
    REQUIRE(r0.p.size() == r1.p.size());
    for (std::size_t i = 0; i < r0.p.size(); ++i) CHECK(r0.p[i] == r1.p[i]);
  }
  // Re-encoding the decoded table reproduces the bytes exactly.
  CHECK(kl_to_bytes(back) == bytes);
}

TEST_CASE("cells: encode/decode identity") {
  auto b = build_all("B", 2);
  const Bytes bytes = cells_to_bytes(b->part, b->inv);
  auto [part, inv] = cells_from_bytes(b->g.size(), bytes);
  CHECK(part.left_of == b->part.left_of);
  CHECK(part.right_of == b->part.right_of);
  CHECK(part.lr_of == b->part.lr_of);
  CHECK(part.left_cells == b->part.left_cells);
  CHECK(part.right_cells == b->part.right_cells);
  CHECK(part.lr_cells == b->part.lr_cells);
  CHECK(part.lr_leq == b->part.lr_leq);
  CHECK(inv.a == b->inv.a);
  CHECK(inv.delta == b->inv.delta);
  CHECK(inv.lead == b->inv.lead);
  CHECK(inv.distinguished == b->inv.distinguished);
  CHECK(inv.a_of_lr == b->inv.a_of_lr);
  CHECK(cells_to_bytes(part, inv) == bytes);
}

TEST_CASE("asymptotic rings: encode/decode identity") {
  auto b = build_all("B", 2);
  const auto rings = build_rings(*b);
  const Bytes bytes = jrings_to_bytes(rings);
  const auto back = jrings_from_bytes(b->g, bytes);
  REQUIRE(back.size() == rings.size());
  for (std::size_t c = 0; c < rings.size(); ++c) {
    CHECK(back[c].cell_id() == rings[c].cell_id());
    CHECK(back[c].a_value() == rings[c].a_value());
    CHECK(back[c].members() == rings[c].members());
    CHECK(back[c].distinguished() == rings[c].distinguished());
    CHECK(all_constants(back[c]) == all_constants(rings[c]));
  }
  CHECK(jrings_to_bytes(back) == bytes);
}

TEST_CASE("decoders refuse damaged payloads instead of crashing") {
  auto b = build_all("A", 2);
  const Bytes kl_bytes = kl_to_bytes(b->t);

  SUBCASE("truncated") {
    Bytes cut(kl_bytes.begin(), kl_bytes.end() - 5);
    CHECK_THROWS_AS(kl_from_bytes(b->g, cut), cache_corrupt);
  }
  SUBCASE("trailing bytes") {
    Bytes padded = kl_bytes;
    padded.push_back(0);
    CHECK_THROWS_AS(kl_from_bytes(b->g, padded), cache_corrupt);
  }
  SUBCASE("wrong group") {
    auto b3 = build_all("A", 3);
    CHECK_THROWS_AS(kl_from_bytes(b3->g, kl_bytes), cache_corrupt);
  }
  SUBCASE("absurd count") {
    Bytes huge = kl_bytes;
    huge[0] = 0xff;
    huge[1] = 0xff;
    huge[2] = 0xff;
    huge[3] = 0x7f;
    CHECK_THROWS_AS(kl_from_bytes(b->g, huge), cache_corrupt);
  }
  SUBCASE("rings from the wrong group") {
    const Bytes ring_bytes = jrings_to_bytes(build_rings(*b));
    auto b3 = build_all("A", 3);
    CHECK_THROWS_AS(jrings_from_bytes(b3->g, ring_bytes), cache_corrupt);
  }
  SUBCASE("cells size mismatch") {
    const Bytes cell_bytes = cells_to_bytes(b->part, b->inv);
    CHECK_THROWS_AS(cells_from_bytes(b->g.size() + 1, cell_bytes),
                    cache_corrupt);
  }
}

TEST_CASE("store then load returns the exact payload") {
  const fs::path dir = fresh_dir("roundtrip");
  const CoxeterMatrix m = CoxeterMatrix::of_type("A", 3);
  auto b = std::make_unique<Built>(m);
  const Bytes payload = kl_to_bytes(b->t);
  {
    Cache cache(dir.string());
    REQUIRE(cache.enabled());
    CHECK(!cache.load(m, "kl").has_value());  // empty: silent miss
    cache.store(m, "kl", payload);
    auto got = cache.load(m, "kl");
    REQUIRE(got.has_value());
    CHECK(*got == payload);
    // Stored entry is one header line plus the payload, bit for bit.
    const std::string file = slurp(cache.entry_path(m, "kl"));
    const auto nl = file.find('\n');
    REQUIRE(nl != std::string::npos);
    CHECK(file.size() - nl - 1 == payload.size());
    CHECK(Bytes(file.begin() + static_cast<long>(nl) + 1, file.end()) ==
          payload);
    // Overwrite wins.
    const Bytes other = {1, 2, 3};
    cache.store(m, "kl", other);
    auto again = cache.load(m, "kl");
    REQUIRE(again.has_value());
    CHECK(*again == other);
  }
  fs::remove_all(dir);
}

TEST_CASE("header or payload damage makes a miss, never a crash") {
  const fs::path dir = fresh_dir("damage");
  const CoxeterMatrix m = CoxeterMatrix::of_type("A", 2);
  const Bytes payload = {10, 20, 30, 40, 50};
  Cache cache(dir.string());
  REQUIRE(cache.enabled());
  const fs::path entry = cache.entry_path(m, "kl");

  auto reset = [&] { cache.store(m, "kl", payload); };

  SUBCASE("schema version bump forces a recompute") {
    reset();
    std::string file = slurp(entry);
    const std::string tag = "\"schema_version\":" +
                            std::to_string(kCacheSchemaVersion);
    const auto at = file.find(tag);
    REQUIRE(at != std::string::npos);
    file.replace(at, tag.size(), "\"schema_version\":999");
    spit(entry, file);
    CHECK(!cache.load(m, "kl").has_value());
  }
  SUBCASE("flipped payload byte fails the checksum") {
    reset();
    std::string file = slurp(entry);
    file.back() = static_cast<char>(file.back() ^ 0x01);
    spit(entry, file);
    CHECK(!cache.load(m, "kl").has_value());
  }
  SUBCASE("truncated file") {
    reset();
    std::string file = slurp(entry);
    spit(entry, file.substr(0, file.size() - 2));
    CHECK(!cache.load(m, "kl").has_value());
  }
  SUBCASE("trailing garbage") {
    reset();
    spit(entry, slurp(entry) + "x");
    CHECK(!cache.load(m, "kl").has_value());
  }
  SUBCASE("header is not JSON") {
    spit(entry, "not json\npayload");
    CHECK(!cache.load(m, "kl").has_value());
  }
  SUBCASE("header lies about the kind") {
    reset();
    std::string file = slurp(entry);
    const auto at = file.find("\"kind\":\"kl\"");
    REQUIRE(at != std::string::npos);
    file.replace(at, 11, "\"kind\":\"xx\"");
    spit(entry, file);
    CHECK(!cache.load(m, "kl").has_value());
  }
  SUBCASE("wrong matrix under the right file name") {
    reset();
    const CoxeterMatrix b2 = CoxeterMatrix::of_type("B", 2);
    // Write a B2-headed entry at the A2 path.
    Cache scratch((dir / "scratch").string());
    scratch.store(b2, "kl", payload);
    fs::copy_file(scratch.entry_path(b2, "kl"), entry,
                  fs::copy_options::overwrite_existing);
    CHECK(!cache.load(m, "kl").has_value());
  }
  fs::remove_all(dir);
}

TEST_CASE("one process owns the directory at a time") {
  const fs::path dir = fresh_dir("lock");
  auto first = std::make_unique<Cache>(dir.string());
  REQUIRE(first->enabled());
  Cache second(dir.string());
  CHECK(!second.enabled());  // busy lock switches the cache off
  // A disabled cache is inert, not broken.
  const CoxeterMatrix m = CoxeterMatrix::of_type("A", 2);
  second.store(m, "kl", {1, 2, 3});
  CHECK(!second.load(m, "kl").has_value());
  first.reset();  // lock released
  Cache third(dir.string());
  CHECK(third.enabled());
  fs::remove_all(dir);
}

TEST_CASE("session: hot load equals cold compute") {
  const fs::path dir = fresh_dir("session");
  const CoxeterMatrix m = CoxeterMatrix::of_type("A", 3);

  auto cold = std::make_unique<Session>(
      SessionConfig{m, 1, 200000, dir.string()});
  const Bytes kl_cold = kl_to_bytes(cold->kl());
  const Bytes cells_cold = cells_to_bytes(cold->cells(), cold->invariants());
  const Bytes rings_cold = jrings_to_bytes(cold->jrings());
  CHECK(!cold->loaded_from_cache("kl"));
  CHECK(!cold->loaded_from_cache("cells"));
  CHECK(!cold->loaded_from_cache("jring"));
  const CentreReport rep_cold = cold->centre(1, "flip");
  cold.reset();  // releases the directory lock

  auto hot = std::make_unique<Session>(
      SessionConfig{m, 1, 200000, dir.string()});
  CHECK(jrings_to_bytes(hot->jrings()) == rings_cold);
  CHECK(kl_to_bytes(hot->kl()) == kl_cold);
  CHECK(cells_to_bytes(hot->cells(), hot->invariants()) == cells_cold);
  CHECK(hot->loaded_from_cache("kl"));
  CHECK(hot->loaded_from_cache("cells"));
  CHECK(hot->loaded_from_cache("jring"));
  const CentreReport rep_hot = hot->centre(1, "flip");
  CHECK(rep_hot.cell == rep_cold.cell);
  CHECK(rep_hot.eps == rep_cold.eps);
  CHECK(rep_hot.a == rep_cold.a);
  CHECK(rep_hot.members == rep_cold.members);
  CHECK(rep_hot.in_boc0 == rep_cold.in_boc0);
  CHECK(rep_hot.dim_hom == rep_cold.dim_hom);
  CHECK(rep_hot.psi == rep_cold.psi);
  CHECK(rep_hot.total_dim == rep_cold.total_dim);
  CHECK(rep_hot.verdicts == rep_cold.verdicts);
  hot.reset();
  fs::remove_all(dir);
}

TEST_CASE("session: hot load equals cold compute, larger group") {
  const fs::path dir = fresh_dir("session-b3");
  const CoxeterMatrix m = CoxeterMatrix::of_type("B", 3);

  auto cold = std::make_unique<Session>(
      SessionConfig{m, 1, 200000, dir.string()});
  const Bytes kl_cold = kl_to_bytes(cold->kl());
  const Bytes cells_cold = cells_to_bytes(cold->cells(), cold->invariants());
  const Bytes rings_cold = jrings_to_bytes(cold->jrings());
  cold.reset();

  auto hot = std::make_unique<Session>(
      SessionConfig{m, 1, 200000, dir.string()});
  CHECK(kl_to_bytes(hot->kl()) == kl_cold);
  CHECK(cells_to_bytes(hot->cells(), hot->invariants()) == cells_cold);
  CHECK(jrings_to_bytes(hot->jrings()) == rings_cold);
  hot.reset();
  fs::remove_all(dir);
}

TEST_CASE("session: entry that decodes but mismatches is recomputed") {
  const fs::path dir = fresh_dir("session-frankenstein");
  const CoxeterMatrix a3 = CoxeterMatrix::of_type("A", 3);

  // Plant a ring payload built from a different group in A3's slot:
  // the header will claim A3, the bytes will describe B2.
  auto b2 = build_all("B", 2);
  const Bytes b2_rings = jrings_to_bytes(build_rings(*b2));
  {
    Cache cache(dir.string());
    REQUIRE(cache.enabled());
    cache.store(a3, "jring", b2_rings);
  }
  auto s = std::make_unique<Session>(
      SessionConfig{a3, 1, 200000, dir.string()});
  const auto& rings = s->jrings();  // decode fails; silently recomputed
  CHECK(!s->loaded_from_cache("jring"));
  CHECK(rings.size() == s->cells().lr_cells.size());
  // The bad entry was replaced by the good one.
  const Bytes fixed = jrings_to_bytes(rings);
  s.reset();
  Cache check(dir.string());
  auto stored = check.load(a3, "jring");
  REQUIRE(stored.has_value());
  CHECK(*stored == fixed);
  fs::remove_all(dir);
}

TEST_CASE("session: no cache directory means plain computation") {
  Session s(SessionConfig{CoxeterMatrix::of_type("A", 2)});
  CHECK(s.group().size() == 6);
  CHECK(s.jring(1).a_value() == 1);
  CHECK(s.centre(1, "id").total_dim == 4);
  CHECK(s.eps("flip").name == "flip");
  CHECK_THROWS_AS(s.jring(99), std::invalid_argument);
}

TEST_SUITE_END();
