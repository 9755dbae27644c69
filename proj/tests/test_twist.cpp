/*
  This is test_twist.cpp

  Diagram automorphism enumeration, the ordinarity cut-off at bond
  order 3, the induced element and cell actions, and boc0.
*/

#include <doctest.h>

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coxcells/twist.hpp"

using namespace coxcells;

namespace {

GroupTable group_of(const std::string& type, int rank) {
  return GroupTable::build(CoxeterMatrix::of_type(type, rank));
}

}  // namespace

TEST_SUITE("twist") {
  TEST_CASE("single generator admits only the identity") {
    GroupTable g = group_of("A", 1);
    auto auts = ordinary_automorphisms(g);
    REQUIRE(auts.size() == 1);
    CHECK(auts[0].name == "id");
    CHECK(auts[0].is_identity());
  }

  TEST_CASE("the braid-bond flip is ordinary, the square bond is not") {
    auto a2 = ordinary_automorphisms(group_of("A", 2));
    REQUIRE(a2.size() == 2);
    CHECK(a2[1].name == "flip");
    CHECK(a2[1].gen_map == std::vector<Gen>{1, 0});

    // s1 s2 has order 4 in B2 and 6 in G2: both flips are cut.
    CHECK(ordinary_automorphisms(group_of("B", 2)).size() == 1);
    CHECK(ordinary_automorphisms(group_of("G", 2)).size() == 1);
    CHECK(ordinary_automorphisms(group_of("F", 4)).size() == 1);
  }

  TEST_CASE("triality gives six automorphisms with cycle names") {
    GroupTable g = group_of("D", 4);
    auto auts = ordinary_automorphisms(g);
    REQUIRE(auts.size() == 6);
    std::vector<std::string> names;
    for (const auto& a : auts) names.push_back(a.name);
    CHECK(names == std::vector<std::string>{"id", "(1)(2)(3 4)", "(1 3)(2)(4)",
                                            "(1 3 4)(2)", "(1 4 3)(2)",
                                            "(1 4)(2)(3)"});
    const OrdinaryAut& rot = eps_by_name(auts, "(1 3 4)(2)");
    CHECK(rot.gen_map == std::vector<Gen>{2, 1, 3, 0});
  }

  TEST_CASE("the element action is a length-preserving homomorphism") {
    GroupTable g = group_of("A", 3);
    auto auts = ordinary_automorphisms(g);
    const OrdinaryAut& flip = eps_by_name(auts, "flip");
    CHECK(flip(g.parse_word("s1 s2")) == g.parse_word("s3 s2"));
    for (Elt w = 0; w < g.size(); ++w) {
      CHECK(g.length(flip(w)) == g.length(w));
      CHECK(flip(g.inverse(w)) == g.inverse(flip(w)));
      for (Elt u = 0; u < g.size(); ++u)
        CHECK(flip(g.mul(u, w)) == g.mul(flip(u), flip(w)));
    }
  }

  TEST_CASE("flip of A2 fixes the two-sided cells and swaps left cells") {
    GroupTable g = group_of("A", 2);
    KLTable t = KLTable::build(g);
    CellPartition part = cells_partition(t);
    auto auts = ordinary_automorphisms(g);
    EpsCellAction ida = eps_on_cells(eps_by_name(auts, "id"), part);
    for (int c = 0; c < static_cast<int>(ida.left.size()); ++c)
      CHECK(ida.left[c] == c);
    EpsCellAction act = eps_on_cells(eps_by_name(auts, "flip"), part);
    CHECK(act.lr == std::vector<int>{0, 1, 2});
    // Left cells: {e}, {s1, s2 s1}, {s2, s1 s2}, {s1 s2 s1}.
    CHECK(act.left == std::vector<int>{0, 2, 1, 3});
    CHECK(act.right == std::vector<int>{0, 2, 1, 3});
  }

  TEST_CASE("boc0 of the A2 middle cell depends on the twist") {
    GroupTable g = group_of("A", 2);
    KLTable t = KLTable::build(g);
    CellPartition part = cells_partition(t);
    auto auts = ordinary_automorphisms(g);
    int mid = part.lr_of[g.parse_word("s1")];
    CHECK(boc0(g, eps_by_name(auts, "id"), part, mid) ==
          std::vector<Elt>{g.parse_word("s1"), g.parse_word("s2")});
    CHECK(boc0(g, eps_by_name(auts, "flip"), part, mid) ==
          std::vector<Elt>{g.parse_word("s1 s2"), g.parse_word("s2 s1")});
  }

  TEST_CASE("boc0 of the B2 middle cell under the identity") {
    GroupTable g = group_of("B", 2);
    KLTable t = KLTable::build(g);
    CellPartition part = cells_partition(t);
    auto auts = ordinary_automorphisms(g);
    int mid = part.lr_of[g.parse_word("s1")];
    CHECK(boc0(g, eps_by_name(auts, "id"), part, mid) ==
          std::vector<Elt>{g.parse_word("s1"), g.parse_word("s2"),
                           g.parse_word("s1 s2 s1"),
                           g.parse_word("s2 s1 s2")});
  }

  TEST_CASE("under the identity boc0 collects the left-cell involutive members") {
    for (auto [type, rank] :
         {std::pair<const char*, int>{"A", 3}, {"B", 3}}) {
      GroupTable g = group_of(type, rank);
      KLTable t = KLTable::build(g);
      CellPartition part = cells_partition(t);
      CellInvariants inv = cell_invariants(t, part);
      auto auts = ordinary_automorphisms(g);
      const OrdinaryAut& id = eps_by_name(auts, "id");
      for (int c = 0; c < static_cast<int>(part.lr_cells.size()); ++c) {
        std::vector<Elt> expect;
        for (Elt z : part.lr_cells[c])
          if (part.left_of[z] == part.left_of[g.inverse(z)])
            expect.push_back(z);
        std::vector<Elt> got = boc0(g, id, part, c);
        CHECK(got == expect);
        for (Elt z : part.lr_cells[c])
          if (inv.distinguished[z])
            CHECK(std::find(got.begin(), got.end(), z) != got.end());
      }
    }
  }

  TEST_CASE("a cell moved by the twist is rejected") {
    GroupTable g = GroupTable::build(CoxeterMatrix({{1, 2}, {2, 1}}));
    KLTable t = KLTable::build(g);
    CellPartition part = cells_partition(t);
    auto auts = ordinary_automorphisms(g);
    REQUIRE(auts.size() == 2);
    const OrdinaryAut& swap = eps_by_name(auts, "flip");
    int cell_of_s1 = part.lr_of[g.parse_word("s1")];
    CHECK(part.lr_cells[cell_of_s1] == std::vector<Elt>{g.parse_word("s1")});
    CHECK_THROWS_WITH_AS(boc0(g, swap, part, cell_of_s1),
                         "cell not ε-stable", std::invalid_argument);
    // The identity keeps every cell in place, including this one.
    CHECK(boc0(g, eps_by_name(auts, "id"), part, cell_of_s1) ==
          std::vector<Elt>{g.parse_word("s1")});
  }

  TEST_CASE("automorphism names parse back to the table") {
    GroupTable g = group_of("A", 3);
    auto auts = ordinary_automorphisms(g);
    CHECK(eps_by_name(auts, "flip").gen_map == std::vector<Gen>{2, 1, 0});
    CHECK(eps_by_name(auts, "(1 3)(2)").gen_map == std::vector<Gen>{2, 1, 0});
    CHECK(eps_by_name(auts, "(1 3)").gen_map == std::vector<Gen>{2, 1, 0});
    CHECK(eps_by_name(auts, "(1)(2)(3)").is_identity());

    CHECK_THROWS_AS(eps_by_name(auts, "(1 2)"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(eps_by_name(auts, "(1 2"), "bad automorphism name",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(eps_by_name(auts, "(9)"), "bad automorphism name",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(eps_by_name(auts, "s1<->s3"),
                         "bad automorphism name", std::invalid_argument);

    auto b2 = ordinary_automorphisms(group_of("B", 2));
    CHECK_THROWS_WITH_AS(eps_by_name(b2, "flip"),
                         "flip is not defined for this group",
                         std::invalid_argument);
    CHECK_THROWS_AS(eps_by_name(b2, "(1 2)"), std::invalid_argument);
  }
}
