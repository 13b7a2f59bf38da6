#include <doctest.h>

#include <algorithm>

#include "ifent/cover.hpp"
#include "ifent/errors.hpp"
#include "support/oracles.hpp"
#include "support/paper_models.hpp"

using namespace ifent;
using namespace ifent::testing;

TEST_CASE("check_invariant_cover on the paper covers") {
  SUBCASE("example1 cover is valid") {
    const auto res =
        check_invariant_cover(example1(), example1_Q(), example1_cover());
    CHECK(res.ok);
  }
  SUBCASE("example4 two-element cover is valid") {
    InvariantCover cover;
    cover.elements = {{StateSet{0, 1}, 0}, {StateSet{2}, 1}};
    CHECK(check_invariant_cover(example4(), example4_Q(), cover).ok);
  }
  SUBCASE("a cell driving mass outside Q is rejected with the escapee named") {
    InvariantCover cover;
    cover.elements = {{StateSet{0, 1}, 0}, {StateSet{2}, 0}};  // F(2,a)={3}
    const auto res = check_invariant_cover(example4(), example4_Q(), cover);
    CHECK(!res.ok);
    CHECK(res.covers);
    CHECK(!res.invariant);
    CHECK(res.element == 1);
    CHECK(res.escaping_state == 3);
  }
  SUBCASE("non-covering element lists are rejected") {
    InvariantCover cover;
    cover.elements = {{StateSet{0}, 0}};
    const auto res = check_invariant_cover(example1(), example1_Q(), cover);
    CHECK(!res.ok);
    CHECK(!res.covers);
  }
}

TEST_CASE("singleton_cover") {
  SUBCASE("example1") {
    const auto cover = singleton_cover(example1(), example1_Q());
    REQUIRE(cover.elements.size() == 2);
    CHECK(cover.elements[0].set == StateSet{0});
    CHECK(cover.elements[0].input == 0);
    CHECK(cover.elements[1].set == StateSet{2});
    CHECK(cover.elements[1].input == 1);
  }
  SUBCASE("example4 witnesses") {
    const auto cover = singleton_cover(example4(), example4_Q());
    REQUIRE(cover.elements.size() == 3);
    CHECK(cover.elements[0] ==
          InvariantCover::Element{StateSet{0}, 0});
    CHECK(cover.elements[1] ==
          InvariantCover::Element{StateSet{1}, 0});
    CHECK(cover.elements[2] ==
          InvariantCover::Element{StateSet{2}, 1});
  }
  SUBCASE("not controlled invariant throws") {
    CHECK_THROWS_AS(singleton_cover(example1(), {StateSet{1}}),
                    NotControlledInvariant);
  }
  SUBCASE("singleton cover always validates when Q is controlled invariant") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
      const auto sys = random_system(rng, 5, 3);
      const auto Q = random_target(rng, sys);
      if (Q.members.empty()) continue;
      const auto cover = singleton_cover(sys, Q);
      CHECK(check_invariant_cover(sys, Q, cover).ok);
    }
  }
}

TEST_CASE("controllable_family computes the maximal controllable sets") {
  SUBCASE("example1") {
    const auto fam = controllable_family(example1(), example1_Q());
    REQUIRE(fam.size() == 2);
    CHECK(fam[0].set == StateSet{0});
    CHECK(fam[0].input == 0);
    CHECK(fam[1].set == StateSet{2});
    CHECK(fam[1].input == 1);
  }
  SUBCASE("example4") {
    const auto fam = controllable_family(example4(), example4_Q());
    REQUIRE(fam.size() == 2);
    CHECK(fam[0].set == StateSet{0, 1});
    CHECK(fam[0].input == 0);
    CHECK(fam[1].set == StateSet{2});
    CHECK(fam[1].input == 1);
  }
  SUBCASE("may be empty when nothing is controllable") {
    FiniteSystem sys;
    sys.num_states = 2;
    sys.num_inputs = 1;
    sys.trans = {{1}, {1}};  // everything drains into 1
    const auto fam = controllable_family(sys, {StateSet{0}});
    CHECK(fam.empty());
  }
}

TEST_CASE("enumerate_covers") {
  SUBCASE("example1 exact mode yields exactly one cover") {
    CoverLimits limits;
    limits.exact = true;
    const auto res = enumerate_covers(example1(), example1_Q(), limits);
    CHECK(res.exact_mode);
    CHECK(res.complete);
    REQUIRE(res.covers.size() == 1);
    CHECK(res.covers[0] == example1_cover());
  }
  SUBCASE("example4 heuristic includes the maximal and the singleton cover") {
    CoverLimits limits;
    limits.exact = false;
    const auto res = enumerate_covers(example4(), example4_Q(), limits);
    InvariantCover two;
    two.elements = {{StateSet{0, 1}, 0}, {StateSet{2}, 1}};
    two.canonicalize();
    const auto singles = singleton_cover(example4(), example4_Q());
    CHECK(std::count(res.covers.begin(), res.covers.end(), two) == 1);
    CHECK(std::count(res.covers.begin(), res.covers.end(), singles) == 1);
  }
  SUBCASE("single self-looping state yields one singleton cover") {
    FiniteSystem sys;
    sys.num_states = 1;
    sys.num_inputs = 1;
    sys.trans = {{0}};
    CoverLimits limits;
    limits.exact = true;
    const auto res = enumerate_covers(sys, {StateSet{0}}, limits);
    REQUIRE(res.covers.size() == 1);
    CHECK(res.covers[0].elements.size() == 1);
  }
  SUBCASE("every enumerated cover validates and stays inside its maximal set") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
      const auto sys = random_system(rng, 5, 3);
      const auto Q = random_target(rng, sys);
      if (Q.members.empty()) continue;
      CoverLimits limits;
      limits.exact = true;
      limits.max_elements = 5;
      limits.node_budget = 20000;
      const auto res = enumerate_covers(sys, Q, limits);
      const auto maximal = controllable_family(sys, Q);
      for (const auto& cover : res.covers) {
        CHECK(check_invariant_cover(sys, Q, cover).ok);
        for (const auto& el : cover.elements) {
          CHECK(el.set.is_subset_of(Q.members));
          bool in_some_maximal = false;
          for (const auto& max_el : maximal)
            if (max_el.input == el.input && el.set.is_subset_of(max_el.set))
              in_some_maximal = true;
          CHECK(in_some_maximal);
        }
      }
    }
  }
  SUBCASE("budget exhaustion is reported with partial results") {
    CoverLimits limits;
    limits.exact = true;
    limits.node_budget = 3;
    const auto res = enumerate_covers(example4(), example4_Q(), limits);
    CHECK(!res.complete);
  }
}
