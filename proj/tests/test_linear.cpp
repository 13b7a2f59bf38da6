#include <doctest.h>

#include "ifent/entropy.hpp"
#include "ifent/errors.hpp"
#include "ifent/linear.hpp"
#include "support/paper_models.hpp"

using namespace ifent;

namespace {

ScalarPlant example2_plant() {
  ScalarPlant p;
  p.a = Rat(1, 2);
  p.w1 = -3;
  p.w2 = 3;
  p.q1 = -4;
  p.q2 = 4;
  return p;
}

ScalarPlant three_cell_plant() {
  ScalarPlant p;
  p.a = 1;
  p.w1 = -1;
  p.w2 = 1;
  p.q1 = Rat(-3, 2);
  p.q2 = Rat(3, 2);
  return p;
}

LinearBoundInput bound_input(unsigned n, Rat det, Rat q, Rat w) {
  LinearBoundInput in;
  in.n = n;
  in.abs_det_A = det;
  in.mu_Q = q;
  in.mu_W = w;
  return in;
}

}  // namespace

TEST_CASE("entropy_lower_bound") {
  SUBCASE("the scalar running example gives one bit") {
    const auto v = entropy_lower_bound(bound_input(1, Rat(1, 2), 8, 6));
    REQUIRE(v.is_finite());
    CHECK(v.exact);
    CHECK(v.arg == 2);  // log2 2 = 1
  }
  SUBCASE("mu(W) = mu(Q) forces infinite entropy") {
    const auto v = entropy_lower_bound(bound_input(1, 1, 2, 2));
    CHECK(v.kind == BoundValue::Kind::infinite);
  }
  SUBCASE("no uncertainty reduces to log2|det A|") {
    const auto v = entropy_lower_bound(bound_input(3, 8, 5, 0));
    REQUIRE(v.is_finite());
    CHECK(v.exact);
    CHECK(v.arg == 8);  // log2 8 = 3
  }
  SUBCASE("singular A yields no bound") {
    const auto v = entropy_lower_bound(bound_input(2, 0, 4, 1));
    CHECK(v.kind == BoundValue::Kind::no_bound);
  }
  SUBCASE("perfect-square measures stay exact in dimension 2") {
    // (sqrt(16)-sqrt(4))^2 = 4, arg = 3*16/4 = 12
    const auto v = entropy_lower_bound(bound_input(2, 3, 16, 4));
    REQUIRE(v.is_finite());
    CHECK(v.exact);
    CHECK(v.arg == 12);
  }
  SUBCASE("scale invariance in dimension 1") {
    for (int s : {2, 3, 7}) {
      const auto base = entropy_lower_bound(bound_input(1, Rat(1, 2), 8, 6));
      const auto scaled =
          entropy_lower_bound(bound_input(1, Rat(1, 2), 8 * s, 6 * s));
      CHECK(base.arg == scaled.arg);
    }
  }
  SUBCASE("monotone nondecreasing in mu(W)") {
    Rat prev = 0;
    for (int w = 0; w <= 7; ++w) {
      const auto v = entropy_lower_bound(bound_input(1, 2, 8, w));
      REQUIRE(v.is_finite());
      CHECK(v.arg >= prev);
      prev = v.arg;
    }
  }
  SUBCASE("violated invariants are rejected") {
    CHECK_THROWS_AS(entropy_lower_bound(bound_input(1, 1, 2, 3)), Error);
    CHECK_THROWS_AS(entropy_lower_bound(bound_input(0, 1, 2, 1)), Error);
  }
}

TEST_CASE("static_rate_lower_bound") {
  SUBCASE("the running example: ceil(2) = 2, one bit") {
    const auto v = static_rate_lower_bound(bound_input(1, Rat(1, 2), 8, 6));
    REQUIRE(v.is_finite());
    CHECK(v.arg == 2);
  }
  SUBCASE("ceiling rounds up strictly fractional arguments") {
    // arg = 1*5/2 = 5/2 -> ceil 3
    const auto v = static_rate_lower_bound(bound_input(1, 1, 5, 3));
    REQUIRE(v.is_finite());
    CHECK(v.arg == 3);
  }
  SUBCASE("a=1, muQ=3, muW=2 gives log2 3, matching the 3-cell synthesis") {
    const auto v = static_rate_lower_bound(bound_input(1, 1, 3, 2));
    REQUIRE(v.is_finite());
    CHECK(v.arg == 3);
    CHECK(synth_scalar_static(three_cell_plant()).m == 3);
  }
  SUBCASE("irrational roots are bracketed until the ceiling is pinned") {
    // n=2, det=1, muQ=2, muW=1: arg = 2/(sqrt2-1)^2 = 2(3+2*sqrt2) ~ 11.657
    const auto v = static_rate_lower_bound(bound_input(2, 1, 2, 1));
    REQUIRE(v.is_finite());
    CHECK(v.exact);
    CHECK(v.arg == 12);
  }
}

TEST_CASE("synth_scalar_static") {
  SUBCASE("the running example is reproduced bit-exactly") {
    const auto cover = synth_scalar_static(example2_plant());
    CHECK(cover.m == 2);
    CHECK(cover.d == 4);
    REQUIRE(cover.cells.size() == 2);
    CHECK(cover.cells[0] == std::pair<Rat, Rat>{-4, 0});
    CHECK(cover.cells[1] == std::pair<Rat, Rat>{0, 4});
    CHECK(cover.inputs[0] == 1);
    CHECK(cover.inputs[1] == -1);
  }
  SUBCASE("odd cell count centers the middle cell") {
    const auto cover = synth_scalar_static(three_cell_plant());
    CHECK(cover.m == 3);
    CHECK(cover.d == 1);
    REQUIRE(cover.cells.size() == 3);
    CHECK(cover.cells[0] == std::pair<Rat, Rat>{Rat(-3, 2), Rat(-1, 2)});
    CHECK(cover.cells[1] == std::pair<Rat, Rat>{Rat(-1, 2), Rat(1, 2)});
    CHECK(cover.cells[2] == std::pair<Rat, Rat>{Rat(1, 2), Rat(3, 2)});
    CHECK(cover.inputs[0] == 1);
    CHECK(cover.inputs[1] == 0);
    CHECK(cover.inputs[2] == -1);
  }
  SUBCASE("degenerate disturbance with |a| = 2: rate log2|a|") {
    ScalarPlant p;
    p.a = 2;
    p.w1 = p.w2 = 0;
    p.q1 = -1;
    p.q2 = 1;
    const auto cover = synth_scalar_static(p);
    CHECK(cover.m == 2);
    CHECK(cover.d == 1);
  }
}

TEST_CASE("verify_scalar_cover") {
  SUBCASE("synthesized covers verify") {
    CHECK(verify_scalar_cover(example2_plant(),
                              synth_scalar_static(example2_plant()))
              .ok);
    CHECK(verify_scalar_cover(three_cell_plant(),
                              synth_scalar_static(three_cell_plant()))
              .ok);
  }
  SUBCASE("a perturbed input is caught with the cell named") {
    auto cover = synth_scalar_static(example2_plant());
    cover.inputs[1] += example2_plant().delta_q();
    const auto res = verify_scalar_cover(example2_plant(), cover);
    CHECK(!res.ok);
    CHECK(res.covers);
    CHECK(!res.invariant);
    CHECK(res.failing_cell == 1);
  }
  SUBCASE("gaps in the tiling are caught") {
    auto cover = synth_scalar_static(example2_plant());
    cover.cells[0].second = -1;  // [-4,-1],[0,4] leaves (-1,0) uncovered
    CHECK(!verify_scalar_cover(example2_plant(), cover).covers);
  }
}

TEST_CASE("loss_bound_check") {
  const auto lb = entropy_lower_bound(bound_input(1, Rat(1, 2), 8, 6));
  const auto st = static_rate_lower_bound(bound_input(1, Rat(1, 2), 8, 6));
  SUBCASE("tight running example: zero loss") {
    const auto res = loss_bound_check(lb, st);
    CHECK(res.ok);
    CHECK(res.loss.arg == 1);  // log2 1 = 0
  }
  SUBCASE("one full bit of loss still satisfies the cap") {
    BoundValue zero;
    zero.arg = 1;
    zero.approx = 0;
    BoundValue one;
    one.arg = 2;
    one.approx = 1;
    const auto res = loss_bound_check(zero, one);
    CHECK(res.ok);
    CHECK(res.headroom.arg == 1);  // no slack left under the +1 bound
  }
  SUBCASE("the log2 3 instance is tight") {
    const auto lb3 = entropy_lower_bound(bound_input(1, 1, 3, 2));
    const auto st3 = static_rate_lower_bound(bound_input(1, 1, 3, 2));
    const auto res = loss_bound_check(lb3, st3);
    CHECK(res.ok);
    CHECK(res.loss.arg == 1);
  }
}

TEST_CASE("abstract_scalar") {
  SUBCASE("the running example abstracts to the two-state core") {
    const auto cover = synth_scalar_static(example2_plant());
    const auto abs = abstract_scalar(example2_plant(), cover);
    CHECK(abs.sys.num_states == 3);  // two cells and the sink
    CHECK(abs.Q.members == StateSet{0, 1});
    // each cell under its own input reaches exactly both cells
    CHECK(abs.sys.post(0, 1) == StateSet{0, 1});  // input +1 on [-4,0]
    CHECK(abs.sys.post(1, 0) == StateSet{0, 1});  // input -1 on [0,4]
    EntropyLimits limits;
    limits.tau_max = 5;
    const auto ub = invariance_entropy_ub(abs.sys, abs.Q, limits);
    CHECK(ub.ub == LogRate(Big(2), 1));
    CHECK(ub.exact);
  }
  SUBCASE("contractive plant with no disturbance collapses to a self-loop") {
    ScalarPlant p;
    p.a = Rat(1, 2);
    p.w1 = p.w2 = 0;
    p.q1 = -1;
    p.q2 = 1;
    const auto cover = synth_scalar_static(p);
    REQUIRE(cover.m == 1);
    const auto abs = abstract_scalar(p, cover);
    CHECK(abs.sys.num_states == 2);
    CHECK(abs.sys.post(0, 0) == StateSet{0});
    EntropyLimits limits;
    limits.tau_max = 4;
    const auto ub = invariance_entropy_ub(abs.sys, abs.Q, limits);
    CHECK(ub.ub.is_zero());
  }
  SUBCASE("the 3-cell instance yields entropy log2 3") {
    const auto cover = synth_scalar_static(three_cell_plant());
    const auto abs = abstract_scalar(three_cell_plant(), cover);
    CHECK(abs.sys.num_states == 4);
    EntropyLimits limits;
    limits.tau_max = 4;
    const auto ub = invariance_entropy_ub(abs.sys, abs.Q, limits);
    CHECK(ub.ub == LogRate(Big(3), 1));
  }
}

TEST_CASE("random rational plants: synthesis verifies and attains the bound") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    ScalarPlant p;
    const auto rat = [&](int lo, int hi, int den_max) {
      const long num = lo + long(rng() % (hi - lo + 1));
      const long den = 1 + long(rng() % den_max);
      return Rat(num, den);
    };
    p.a = rat(-8, 8, 4);
    if (p.a == 0) p.a = 1;
    p.w1 = rat(-6, 0, 4);
    p.w2 = p.w1 + rat(0, 5, 4);
    p.q1 = p.w1 - (rat(0, 4, 4) + Rat(1, 5));
    p.q2 = p.w2 + (rat(0, 4, 4) + Rat(1, 5));
    const auto cover = synth_scalar_static(p);
    CHECK(verify_scalar_cover(p, cover).ok);
    LinearBoundInput in;
    in.n = 1;
    in.abs_det_A = p.a < 0 ? Rat(-p.a) : p.a;
    in.mu_Q = p.delta_q();
    in.mu_W = p.delta_w();
    const auto st = static_rate_lower_bound(in);
    REQUIRE(st.is_finite());
    CHECK(st.arg == Rat(cover.m));  // the synthesis attains the bound
    const auto lb = entropy_lower_bound(in);
    const auto loss = loss_bound_check(lb, st);
    CHECK(loss.ok);
  }
}
