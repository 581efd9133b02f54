#include <cmath>

#include "doctest.h"
#include "heavysum/errors.hpp"
#include "heavysum/pathological.hpp"

using namespace heavysum;

TEST_CASE("R, t, r recursion") {
  const PathologicalG g = build_pathological(5);
  CHECK(g.R[0] == 0.0);
  CHECK(g.R[1] == 1.0);
  CHECK(g.R[2] == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(g.R[3] == doctest::Approx(5.574942).epsilon(1e-6));
  CHECK(g.R[4] == doctest::Approx(47.307067).epsilon(1e-7));
  CHECK(g.t[4] == doctest::Approx(2237.9586).epsilon(1e-7));
  for (int k = 1; k <= 5; ++k) CHECK(g.t[k] == doctest::Approx(g.R[k] * g.R[k]).epsilon(1e-15));
  for (const auto& row : sequence_report(g)) {
    if (row.k > 4) continue;
    CHECK(row.identity_error < 1e-12);
    CHECK(row.tail_error < 1e-12);
  }
  CHECK_THROWS_AS((void)build_pathological(0), ValidationError);
}

TEST_CASE("J_k windows") {
  const PathologicalG g = build_pathological(5);
  for (int k : {2, 3, 4}) {
    const JkCheck j = verify_Jk(g, k);
    CHECK(j.pass);
    CHECK(j.value >= j.bound);
  }
  CHECK_THROWS_AS((void)verify_Jk(g, 1), ValidationError);
}

TEST_CASE("hazard window density is additive") {
  const PathologicalG g = build_pathological(5);
  const double x = g.t[3];
  const double whole = hazard_window_density(g.view, x, 1.0, x - 1.0);
  const double split = hazard_window_density(g.view, x, 1.0, 10.0) + hazard_window_density(g.view, x, 10.0, x - 1.0);
  CHECK(whole == doctest::Approx(split).epsilon(1e-10));
}

TEST_CASE("two-jump lower bound is a probability") {
  const PathologicalG g = build_pathological(5);
  const double v = two_jump_lower_bound(g, g.n[3], g.x[3]);
  CHECK(v > 0);
  CHECK(v < 1);
}

TEST_CASE("superlinearity grows with k") {
  const PathologicalG g = build_pathological(5);
  const RatioDiagnostic d3 = superlinearity_report(g, 3);
  CHECK(*d3.note("ratio_lower") <= *d3.note("ratio"));
  CHECK(*d3.note("ratio") <= *d3.note("ratio_upper"));
  CHECK_THROWS_AS((void)superlinearity_report(g, 5), ValidationError);
}

TEST_CASE("Kluppelberg values along t_k") {
  const PathologicalG g = build_pathological(5);
  const RatioDiagnostic d = pathological_kluppelberg(g, {3, 4});
  CHECK(d.points[1].ratio > d.points[0].ratio);
  CHECK(*d.note("target_4") == doctest::Approx(std::exp(g.R[3]) / (g.R[3] * g.R[3])));
}

TEST_CASE("stopping-time blow-up construction") {
  const StoppingBlowup b = stopping_time_blowup_scenario(0.5, 100);
  CHECK(b.lower_bound_ratio > 1);
  CHECK(b.rule.kind == StoppingRule::Kind::h_of_first_increment);
  CHECK_THROWS_AS((void)weibull_blowup_scenario(0.4), ValidationError);
}
