#include <cmath>

#include "doctest.h"
#include "heavysum/errors.hpp"
#include "heavysum/tailcalc.hpp"

using namespace heavysum;

namespace {
const LatticeDistribution two_point = LatticeDistribution::from_masses(1.0, 1, {0.5, 0.0, 0.5});
}

TEST_CASE("conv_power small oracle") {
  const TailGrid t = conv_power_tail(two_point, 2);
  CHECK(t.tail_at(3.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(t.tail_at(2.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(t.tail_at(4.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(t.tail_at(6.0) == 0.0);
}

TEST_CASE("n = 1 is the identity") {
  const LatticeDistribution f = discretize(Pareto{2.5, 1}, 0.1, 100);
  const LatticeDistribution g = conv_power(f, 1);
  for (double x : {1.0, 5.0, 50.0}) CHECK(g.log_tail(x) == f.log_tail(x));
  CHECK_THROWS_AS((void)conv_power(f, 0), ValidationError);
}

TEST_CASE("triple convolution of Pareto(2.5) approaches 3 tail") {
  const LatticeDistribution f = discretize(Pareto{2.5, 1}, 0.05, 2000);
  ConvolutionOptions o;
  o.x_hi = 2000;
  const LatticeDistribution s3 = conv_power(f, 3, o);
  double prev = 10;
  for (double x : {50.0, 200.0, 800.0}) {
    const double dev = std::abs(std::exp(s3.log_tail(x) - f.log_tail(x)) / 3.0 - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("binary powering agrees with sequential convolution") {
  const LatticeDistribution f = discretize(Pareto{2.2, 1}, 0.25, 300);
  ConvolutionOptions o;
  o.x_hi = 300;
  std::optional<LatticeDistribution> seq;
  for_each_power(f, 7, o, [&](std::int64_t n, const LatticeDistribution& law) {
    if (n == 7) seq = law;
    return true;
  });
  const LatticeDistribution fast = conv_power(f, 7, o);
  for (double x : {10.0, 40.0, 150.0, 299.0})
    CHECK(std::exp(fast.log_tail(x)) == doctest::Approx(std::exp(seq->log_tail(x))).epsilon(1e-10));
}

TEST_CASE("maxima") {
  // +-1 steps: M_2 > 0 exactly when the first step is up
  const LatticeDistribution pm = LatticeDistribution::from_masses(1.0, -1, {0.5, 0.0, 0.5});
  const LatticeDistribution m2 = max_partial_sum(pm, 2);
  CHECK(std::exp(m2.log_tail(0.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::exp(m2.log_tail(1.0)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::exp(m2.log_tail(2.0)) == 0.0);
  const LatticeDistribution f = discretize(Pareto{3, 1}, 0.5, 60);
  const TailGrid a = max_partial_sum_tail(f, 4), b = conv_power_tail(f, 4);
  for (double x : {2.0, 10.0, 30.0}) CHECK(a.tail_at(x) == b.tail_at(x));
}

TEST_CASE("integrated-tail maxima approximation") {
  const Distribution f = shifted(Pareto{2, 1}, -3);
  CHECK(korshunov_maxima_approx(f, 1, 20) <= tail(f, 20));
  // 1 / ((y + 3)) integrated: tail(y) = (y + 3)^-2
  CHECK(korshunov_maxima_approx(f, 10, 50) == doctest::Approx(1.0 / 53 - 1.0 / 63).epsilon(1e-9));
  CHECK(korshunov_maxima_approx(f, 100000000, 50) == doctest::Approx(1.0 / 53).epsilon(1e-6));
  CHECK_THROWS_AS((void)korshunov_maxima_approx(Pareto{2, 1}, 3, 10), PreconditionError);

  const LatticeDistribution lat = discretize(f, 0.05, 200);
  ConvolutionOptions o;
  o.x_hi = 200;
  const double dp = max_partial_sum_tail(lat, 10, o).tail_at(50);
  const double r = dp / korshunov_maxima_approx(f, 10, 50);
  CHECK(r > 0.8);
  CHECK(r < 1.2);
}

TEST_CASE("Kesten ratios") {
  // strict tails: P{S_2 > 2} = 0.75, P{X > 2} = 0.5
  const RatioDiagnostic d = kesten_ratio_table(two_point, 2, {2.0});
  CHECK(d.points.front().ratio == 1.0);
  CHECK(d.points.back().ratio == doctest::Approx(1.5));
  CHECK(*d.note("sup_ratio_over_n") >= 1.0);
}

TEST_CASE("uniform bounds") {
  const LatticeDistribution neg = discretize(shifted(Pareto{2, 1}, -3), 0.05, 200);
  ConvolutionOptions o;
  o.x_hi = 200;
  const RatioDiagnostic a = bound_check_negative_mean(neg, 40, o);
  CHECK(a.verdict.kind == VerdictKind::bounded_by);
  CHECK(a.points.front().ratio >= 1.0 - 1e-12);
  CHECK(std::isfinite(*a.note("K_hat")));

  const LatticeDistribution pos = discretize(Pareto{2.5, 1}, 0.05, 200);
  const RatioDiagnostic b = bound_check_nonneg_mean(pos, 2.0, 20, o);
  CHECK(b.points.front().ratio * 1.0 <= 1.0 / std::exp(pos.log_tail(2.0)) + 1e-9);
  CHECK_THROWS_AS((void)bound_check_nonneg_mean(pos, 1.5, 5, o), PreconditionError);
  CHECK_THROWS_AS((void)bound_check_negative_mean(pos, 5, o), PreconditionError);
}

TEST_CASE("one big jump range") {
  const LatticeDistribution f = discretize(shifted(Pareto{2.5, 1}, -5.0 / 3.0), 0.02, 300);
  ConvolutionOptions o;
  o.x_hi = 300;
  const auto h = [](double x) { return std::sqrt(x); };
  const RatioDiagnostic d = big_jump_range_check(f, h, {200.0}, BigJumpVariant::two_sided, o);
  CHECK(d.points[0].ratio < 0.15);
  const RatioDiagnostic one = big_jump_range_check(f, [](double) { return 1.0; }, {50.0, 100.0},
                                                   BigJumpVariant::two_sided, o);
  for (const auto& p : one.points) CHECK(p.ratio == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cell budget is enforced") {
  const LatticeDistribution f = discretize(Pareto{2, 1}, 0.001, 1000);
  ConvolutionOptions o;
  o.x_hi = 1000;
  o.cell_budget = 1000;
  CHECK_THROWS_AS((void)conv_power(f, 2, o), ResourceError);
}
