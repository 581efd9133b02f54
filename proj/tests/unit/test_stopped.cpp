#include <cmath>

#include "doctest.h"
#include "heavysum/errors.hpp"
#include "heavysum/stopped.hpp"
#include "heavysum/tailcalc.hpp"

using namespace heavysum;

namespace {
const LatticeDistribution two_point = LatticeDistribution::from_masses(1.0, 1, {0.5, 0.0, 0.5});
}

TEST_CASE("counting laws") {
  const auto g = CountingDistribution::geometric(0.5);
  CHECK(g.mean() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g.tail(3) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(g.tail(400) == doctest::Approx(std::pow(0.5, 400)).epsilon(1e-9));
  CHECK(CountingDistribution::degenerate(3).mean() == 3.0);
  CHECK_THROWS_AS((void)CountingDistribution::pareto_count(0.8).mean(), DivergenceError);
  const auto p = CountingDistribution::pareto_count(1.8);
  CHECK(p.mean() > 1.0);
  CHECK(std::isfinite(p.mean()));
  CHECK(parse_counting("geometric p=0.25 min=1").mean() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)parse_counting("geometric p=1.5"), ValidationError);
}

TEST_CASE("degenerate counts") {
  const std::vector<double> xs{0.5, 1.5, 2.5, 3.0, 5.0};
  const StoppedResult one = stopped_sum_tail_exact(two_point, CountingDistribution::degenerate(1), xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(one.rows[i].estimate() == doctest::Approx(std::exp(two_point.log_tail(xs[i]))).epsilon(1e-14));
  const StoppedResult two = stopped_sum_tail_exact(two_point, CountingDistribution::degenerate(2), {3.0});
  CHECK(two.rows[0].estimate() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(two.rows[0].remainder_hi == 0.0);
}

TEST_CASE("geometric count, Pareto(2.5) steps") {
  const LatticeDistribution f = discretize(Pareto{2.5, 1}, 0.05, 4000);
  const auto tau = CountingDistribution::geometric(0.5);
  StoppedOptions o;
  o.conv.x_hi = 4000;
  const std::vector<double> xs{100, 300, 1000, 3000};
  const StoppedResult r = stopped_sum_tail_exact(f, tau, xs, o);
  double prev = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dev = std::abs(r.rows[i].estimate() / predictor_light(f, tau, xs[i]) - 1);
    CHECK(dev < prev);
    prev = dev;
    CHECK(r.rows[i].remainder_hi - r.rows[i].remainder_lo <= 1e-3 * r.rows[i].partial);
  }
  CHECK(prev < 0.05);
}

TEST_CASE("maxima of stopped sums") {
  const LatticeDistribution f = discretize(Pareto{2.5, 1}, 0.1, 300);
  StoppedOptions o;
  o.conv.x_hi = 300;
  const auto tau = CountingDistribution::geometric(0.5);
  const StoppedResult a = stopped_sum_tail_exact(f, tau, {20, 80}, o);
  const StoppedResult b = stopped_max_tail_exact(f, tau, {20, 80}, o);
  for (int i = 0; i < 2; ++i) CHECK(a.rows[i].estimate() == doctest::Approx(b.rows[i].estimate()).epsilon(1e-3));
  const StoppedResult c = stopped_max_tail_exact(f, CountingDistribution::degenerate(1), {20}, o);
  CHECK(c.rows[0].estimate() == doctest::Approx(std::exp(f.log_tail(20))).epsilon(1e-12));
}

TEST_CASE("predictors") {
  const auto g = CountingDistribution::geometric(0.5);
  CHECK(predictor_light(Pareto{2, 1}, g, 10) == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(predictor_light(Pareto{2, 1}, CountingDistribution::degenerate(1), 10) == doctest::Approx(0.01));
  CHECK(predictor_comparable(Pareto{2, 1}, CountingDistribution::degenerate(3), 100) ==
        doctest::Approx(predictor_light(Pareto{2, 1}, CountingDistribution::degenerate(3), 100)));
  const auto t = CountingDistribution::pareto_count(1.5);
  double prev = 0;
  for (double x : {1e2, 1e3, 1e4}) {
    const double second = predictor_comparable(Pareto{2.5, 1}, t, x) - predictor_light(Pareto{2.5, 1}, t, x);
    const double r = second / predictor_light(Pareto{2.5, 1}, t, x);
    CHECK(r > prev);
    prev = r;
  }
  CHECK_THROWS_AS((void)predictor_comparable(shifted(Pareto{2, 1}, -3), g, 10), PreconditionError);
}

TEST_CASE("tail conditions on tau") {
  const std::vector<double> xs{10, 30, 100, 300, 1000, 3000};
  CHECK(condition_eq1_check(CountingDistribution::geometric(0.5), Pareto{2.5, 1}, 2, xs).verdict.converging());
  CHECK(condition_eq1_check(CountingDistribution::pareto_count(1.5), Pareto{2.5, 1}, 2, xs).verdict.diverging());
  CHECK(condition_series_check(CountingDistribution::geometric(0.5), Pareto{2, 1}, 3, 4096).verdict.converging());
  CHECK(condition_series_check(CountingDistribution::weibull_count(0.5, 1.0), Pareto{2, 1}, 3, 4096)
            .verdict.converging());
  CHECK(condition_series_check(CountingDistribution::pareto_count(2.0), Weibull{0.5}, 3, 4096).verdict.diverging());
  CHECK(condition_series_check(CountingDistribution::degenerate(4), Pareto{2, 1}, 3, 64).verdict.converging());
}

TEST_CASE("liminf floor") {
  const LatticeDistribution f = discretize(Pareto{2.5, 1}, 0.1, 1000);
  const auto tau = CountingDistribution::geometric(0.5);
  const RatioDiagnostic d = liminf_floor_check(f, tau, {30, 100, 300, 900});
  CHECK(*d.note("min_upper_half") >= 2.0 * 0.98);
}

TEST_CASE("Galton-Watson generations") {
  const LatticeDistribution off = LatticeDistribution::from_masses(1.0, 0, {0.3, 0.4, 0.2, 0.1});
  const std::vector<double> xs{0.5, 1.5, 2.5, 4.5};
  const auto g1 = gw_generation_tail(off, 1, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(g1[i] == doctest::Approx(std::exp(off.log_tail(xs[i]))));
  const auto g2 = gw_generation_tail(off, 2, xs);
  StoppedOptions o;
  o.conv.x_hi = 9;
  const StoppedResult s = stopped_sum_tail_exact(off, CountingDistribution::from_masses({0.3, 0.4, 0.2, 0.1}), xs, o);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(g2[i] == doctest::Approx(s.rows[i].estimate()).epsilon(1e-12));
  const LatticeDistribution ones = LatticeDistribution::from_masses(1.0, 1, {1.0});
  const auto g3 = gw_generation_tail(ones, 3, {0.5, 1.0, 2.0});
  CHECK(g3[0] == doctest::Approx(1.0));
  CHECK(g3[1] == 0.0);
  CHECK(g3[2] == 0.0);
}
