#include <cmath>

#include "doctest.h"
#include "heavysum/distribution.hpp"
#include "heavysum/errors.hpp"
#include "heavysum/pathological.hpp"
#include "heavysum/rng.hpp"
#include "heavysum/spec_format.hpp"

using namespace heavysum;

TEST_CASE("closed-form tails") {
  CHECK(tail(Pareto{2, 1}, 10) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(tail(Weibull{0.5, 1}, 4) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(tail(Pareto{2, 1}, 0.5) == 1.0);
  CHECK(log_tail(Exponential{1}, 1e6) == doctest::Approx(-1e6));
}

TEST_CASE("pathological tail at t_k") {
  const PathologicalG g = build_pathological(5);
  for (int k = 1; k <= 4; ++k)
    CHECK(log_tail(g.view, g.t[k]) == doctest::Approx(-std::sqrt(g.t[k])).epsilon(1e-12));
}

TEST_CASE("means") {
  CHECK(mean(Pareto{2, 1}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mean(LatticeDistribution::from_masses(1.0, 1, {0.5, 0.0, 0.5})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)mean(Pareto{1, 1}), DivergenceError);
  CHECK(mean(Exponential{2}) == doctest::Approx(0.5));
}

TEST_CASE("integrated tail") {
  CHECK(integrated_tail(Exponential{1}, 0, kInf) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrated_tail(Weibull{0.5}, 3, 3) == 0.0);
  CHECK(integrated_tail(Pareto{2, 1}, 1, 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("truncated pathological mean and segment integrals") {
  const PathologicalG g = build_pathological(5);
  const double m = integrated_tail(g.view, 0.0, g.t[5]);
  CHECK(m > 1.0);
  CHECK(m < 4.0);
  for (int k = 2; k <= 4; ++k) {
    const double seg = integrated_tail(g.view, g.t[k], g.t[k + 1]);
    CHECK(seg * g.R[k] == doctest::Approx(1.0).epsilon(0.35));
  }
}

TEST_CASE("sampling") {
  CounterStream s(11);
  const LatticeDistribution two = LatticeDistribution::from_masses(1.0, 1, {0.5, 0.0, 0.5});
  const int n = 1000000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += sample(two, s);
  CHECK(std::abs(sum / n - 2.0) < 0.003);

  int hits = 0;
  for (int i = 0; i < n; ++i) hits += sample(Weibull{0.5}, s) > 4.0;
  CHECK(std::abs(hits / double(n) - 0.1353) < 0.0011);
}

TEST_CASE("hazard inversion is exact") {
  const HazardDistribution h({0.0, 1.0, 3.0}, {0.0, 0.5, 1.5}, 0.25);
  CounterStream s(3);
  for (int i = 0; i < 1000; ++i) {
    CounterStream copy = s;
    const double u = copy.uniform();
    const double x = sample(Distribution(h), s);
    CHECK(log_tail(Distribution(h), x) == doctest::Approx(std::log(u)).epsilon(1e-10));
  }
}

TEST_CASE("discretize") {
  const LatticeDistribution e = discretize(Exponential{1}, std::log(2.0), 60);
  for (int k = 0; k < 6; ++k) {
    const double x = std::log(2.0) * (k + 1);
    CHECK(std::exp(e.log_tail(x - 1e-9)) == doctest::Approx(std::exp(-(x - std::log(2.0)))).epsilon(1e-9));
  }
  const LatticeDistribution p = discretize(Pareto{2, 1}, 0.01, 1000);
  const double t10 = std::exp(p.log_tail(10.0));
  CHECK(t10 >= 0.01 * (1 - 1e-12));
  CHECK(t10 <= 0.01 * 1.002);
  // off-grid x: error at most step * density
  const double x = 7.3 + 1.0 / 3.0 * 1e-4;
  const double density = 0.5 / std::sqrt(x) * std::exp(-std::sqrt(x));
  for (double step : {0.1, 0.01, 0.001}) {
    const double err = std::abs(std::exp(discretize(Weibull{0.5}, step, 200).log_tail(x)) - tail(Weibull{0.5}, x));
    CHECK(err <= step * density * 1.01);
  }
}

TEST_CASE("spec parsing") {
  CHECK(parse_distribution("pareto alpha=2 xm=1").holds<Pareto>());
  CHECK(parse_distribution("shift base=(pareto alpha=2 xm=1) by=-3").holds<ShiftedDistribution>());
  CHECK(mean(parse_distribution("center base=(pareto alpha=2.5 xm=1)")) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_WITH_AS((void)parse_distribution("pareto alpha=-1"), doctest::Contains("alpha"), ValidationError);
  CHECK_THROWS_AS((void)parse_distribution("pareto alpha=2 beta=3"), ValidationError);
  CHECK_THROWS_AS((void)parse_distribution("lattice step=1 mass=[0.5, 0.4]"), ValidationError);
  const Distribution d = parse_distribution("weibull beta=0.5 scale=2");
  CHECK(format_distribution(parse_distribution(format_distribution(d))) == format_distribution(d));
}
