#include <cmath>

#include "doctest.h"
#include "heavysum/classify.hpp"
#include "heavysum/errors.hpp"
#include "heavysum/pathological.hpp"

using namespace heavysum;

namespace {
std::vector<double> geo(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, i / double(n - 1)));
  return g;
}
}  // namespace

TEST_CASE("long-tailed ratios") {
  CHECK(long_tailed_profile(Pareto{2, 1}, 1, {100}).points[0].ratio ==
        doctest::Approx(std::pow(100.0 / 101.0, 2)).epsilon(1e-12));
  CHECK(long_tailed_profile(Weibull{0.5}, 1, {400}).points[0].ratio ==
        doctest::Approx(std::exp(-(std::sqrt(401.0) - 20))).epsilon(1e-12));
  const RatioDiagnostic e = long_tailed_profile(Exponential{1}, 1, geo(10, 1000, 8));
  for (const auto& p : e.points) CHECK(p.ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK_FALSE(e.verdict.converging());
  CHECK(long_tailed_profile(Weibull{0.5}, 1, geo(100, 1e6, 8)).verdict.converging());
}

TEST_CASE("dominated variation") {
  for (const auto& p : dominated_variation_profile(Pareto{2.5, 1}, geo(10, 1e4, 6)).points)
    CHECK(p.ratio == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-12));
  CHECK(dominated_variation_profile(Weibull{0.5}, geo(10, 1e4, 8)).verdict.diverging());
  CHECK(dominated_variation_profile(LogNormal{0, 1}, geo(std::exp(1.0), std::exp(6.0), 8)).verdict.diverging());
  CHECK(dominated_variation_profile(Pareto{2.5, 1}, geo(10, 1e4, 6)).verdict.kind == VerdictKind::bounded_by);
}

TEST_CASE("intermediate regular variation") {
  const IrvProfile p = irv_profile(Pareto{2, 1}, {0.2, 0.1, 0.05, 0.02, 0.01}, geo(10, 1e4, 8));
  for (const auto& [eps, v] : p.rows) CHECK(v == doctest::Approx(std::pow(1 - eps, -2.0)).epsilon(1e-12));
  CHECK(p.verdict.converging());
  const IrvProfile w = irv_profile(Weibull{0.5}, {0.1}, {1e4});
  CHECK(w.rows[0].second == doctest::Approx(std::exp(100 * (1 - std::sqrt(0.9)))).epsilon(1e-9));
}

TEST_CASE("self-convolution ratio") {
  const LatticeDistribution p = discretize(Pareto{2, 1}, 0.05, 700);
  const RatioDiagnostic d = subexp_ratio_profile(p, {300});
  CHECK(std::abs(d.points[0].ratio - 2.0) < 0.1);
  const LatticeDistribution e = discretize(Exponential{1}, 0.01, 80);
  const RatioDiagnostic de = subexp_ratio_profile(e, {10, 20, 30, 40, 50, 60});
  CHECK(de.verdict.diverging());
  CHECK(de.points.back().ratio == doctest::Approx(61.0).epsilon(0.02));
  CHECK_THROWS_AS((void)subexp_ratio_profile(LatticeDistribution::from_masses(1.0, 0, {0.5, 0.5}), {3.0}),
                  ValidationError);
}

TEST_CASE("S* integral") {
  CHECK(positive_tail_integral(Pareto{3, 1}) == doctest::Approx(1.5).epsilon(1e-10));
  const RatioDiagnostic d = sstar_integral_profile(Pareto{3, 1}, {500});
  CHECK(d.points[0].ratio == doctest::Approx(3.0).epsilon(0.02));
  CHECK(sstar_integral_profile(Weibull{0.5}, geo(1e3, 1e7, 8)).verdict.converging());
}

TEST_CASE("Pitman criterion") {
  const PitmanResult w = pitman_criterion(Weibull{0.5}, 1e8);
  CHECK(w.integral == doctest::Approx(2.0).epsilon(0.01));
  // constant hazard: integrand 1, the integral grows like T
  const PitmanResult e = pitman_criterion(Exponential{1}, 100);
  CHECK(e.integral == doctest::Approx(100).epsilon(1e-6));
  CHECK_FALSE(e.profile.verdict.converging());
  const PathologicalG g = build_pathological(5);
  const PitmanResult pg = pitman_criterion(g.view, g.t[5]);
  CHECK(std::isfinite(pg.integral));
}

TEST_CASE("Kluppelberg criterion") {
  std::vector<double> knots{0};
  for (double x = 0.01; x < 1e7; x *= 1.05) knots.push_back(x);
  const HazardDistribution w = hazard_approximation(Weibull{0.5}, knots);
  const RatioDiagnostic d = kluppelberg_criterion(w, geo(1e3, 1e6, 8));
  CHECK(d.points.back().ratio == doctest::Approx(2.0).epsilon(0.025));
  const PathologicalG g = build_pathological(5);
  const RatioDiagnostic pg = kluppelberg_criterion(g.view, {std::nextafter(g.t[3], 0.0), std::nextafter(g.t[4], 0.0)});
  CHECK(pg.points[1].ratio > pg.points[0].ratio);
}

TEST_CASE("h function and window integral") {
  const auto h = find_h_function(Weibull{0.5});
  for (double x : {1e3, 1e5}) {
    const double r = 0.5 / std::sqrt(x);
    CHECK(h(x) * r < 1.0);
    CHECK(tail(Weibull{0.5}, x + h(x)) / tail(Weibull{0.5}, x) > 0.3);
  }
  const auto hp = find_h_function(Pareto{2, 1});
  CHECK(tail(Pareto{2, 1}, 1e4 + hp(1e4)) / tail(Pareto{2, 1}, 1e4) > 0.95);
  CHECK(hstar_window_integral(Pareto{3, 1}, [](double x) { return x / 2; }, 100) == 0.0);
  CHECK(hstar_window_integral(Pareto{3, 1}, [](double x) { return std::sqrt(x); }, 1e4) < 0.05);
  CHECK_THROWS_AS((void)find_h_function(Exponential{1}), InapplicableError);
}

TEST_CASE("classification report") {
  const ClassificationReport r = classify_distribution(Pareto{2.5, 1});
  bool saw_long = false;
  for (const auto& c : r.classes)
    if (c.name == "long_tailed") {
      saw_long = true;
      CHECK(c.verdict.converging());
    }
  CHECK(saw_long);
}
