#include <cmath>
#include <limits>
#include <map>

#include "doctest.h"
#include "heavysum/errors.hpp"
#include "heavysum/sim.hpp"
#include "heavysum/stopped.hpp"

using namespace heavysum;

namespace {

// Exact P{S_tau > x} for tau = min(first n with S_n > a, N) on an integer lattice,
// by forward enumeration of the unstopped mass.
std::map<std::int64_t, double> bounded_rule_exact(const LatticeDistribution& f, double a, int N) {
  std::map<std::int64_t, double> alive{{0, 1.0}}, stopped;
  for (int n = 1; n <= N; ++n) {
    std::map<std::int64_t, double> next;
    for (const auto& [s, p] : alive)
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double q = std::exp(f.log_mass()[i]);
        if (q == 0) continue;
        const std::int64_t t = s + f.offset() + static_cast<std::int64_t>(i);
        if (t > a || n == N)
          stopped[t] += p * q;
        else
          next[t] += p * q;
      }
    // overflow cell: beyond every x
    if (f.has_overflow())
      for (const auto& [s, p] : alive) stopped[std::numeric_limits<std::int64_t>::max()] += p * std::exp(f.overflow_log_mass());
    alive.swap(next);
  }
  return stopped;
}

double tail_of(const std::map<std::int64_t, double>& law, double x) {
  double t = 0;
  for (const auto& [s, p] : law)
    if (s > x) t += p;
  return t;
}

}  // namespace

TEST_CASE("independent tau = 1 matches the tail") {
  StoppingRule r;
  r.tau = CountingDistribution::degenerate(1);
  SimOptions o;
  o.samples = 200000;
  const auto res = simulate_stopped_sum(Pareto{2, 1}, r, {2.0, 5.0}, o);
  CHECK(std::abs(compare_exact(res.sum[0], 0.25)) < 3);
  CHECK(std::abs(compare_exact(res.sum[1], 0.04)) < 3);
  CHECK(res.tau_mean.value == 1.0);
}

TEST_CASE("first nonpositive exit never exceeds x > 0") {
  const StoppingRule r = parse_stopping_rule("first_nonpositive");
  SimOptions o;
  o.samples = 100000;
  const auto res = simulate_stopped_sum(shifted(Pareto{2, 1}, -3), r, {0.5, 10}, o);
  CHECK(res.sum[0].value == 0.0);
  CHECK(res.sum[1].value == 0.0);
}

TEST_CASE("bounded first-exceed rule against enumeration") {
  const LatticeDistribution f = discretize(shifted(Pareto{2, 1}, -3), 1.0, 200);
  const auto exact = bounded_rule_exact(f, 5, 10);
  const StoppingRule r = parse_stopping_rule("bounded_first_exceed a=5 N=10");
  SimOptions o;
  o.samples = 2000000;
  o.seed = 5;
  const std::vector<double> xs{8, 20, 60};
  const auto res = simulate_stopped_sum(f, r, xs, o);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(compare_exact(res.sum[i], tail_of(exact, xs[i]))) < 3);
}

TEST_CASE("determinism and thread independence") {
  StoppingRule r;
  r.tau = CountingDistribution::geometric(0.5);
  SimOptions o;
  o.samples = 150000;
  o.seed = 42;
  const auto a = simulate_stopped_sum(Pareto{2.5, 1}, r, {5, 20}, o);
  const auto b = simulate_stopped_sum(Pareto{2.5, 1}, r, {5, 20}, o);
  CHECK(a.sum[1].value == b.sum[1].value);
  CHECK(a.sum[1].std_error == b.sum[1].std_error);
  o.seed = 43;
  const auto c = simulate_stopped_sum(Pareto{2.5, 1}, r, {5, 20}, o);
  CHECK(a.sum[0].value != c.sum[0].value);
}

TEST_CASE("step cap breaches invalidate the estimate") {
  StoppingRule r;
  r.tau = CountingDistribution::degenerate(50);
  SimOptions o;
  o.samples = 10000;
  o.step_cap = 10;
  const auto res = simulate_stopped_sum(Pareto{2, 1}, r, {100}, o);
  CHECK_FALSE(res.sum[0].valid);
  CHECK(res.truncated == 10000);
}

TEST_CASE("Galton-Watson simulation") {
  const LatticeDistribution ones = LatticeDistribution::from_masses(1.0, 1, {1.0});
  SimOptions o;
  o.samples = 10000;
  const auto e = simulate_gw(ones, 3, {1.0, 2.0}, o);
  CHECK(e[0].value == 0.0);
  const LatticeDistribution off = LatticeDistribution::from_masses(1.0, 0, {0.3, 0.4, 0.2, 0.1});
  const std::vector<double> xs{0.5, 2.5, 5.5};
  const auto exact = gw_generation_tail(off, 2, xs);
  o.samples = 400000;
  const auto mc = simulate_gw(off, 2, xs, o);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(compare_exact(mc[i], exact[i])) < 3);
}

TEST_CASE("compare_exact arithmetic") {
  Estimate e;
  e.value = 0.1;
  e.std_error = 0.01;
  CHECK(compare_exact(e, 0.1) == 0.0);
  e.value = 0.12;
  CHECK(compare_exact(e, 0.1) == doctest::Approx(2.0));
}

TEST_CASE("H function") {
  CHECK(first_increment_h(0, 0.5, 1) == 0);
  CHECK(first_increment_h(2, 0.5, 1) == 0);
  const double y = 1000;
  CHECK(first_increment_h(y, 0.5, 1) == static_cast<std::int64_t>(std::ceil(std::sqrt(y) * std::log1p(y))));
}

TEST_CASE("counting draws") {
  const auto g = CountingDistribution::geometric(0.5);
  CounterStream s(9);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(sample_counting(g, s));
  CHECK(std::abs(sum / n - 2.0) < 3 * std::sqrt(2.0 / n));
}

TEST_CASE("rule parsing") {
  CHECK_THROWS_AS((void)parse_stopping_rule("bounded_first_exceed a=5"), ValidationError);
  CHECK_THROWS_AS((void)parse_stopping_rule("whenever"), ValidationError);
  CHECK(parse_stopping_rule("independent tau=(geometric p=0.5)").tau->mean() == doctest::Approx(2.0));
}
