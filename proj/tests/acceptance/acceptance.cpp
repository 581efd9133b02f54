// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "heavysum/classify.hpp"
#include "heavysum/pathological.hpp"
#include "heavysum/runner.hpp"
#include "heavysum/scenario.hpp"
#include "heavysum/sim.hpp"
#include "heavysum/spec_format.hpp"
#include "heavysum/stopped.hpp"
#include "heavysum/tailcalc.hpp"
#include "json.hpp"

using namespace heavysum;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0, double e = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d, e);
  return buf;
}

bool in_band(double r, double lo = 0.9, double hi = 1.1) { return r >= lo && r <= hi; }

// Deviations |r - 1| strictly decreasing along the list.
bool deviation_decreasing(const std::vector<double>& ratios) {
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (!(std::abs(ratios[i] - 1) < std::abs(ratios[i - 1] - 1))) return false;
  return true;
}

ConvolutionOptions range(double x_hi) {
  ConvolutionOptions o;
  o.x_hi = x_hi;
  return o;
}

const Distribution kNegPareto = shifted(Pareto{2, 1}, -3);  // E xi = -1
double k_hat_3i = std::numeric_limits<double>::quiet_NaN();

Outcome c1() {
  const LatticeDistribution f = discretize(kNegPareto, 0.02, 1200);
  const auto tau = CountingDistribution::geometric(0.5);
  const double x_top = 997;  // tail(997) = 1e-6
  const auto xs = make_grid(x_top / 10, x_top, 10, true);
  StoppedOptions so;
  so.conv = range(1200);
  const StoppedResult r = stopped_sum_tail_exact(f, tau, xs, so);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < xs.size(); ++i) ratios.push_back(r.rows[i].estimate() / predictor_light(f, tau, xs[i]));
  const bool ok = in_band(ratios.back()) && deviation_decreasing(ratios);
  return {ok, fmt("ratio %.4f at x=997, monotone=%g, terms=%g", ratios.back(), deviation_decreasing(ratios),
                  r.n_terms)};
}

Outcome c2() {
  const Distribution F = Pareto{2.5, 1};
  const LatticeDistribution f = discretize(F, 0.02, 320);
  const auto tau = CountingDistribution::geometric(0.5);
  const double x = std::pow(1e6, 1 / 2.5);
  StoppedOptions so;
  so.conv = range(320);
  const auto xs = make_grid(x / 10, x, 8, true);
  const StoppedResult r = stopped_sum_tail_exact(f, tau, xs, so);
  const double ratio = r.rows.back().estimate() / predictor_light(f, tau, x);
  const RatioDiagnostic eq1 = condition_eq1_check(tau, F, mean(F), xs);
  return {in_band(ratio) && eq1.verdict.converging(),
          "ratio " + fmt("%.4f", ratio) + " at x=251.19, eq1 " + eq1.verdict.to_string()};
}

Outcome c3() {
  const auto neg = [](double x_max, std::int64_t n) {
    const LatticeDistribution f = discretize(kNegPareto, 0.02, x_max);
    return *bound_check_negative_mean(f, n, range(x_max)).note("K_hat");
  };
  const double k1 = neg(600, 200), k2 = neg(1200, 200);
  const auto pos = [](double x_max) {
    const LatticeDistribution f = discretize(Pareto{2.5, 1}, 0.05, x_max);
    return *bound_check_nonneg_mean(f, 2.0, 60, range(x_max)).note("sup");
  };
  const double s1 = pos(500), s2 = pos(1000);
  k_hat_3i = std::max(k1, k2);
  const bool ok = std::isfinite(k2) && std::abs(k2 / k1 - 1) < 0.05 && std::isfinite(s2) && std::abs(s2 / s1 - 1) < 0.05;
  return {ok, fmt("(i) K %.5f -> %.5f, (ii) sup %.5f -> %.5f under grid doubling", k1, k2, s1, s2)};
}

Outcome c4() {
  const LatticeDistribution f = discretize(kNegPareto, 0.02, 520);
  const double x = std::sqrt(1e5) - 3;  // tail level 1e-5
  std::vector<double> ratios;
  for_each_max(f, 100, range(520), [&](std::int64_t n, const LatticeDistribution& law) {
    if (n == 1 || n == 5 || n == 20 || n == 100) {
      const bool exact = !law.has_overflow() || law.overflow_above() >= x;
      ratios.push_back(!exact ? NAN : std::exp(law.log_tail(x)) / korshunov_maxima_approx(kNegPareto, n, x));
    }
    return true;
  });
  bool ok = ratios.size() == 4;
  for (double r : ratios) ok = ok && in_band(r);
  return {ok, fmt("ratios n=1,5,20,100: %.4f %.4f %.4f %.4f", ratios[0], ratios[1], ratios[2], ratios[3])};
}

Outcome c5() {
  const PathologicalG g = build_pathological(5);
  double worst = 0;
  for (const auto& row : sequence_report(g))
    if (row.k <= 4) worst = std::max({worst, row.identity_error, row.tail_error});
  const JkCheck j3 = verify_Jk(g, 3), j4 = verify_Jk(g, 4);
  const double r3 = *superlinearity_report(g, 3).note("ratio");
  const RatioDiagnostic d4 = superlinearity_report(g, 4);
  const double r4 = *d4.note("ratio");
  const bool ok = worst <= 1e-12 && j3.pass && j4.pass && r4 > r3 && r4 > 3 * k_hat_3i;
  return {ok, fmt("identity err %.2e, J3/J4 pass %g/%g, ratio k=3 %.4f, k=4 %.4f", worst, j3.pass, j4.pass, r3, r4) +
                  fmt(" (bracket %.4f..%.4f) vs 3K=%.4f", *d4.note("ratio_lower"), *d4.note("ratio_upper"),
                      3 * k_hat_3i)};
}

Outcome c6() {
  const PathologicalG g = build_pathological(5);
  const RatioDiagnostic d = pathological_kluppelberg(g, {3, 4});
  const double v3 = d.points[0].ratio, v4 = d.points[1].ratio;
  const double t3 = *d.note("target_3"), t4 = *d.note("target_4");
  std::vector<double> knots{0};
  for (double x = 1e-3; x < 1e7; x *= 1.02) knots.push_back(x);
  const HazardDistribution w = hazard_approximation(Weibull{0.5}, knots);
  const RatioDiagnostic dw = kluppelberg_criterion(w, make_grid(1e3, 1e6, 8, true));
  const double wv = dw.points.back().ratio;
  const bool ok = std::abs(v3 / t3 - 1) <= 0.2 && std::abs(v4 / t4 - 1) <= 0.2 && v4 > v3 && std::abs(wv - 2) <= 0.05;
  return {ok, fmt("G: %.3f (ref %.3f), %.3f (ref %.3f); Weibull(0.5): %.4f", v3, t3, v4, t4, wv)};
}

Outcome c7() {
  const Distribution F = parse_distribution("center base=(pareto alpha=2.5 xm=1)");
  const LatticeDistribution f = discretize(F, 0.02, 850);
  const RatioDiagnostic d = big_jump_range_check(f, [](double x) { return std::sqrt(x); }, {200, 400, 800},
                                                 BigJumpVariant::two_sided, range(850));
  const double a = d.points[0].ratio, b = d.points[1].ratio, c = d.points[2].ratio;
  return {a <= 0.15 && b < a && c < b, fmt("max deviation %.5f, %.5f, %.5f at x=200,400,800", a, b, c)};
}

Outcome c8() {
  const Distribution F = Pareto{2.2, 1};
  const LatticeDistribution f = discretize(F, 0.05, 250);
  const auto tau = CountingDistribution::pareto_count(1.8);
  const double x = std::pow(1e5, 1 / 2.2);
  StoppedOptions so;
  so.conv = range(250);
  const StoppedResult r = stopped_sum_tail_exact(f, tau, {x}, so);
  const double ratio = r.rows[0].estimate() / predictor_comparable(f, tau, x);
  return {in_band(ratio), fmt("ratio %.4f at x=%.2f, terms %g", ratio, x, r.n_terms)};
}

Outcome c9() {
  const LatticeDistribution base = discretize(Pareto{2.5, 1}, 1, 1000);
  const Distribution crit = parse_distribution("offspring base=(discrete base=(pareto alpha=2.5 xm=1) step=1 x_max=1000) mean=1");
  const auto& off = crit.get<LatticeDistribution>();
  // first integer x with offspring tail <= 1e-5
  double x = 1;
  while (std::exp(off.log_tail(x)) > 1e-5) x += 1;
  const double r_crit = gw_generation_tail(off, 2, {x})[0] / (2 * std::exp(off.log_tail(x)));
  const double m = base.mean();
  const double xs = 200;
  const double two_term = m * std::exp(base.log_tail(xs)) + std::exp(base.log_tail(xs / m));
  const double r_super = gw_generation_tail(base, 2, {xs})[0] / two_term;
  return {in_band(r_crit) && in_band(r_super),
          fmt("critical ratio %.4f at x=%g, supercritical two-term ratio %.4f at x=200", r_crit, x, r_super)};
}

Outcome c10() {
  const WeibullBlowup w = weibull_blowup_scenario(0.7, 0.25, 1000, 12);
  const double first = *w.ratio.note("first_x_over_10_Etau");
  const StoppingBlowup b = stopping_time_blowup_scenario(0.5, 100);
  SimOptions o;
  o.seed = 5;
  const StoppedSimResult mc = simulate_stopped_sum(b.f, b.rule, {b.x}, o);
  const double pred = mc.tau_mean.value * tail(b.f, b.x);
  const double ratio = mc.sum[0].value / pred;
  const double z = (mc.sum[0].value - pred) / mc.sum[0].std_error;
  const bool ok = std::isfinite(first) && ratio > 5 && z > 3 && mc.sum[0].valid;
  return {ok, fmt("Weibull(0.7) passes 10 E tau at x=%.1f (final ratio %.1f); H-rule ratio %.2f, z %.1f", first,
                  w.ratio.points.back().ratio, ratio, z)};
}

Outcome c11() {
  const StoppingRule rule = parse_stopping_rule("bounded_first_exceed a=5 N=10");
  SimOptions o;
  o.samples = 10000000;
  o.seed = 3;
  const std::vector<double> xs{250, 313.2};
  const StoppedSimResult mc = simulate_stopped_sum(kNegPareto, rule, xs, o);
  double zmax = 0;
  std::vector<double> zs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = mc.tau_mean.value * tail(kNegPareto, xs[i]);
    zs.push_back((mc.sum[i].value - pred) / mc.sum[i].std_error);
    zmax = std::max(zmax, std::abs(zs.back()));
  }
  return {zmax <= 3, fmt("z %.3f at x=250, %.3f at x=%.2f (E tau %.4f)", zs[0], zs[1], xs[1], mc.tau_mean.value)};
}

Outcome c12() {
  // bundled scenarios with method = both
  RunOptions ro;
  ro.write = false;
  double worst = 0;
  int cross = 0;
  for (const auto& b : bundled_scenarios()) {
    Scenario s = bundled_scenario(b.name);
    s.resolve();
    if (s.get("method") != "both") continue;
    ++cross;
    const RunResult r = run_scenario(s, ro);
    const std::string& csv = r.files.at("table.csv");
    // z is the last column
    std::size_t pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
      const std::size_t eol = csv.find('\n', pos);
      const std::string line = csv.substr(pos, eol - pos);
      worst = std::max(worst, std::abs(parse_real(line.substr(line.rfind(',') + 1), "z")));
      pos = eol + 1;
    }
  }
  // calibration: 100 seeds, exact lattice series against simulation of the same lattice
  const LatticeDistribution f = discretize(kNegPareto, 0.02, 120);
  const auto tau = CountingDistribution::geometric(0.5);
  StoppedOptions so;
  so.conv = range(120);
  const double exact = stopped_sum_tail_exact(f, tau, {10}, so).rows[0].estimate();
  StoppingRule rule;
  rule.tau = tau;
  int excursions = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SimOptions o;
    o.samples = 100000;
    o.seed = seed;
    const StoppedSimResult mc = simulate_stopped_sum(f, rule, {10}, o);
    excursions += std::abs(compare_exact(mc.sum[0], exact)) > 3;
  }
  return {worst <= 3 && excursions <= 1 && cross > 0,
          fmt("%g cross-checked scenarios, max |z| %.3f; calibration excursions %g/100", cross, worst, excursions)};
}

Outcome c13() {
  RunOptions ro;
  ro.write = false;
  int same = 0, total = 0;
  std::string bad;
  for (const auto& b : bundled_scenarios()) {
    const RunResult first = run_scenario(bundled_scenario(b.name), ro);
    const auto summary = nlohmann::json::parse(first.summary);
    const RunResult again = run_scenario(Scenario::parse(summary["config_text"].get<std::string>(), b.name), ro);
    ++total;
    if (first.files == again.files)
      ++same;
    else
      bad += " " + b.name;
  }
  return {same == total, fmt("%g/%g bundled scenarios reproduced bit-identically", same, total) + bad};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7},
      {8, c8}, {9, c9}, {10, c10}, {11, c11}, {12, c12}, {13, c13}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s  [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
