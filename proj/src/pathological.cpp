#include "heavysum/pathological.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "heavysum/classify.hpp"
#include "heavysum/errors.hpp"
#include "heavysum/spec_format.hpp"
#include "heavysum/tailcalc.hpp"

namespace heavysum {

Distribution PathologicalG::shifted_law() const { return shifted(Distribution(view), -2.0 * b); }

PathologicalG build_pathological(int k_max) {
  if (k_max < 1) throw ValidationError("pathological: k_max must be >= 1");
  if (k_max > 5) throw ValidationError("pathological: k_max must be <= 5 (R_6 overflows a double)");
  PathologicalG g;
  g.k_max = k_max;
  g.R = {0.0, 1.0};
  for (int k = 1; k < k_max; ++k) g.R.push_back(std::exp(g.R[k]) / g.R[k]);
  for (double R : g.R) g.t.push_back(R * R);
  for (int k = 0; k < k_max; ++k) g.r.push_back(1.0 / (g.R[k + 1] + g.R[k]));
  g.view = HazardDistribution(g.t, g.R, g.r.back());
  g.b = integrated_tail(Distribution(g.view), 0.0, kInf);
  for (int k = 0; k <= k_max; ++k) {
    g.n.push_back(static_cast<std::int64_t>(std::floor(g.R[k])));
    g.x.push_back(g.t[k] - 2.0 * static_cast<double>(g.n.back()) * g.b);
  }
  return g;
}

std::vector<SequenceRow> sequence_report(const PathologicalG& g) {
  std::vector<SequenceRow> rows;
  for (int k = 0; k <= g.k_max; ++k) {
    SequenceRow row{};
    row.k = k;
    row.R = g.R[k];
    row.t = g.t[k];
    row.r = k < g.k_max ? g.r[k] : std::numeric_limits<double>::quiet_NaN();
    const double expect = std::exp(-g.R[k]);
    row.tail_error = std::abs(std::exp(-g.view.hazard(g.t[k])) - expect) / expect;
    if (k < g.k_max) {
      row.identity_error = std::abs(g.r[k] * (g.R[k + 1] + g.R[k]) - 1.0);
      row.r_t_next_over_R = g.r[k] * g.t[k + 1] / g.R[k + 1];
      row.r_t = g.r[k] * g.t[k];
      row.segment_integral = integrated_tail(Distribution(g.view), g.t[k], g.t[k + 1]);
      row.segment_times_R = row.segment_integral * g.R[k];
    } else {
      row.identity_error = row.r_t_next_over_R = row.r_t = std::numeric_limits<double>::quiet_NaN();
      row.segment_integral = row.segment_times_R = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

double hazard_window_density(const HazardDistribution& h, double x, double a, double b) {
  a = std::max(a, h.support_start());
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a, b};
  for (double k : h.knots()) {
    if (k > a && k < b) cuts.push_back(k);
    if (x - k > a && x - k < b) cuts.push_back(x - k);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i];
    const double v = cuts[i + 1];
    const double mid = 0.5 * (u + v);
    const double s1 = h.rate(mid);
    const double s2 = x - mid <= h.support_start() ? 0.0 : h.rate(x - mid);
    // s1 exp(-R(y) - R(x - y)) with both hazards linear on (u, v)
    const double c = -h.hazard(u) - h.hazard(x - u);
    const double z = (s2 - s1) * (v - u);
    const double shape = std::abs(z) < 1e-12 ? 1.0 + 0.5 * z : std::expm1(z) / z;
    total += s1 * std::exp(c) * (v - u) * shape;
  }
  return total;
}

JkCheck verify_Jk(const PathologicalG& g, int k) {
  if (k < 2 || k > g.k_max) throw ValidationError("verify_Jk: k must lie in 2..k_max");
  const double tk = g.t[k];
  const double lo = tk / 4.0;
  const double hi = 3.0 * tk / 4.0;
  if (!(lo > g.t[k - 1] && hi <= tk - g.t[k - 1]))
    throw PreconditionError("verify_Jk: window (" + format_real(lo) + ", " + format_real(hi) + "] is not inside (" +
                            format_real(g.t[k - 1]) + ", " + format_real(tk - g.t[k - 1]) + "] at k = " +
                            std::to_string(k));
  JkCheck c{};
  c.k = k;
  c.value = hazard_window_density(g.view, tk, lo, hi);
  c.bound = std::exp(-g.R[k]) / (3.0 * g.R[k - 1]);
  c.pass = c.value >= c.bound;
  return c;
}

double two_jump_lower_bound(const PathologicalG& g, std::int64_t n, double x) {
  if (n < 2) throw ValidationError("two_jump_lower_bound: n must be >= 2");
  const auto& h = g.view;
  const double nn = static_cast<double>(n);
  // P{eta_1 > n, eta_2 > max(n, x - eta_1)}
  const double split = std::max(nn, x - nn);
  double p = std::exp(-h.hazard(nn)) * std::exp(-h.hazard(split));
  if (x - nn > nn) p += hazard_window_density(h, x, nn, x - nn);
  return nn * nn / 3.0 * p;
}

RatioDiagnostic superlinearity_report(const PathologicalG& g, int k, const ConvolutionOptions& options) {
  if (k < 1 || k > std::min(4, g.k_max)) throw ValidationError("superlinearity_report: k must lie in 1..min(4, k_max)");
  const std::int64_t nk = g.n[k];
  if (nk < 1) throw ValidationError("superlinearity_report: n_k must be >= 1");
  const double tk = g.t[k];
  const double step = std::max(0.05, tk / 1048576.0);
  const double top = tk + static_cast<double>(nk) * step + step;
  const LatticeDistribution lat = discretize(Distribution(g.view), step, top);
  ConvolutionOptions o = options;
  o.x_hi = std::min(o.x_hi, top);

  const Distribution xi = g.shifted_law();
  const double fx = tail(xi, g.x[k]);
  RatioDiagnostic d;
  d.policy.rule = VerdictRule::bound_or_growth;
  double upper = 0.0;
  double lower = 0.0;
  double central = 0.0;
  for_each_power(lat, nk, o, [&](std::int64_t n, const LatticeDistribution& law) {
    // P{S_n > x_k} = P{T_n > x_k + 2nb}; the lattice sum overshoots T_n by at most n * step
    const double y = g.x[k] + 2.0 * static_cast<double>(n) * g.b;
    const double up = std::exp(law.log_tail(y)) / (static_cast<double>(n) * fx);
    const double lo = std::exp(law.log_tail(y + static_cast<double>(n) * step)) / (static_cast<double>(n) * fx);
    // half the worst-case overshoot: the cell-midpoint estimate
    const double mid =
        std::exp(law.log_tail(y + 0.5 * static_cast<double>(n) * step)) / (static_cast<double>(n) * fx);
    d.points.push_back({g.x[k], n, mid});
    if (n == nk) {
      upper = up;
      lower = lo;
      central = mid;
    }
    return true;
  });
  const double lnn = std::log(static_cast<double>(nk));
  d.notes.emplace_back("k", k);
  d.notes.emplace_back("n_k", static_cast<double>(nk));
  d.notes.emplace_back("x_k", g.x[k]);
  d.notes.emplace_back("step", step);
  d.notes.emplace_back("ratio", central);
  d.notes.emplace_back("ratio_lower", lower);
  d.notes.emplace_back("ratio_upper", upper);
  d.notes.emplace_back("predicted_floor",
                       lnn > 0 ? static_cast<double>(nk) / (10.0 * std::exp(2.0 * g.b) * lnn) : 0.0);
  d.notes.emplace_back("shift_bound_ok", fx <= std::exp(-g.R[k] + 2.0 * g.b) ? 1.0 : 0.0);
  d.finalize();
  return d;
}

RatioDiagnostic pathological_kluppelberg(const PathologicalG& g, const std::vector<int>& ks) {
  std::vector<double> xs;
  for (int k : ks) {
    if (k < 2 || k > g.k_max) throw ValidationError("pathological_kluppelberg: k must lie in 2..k_max");
    xs.push_back(std::nextafter(g.t[k], 0.0));
  }
  RatioDiagnostic d = kluppelberg_criterion(g.view, xs);
  for (int k : ks) {
    const double R = g.R[k - 1];
    d.notes.emplace_back("target_" + std::to_string(k), std::exp(R) / (R * R));
  }
  return d;
}

WeibullBlowup weibull_blowup_scenario(double beta, double step, double x_max, std::size_t points,
                                      const ConvolutionOptions& options) {
  if (!(beta > 0.5 && beta < 1.0)) throw ValidationError("weibull_blowup_scenario: beta must lie in (1/2, 1)");
  if (!(step > 0) || !(x_max > 20.0) || points < 3) throw ValidationError("weibull_blowup_scenario: bad grid");
  const Weibull fam{beta, 1.0};
  const double c = std::tgamma(1.0 + 1.0 / beta);
  // the sum runs over ~x/c terms, so the lattice is shifted to carry the exact mean c
  const LatticeDistribution raw = discretize(Distribution(fam), step, x_max + 2 * step);
  const LatticeDistribution f = shift_lattice(raw, c - raw.mean());
  WeibullBlowup out{beta, fam, f, CountingDistribution::weibull_count(beta, c), {}, {}};
  std::vector<double> xs;
  const double x0 = 10.0;
  for (std::size_t i = 0; i < points; ++i)
    xs.push_back(x0 * std::pow(x_max / x0, static_cast<double>(i) / static_cast<double>(points - 1)));
  StoppedOptions so;
  so.conv = options;
  so.conv.x_hi = std::min(options.x_hi, x_max + step);
  out.exact = stopped_sum_tail_exact(f, out.tau, xs, so);
  RatioDiagnostic& d = out.ratio;
  d.policy.rule = VerdictRule::bound_or_growth;
  const double et = out.tau.mean();
  double first = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : out.exact.rows) {
    const double ratio = r.estimate() / tail(Distribution(fam), r.x);
    d.points.push_back({r.x, std::nullopt, ratio});
    if (std::isnan(first) && ratio > 10.0 * et) first = r.x;
  }
  d.notes.emplace_back("E_tau", et);
  d.notes.emplace_back("c", c);
  d.notes.emplace_back("first_x_over_10_Etau", first);
  d.notes.emplace_back("n_terms", static_cast<double>(out.exact.n_terms));
  d.finalize();
  return out;
}

StoppingBlowup stopping_time_blowup_scenario(double beta, double x) {
  if (!(beta > 0 && beta < 1)) throw ValidationError("stopping_time_blowup_scenario: beta must lie in (0, 1)");
  if (!(x > 2)) throw ValidationError("stopping_time_blowup_scenario: x must exceed 2");
  StoppingRule rule;
  rule.kind = StoppingRule::Kind::h_of_first_increment;
  rule.h_beta = beta;
  // integer ceiling of Weibull(beta): xi >= 1 and the tail is exact at integers
  const double top = std::ceil(std::pow(400.0, 1.0 / beta));
  Distribution f(discretize(Distribution(Weibull{beta, 1.0}), 1.0, std::max(top, 4 * x)));
  const double hx = static_cast<double>(first_increment_h(x, beta, 1.0));
  const double ratio = std::exp(std::pow(x, beta) - std::pow(x - hx, beta));
  return {rule, f, ratio, x};
}

}  // namespace heavysum
