#include "heavysum/stopped.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "heavysum/errors.hpp"
#include "heavysum/spec_format.hpp"
#include "heavysum/tailcalc.hpp"

namespace heavysum {

namespace {

using Step = std::function<LatticeDistribution(const LatticeDistribution&)>;

// Runs the series with `next` producing the law for n + 1 from the law for n.
// `start` is the law for n = 0 (a point mass at 0) or nullopt when F has no 0 point.
StoppedResult run_series(const LatticeDistribution& f, const CountingDistribution& tau,
                         const std::vector<double>& x_grid, const StoppedOptions& options, bool tight,
                         const Step& next, const char* what) {
  if (x_grid.empty()) throw ValidationError(std::string(what) + ": empty x grid");
  StoppedResult out;
  out.rows.resize(x_grid.size());
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    out.rows[j].x = x_grid[j];
    out.rows[j].partial = x_grid[j] < 0 ? tau.pmf(0) : 0.0;
  }
  const std::int64_t last = tau.bounded() ? tau.max_support() : options.max_terms;
  std::optional<LatticeDistribution> law;
  for (std::int64_t n = 1;; ++n) {
    if (n > options.max_terms)
      throw ResourceError(std::string(what) + ": series needs more than " + std::to_string(options.max_terms) +
                          " terms");
    if (n > last) {
      out.n_terms = n - 1;
      out.tau_tail = 0.0;
      for (auto& r : out.rows) r.remainder_lo = r.remainder_hi = 0.0;
      return out;
    }
    law = law ? next(*law) : f;
    const double exact_until = law->has_overflow() ? law->overflow_above() : kInf;
    const double pn = tau.pmf(n);
    const double rest = std::exp(tau.log_tail(n));
    bool done = true;
    for (auto& r : out.rows) {
      if (r.x > exact_until + 1e-9 * f.step())
        throw ResourceError(std::string(what) + ": x = " + format_real(r.x) + " is beyond the exact range " +
                            format_real(exact_until) + " at n = " + std::to_string(n) +
                            "; extend the lattice");
      const double t = law->log_tail(r.x);
      const double p = std::exp(t);
      r.partial += pn * p;
      r.remainder_hi = rest;
      r.remainder_lo = tight ? rest * p : 0.0;
      const double width = r.remainder_hi - r.remainder_lo;
      if (!(width <= options.rel_accuracy * r.partial)) done = false;
    }
    if (done || rest == 0.0) {
      out.n_terms = n;
      out.tau_tail = rest;
      return out;
    }
  }
}

ConvolutionOptions range(const LatticeDistribution& f, ConvolutionOptions o) {
  if (o.x_hi == kInf) o.x_hi = f.last_point();
  return o;
}

}  // namespace

StoppedResult stopped_sum_tail_exact(const LatticeDistribution& f, const CountingDistribution& tau,
                                     const std::vector<double>& x_grid, const StoppedOptions& options) {
  const ConvolutionOptions o = range(f, options.conv);
  return run_series(f, tau, x_grid, options, f.nonnegative(),
                    [&](const LatticeDistribution& s) { return convolve(s, f, o); }, "stopped_sum_tail_exact");
}

StoppedResult stopped_max_tail_exact(const LatticeDistribution& f, const CountingDistribution& tau,
                                     const std::vector<double>& x_grid, const StoppedOptions& options) {
  const ConvolutionOptions o = range(f, options.conv);
  if (f.nonnegative())
    return run_series(f, tau, x_grid, options, true,
                      [&](const LatticeDistribution& s) { return convolve(s, f, o); }, "stopped_max_tail_exact");
  // M_1 = max(0, xi) in law; afterwards M_{n+1} = max(0, xi + M_n).
  const LatticeDistribution m1 = clamp_below(f, 0.0);
  StoppedOptions opts = options;
  for (double x : x_grid)
    if (x < 0) throw ValidationError("stopped_max_tail_exact: x must be >= 0 for a signed step law");
  return run_series(m1, tau, x_grid, opts, true,
                    [&](const LatticeDistribution& m) { return clamp_below(convolve(f, m, o), 0.0); },
                    "stopped_max_tail_exact");
}

double predictor_light(const Distribution& f, const CountingDistribution& tau, double x) {
  return tau.mean() * tail(f, x);
}

double predictor_comparable(const Distribution& f, const CountingDistribution& tau, double x) {
  const double m = mean(f);
  if (!(m > 0)) throw PreconditionError("predictor_comparable: requires E xi > 0 (got " + format_real(m) + ")");
  return tau.mean() * tail(f, x) + tau.tail(x / m);
}

RatioDiagnostic stopped_ratio_profile(const StoppedResult& exact, const Distribution& f,
                                      const CountingDistribution& tau, Predictor predictor) {
  RatioDiagnostic d;
  d.policy = {VerdictRule::convergence, 1.0, 0.1, 5};
  double worst = 0.0;
  for (const auto& r : exact.rows) {
    const double p = predictor == Predictor::light ? predictor_light(f, tau, r.x) : predictor_comparable(f, tau, r.x);
    d.points.push_back({r.x, std::nullopt, r.estimate() / p});
    worst = std::max(worst, (r.remainder_hi - r.remainder_lo) / p);
  }
  d.notes.emplace_back("n_terms", static_cast<double>(exact.n_terms));
  d.notes.emplace_back("max_bracket_over_predictor", worst);
  d.finalize();
  return d;
}

RatioDiagnostic condition_eq1_check(const CountingDistribution& tau, const Distribution& f, double c,
                                    const std::vector<double>& x_grid) {
  if (!(c > 0)) throw PreconditionError("condition_eq1_check: c must be positive");
  RatioDiagnostic d;
  d.policy = {VerdictRule::convergence, 0.0, 0.05, 5};
  for (double x : x_grid) {
    const double lt = log_tail(f, x);
    if (!(lt > kNegInf)) throw ValidationError("condition_eq1_check: tail vanishes at x = " + format_real(x));
    const double lq = tau.log_tail(static_cast<std::int64_t>(std::floor(x / c)));
    d.points.push_back({x, std::nullopt, std::exp(lq - lt)});
  }
  d.notes.emplace_back("c", c);
  d.finalize();
  return d;
}

RatioDiagnostic condition_series_check(const CountingDistribution& tau, const Distribution& f, double c,
                                       std::int64_t n_max) {
  if (!(c > 0)) throw PreconditionError("condition_series_check: c must be positive");
  const double m = mean(f);
  if (m >= 0 && !(c > m))
    throw PreconditionError("condition_series_check: c must exceed E xi = " + format_real(m));
  if (n_max < 4) throw ValidationError("condition_series_check: n_max must be >= 4");
  RatioDiagnostic d;
  double total = 0.0;
  double block = 0.0;
  std::int64_t next_cut = 2;
  // whole dyadic blocks only: [1], [2, 3], [4, 7], ...
  std::int64_t full = 1;
  while (full * 2 + 1 <= n_max) full = full * 2 + 1;
  n_max = full;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double lp = tau.log_pmf(n);
    if (lp > kNegInf) {
      const double lt = log_tail(f, c * static_cast<double>(n));
      block += lt > kNegInf ? std::exp(lp - lt) : kInf;
    }
    if (n + 1 == next_cut) {
      d.points.push_back({static_cast<double>(n), n, block});
      total += block;
      block = 0.0;
      next_cut *= 2;
    }
  }
  d.policy = {VerdictRule::convergence, 0.0, 0.05 * std::max(total, 1e-300), 5};
  d.notes.emplace_back("partial_sum", total);
  d.finalize();
  if (tau.bounded() && tau.max_support() < (n_max + 1) / 2) {
    // the last blocks are exactly zero: a finite sum
    d.verdict.kind = VerdictKind::converging_to;
    d.verdict.last_deviation = 0.0;
  }
  return d;
}

RatioDiagnostic liminf_floor_check(const LatticeDistribution& f, const CountingDistribution& tau,
                                   const std::vector<double>& x_grid, const StoppedOptions& options) {
  if (!f.nonnegative()) throw PreconditionError("liminf_floor_check: requires a nonnegative step law");
  const StoppedResult exact = stopped_sum_tail_exact(f, tau, x_grid, options);
  RatioDiagnostic d;
  d.policy.rule = VerdictRule::bound;
  for (const auto& r : exact.rows) d.points.push_back({r.x, std::nullopt, r.estimate() / std::exp(f.log_tail(r.x))});
  d.finalize();
  double lo = kInf;
  for (std::size_t i = d.points.size() / 2; i < d.points.size(); ++i) lo = std::min(lo, d.points[i].ratio);
  d.notes.emplace_back("floor", tau.mean());
  d.notes.emplace_back("min_upper_half", lo);
  return d;
}

std::vector<double> gw_generation_tail(const LatticeDistribution& offspring, int generations,
                                       const std::vector<double>& x_grid, const ConvolutionOptions& options) {
  if (generations < 1 || generations > 4)
    throw ValidationError("gw_generation_tail: generations must lie in 1..4");
  if (std::abs(offspring.step() - 1.0) > 1e-12 || offspring.origin() != 0.0 || offspring.offset() < 0)
    throw ValidationError("gw_generation_tail: offspring law must live on {0, 1, 2, ...}");
  double top = offspring.last_point();
  // bounded offspring with a small reach: the whole support of X_generations is
  // on the grid, so any x is exact
  const double reach = std::pow(top, generations) + 1.0;
  const bool whole = !offspring.has_overflow() && reach <= 4096.0 && options.x_hi >= reach;
  if (whole) top = std::max(top, reach);
  if (options.x_hi < top) top = std::floor(options.x_hi);
  for (double x : x_grid)
    if (!(x >= 0 && (whole || x < top)))
      throw ValidationError("gw_generation_tail: x = " + format_real(x) + " outside [0, " + format_real(top) + ")");
  const auto cap = static_cast<std::size_t>(top);
  ConvolutionOptions o = options;
  o.x_hi = top;

  // law of X_k on 0..cap plus the overflow mass
  auto dense = [&](const LatticeDistribution& d) {
    std::vector<double> v(cap + 1, kNegInf);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto m = static_cast<std::int64_t>(d.offset()) + static_cast<std::int64_t>(i);
      if (m >= 0 && static_cast<std::size_t>(m) <= cap) v[static_cast<std::size_t>(m)] = d.log_mass()[i];
    }
    return v;
  };
  std::vector<double> law = dense(offspring);
  // overflow above the last lattice point lies beyond top as well
  double over = offspring.overflow_log_mass();
  for (std::size_t i = 0; i < offspring.size(); ++i)
    if (offspring.point(i) > top) over = log_add_exp(over, offspring.log_mass()[i]);

  if (generations > 1) {
    // powers xi^{*n}, n = 0..cap, truncated to 0..cap
    std::vector<std::vector<double>> pw(cap + 1);
    std::vector<double> pw_over(cap + 1, kNegInf);
    pw[0].assign(cap + 1, kNegInf);
    pw[0][0] = 0.0;
    std::optional<LatticeDistribution> cur;
    for (std::size_t n = 1; n <= cap; ++n) {
      cur = cur ? convolve(*cur, offspring, o) : convolve(LatticeDistribution(1.0, 0, {0.0}), offspring, o);
      pw[n] = dense(*cur);
      pw_over[n] = cur->overflow_log_mass();
      for (std::size_t i = 0; i < cur->size(); ++i)
        if (cur->point(i) > top) pw_over[n] = log_add_exp(pw_over[n], cur->log_mass()[i]);
    }
    for (int g = 2; g <= generations; ++g) {
      std::vector<double> next(cap + 1, kNegInf);
      double next_over = over;
      for (std::size_t m = 0; m <= cap; ++m) {
        double scale = kNegInf;
        for (std::size_t n = 0; n <= cap; ++n) scale = std::max(scale, law[n] + pw[n][m]);
        if (scale == kNegInf) continue;
        double s = 0.0;
        for (std::size_t n = 0; n <= cap; ++n) {
          const double t = law[n] + pw[n][m];
          if (t > kNegInf) s += std::exp(t - scale);
        }
        next[m] = scale + std::log(s);
      }
      for (std::size_t n = 0; n <= cap; ++n) next_over = log_add_exp(next_over, law[n] + pw_over[n]);
      law = std::move(next);
      over = next_over;
    }
  }

  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    double lt = over;
    for (std::size_t m = static_cast<std::size_t>(std::floor(x)) + 1; m <= cap; ++m) lt = log_add_exp(lt, law[m]);
    out.push_back(std::exp(lt));
  }
  return out;
}

}  // namespace heavysum
