#include "heavysum/tailcalc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "heavysum/errors.hpp"
#include "heavysum/spec_format.hpp"

namespace heavysum {

double TailGrid::log_tail_at(double x) const {
  const double t = std::floor((x - x_start) / step + 1e-9);
  if (t < 0) return 0.0;
  if (t >= static_cast<double>(size())) return overflow_log_mass;
  return log_tail[static_cast<std::size_t>(t)];
}

double TailGrid::tail_at(double x) const { return std::exp(log_tail_at(x)); }

TailGrid tail_grid(const LatticeDistribution& d) {
  TailGrid g;
  g.x_start = d.first_point();
  g.step = d.step();
  g.log_tail.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g.log_tail[i] = d.log_tail_from(i + 1);
  g.overflow_log_mass = d.overflow_log_mass();
  g.exact_until = d.has_overflow() ? d.overflow_above() : kInf;
  return g;
}

void write_csv(const TailGrid& grid, std::ostream& out) {
  out << "x,log_tail\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << format_real(grid.x(i)) << ',' << format_real(grid.log_tail[i]) << '\n';
}

namespace {

// Without an explicit range: laws with an overflow cell stay exact up to their
// last point; bounded laws keep the whole support of S_n.
ConvolutionOptions with_default_range(const LatticeDistribution& f, std::int64_t n, ConvolutionOptions o) {
  if (o.x_hi == kInf) {
    const double last = f.last_point();
    o.x_hi = f.has_overflow() || last <= 0 ? last : static_cast<double>(n) * last;
  }
  return o;
}

void require_n(std::int64_t n, const char* what) {
  if (n < 1) throw ValidationError(std::string(what) + ": n must be >= 1 (got " + std::to_string(n) + ")");
}

double safe_mean(const LatticeDistribution& f) { return f.mean(); }

}  // namespace

LatticeDistribution conv_power(const LatticeDistribution& f, std::int64_t n, const ConvolutionOptions& options) {
  require_n(n, "conv_power");
  const ConvolutionOptions o = with_default_range(f, n, options);
  std::optional<LatticeDistribution> result;
  LatticeDistribution base = f;
  while (true) {
    if (n & 1) result = result ? convolve(*result, base, o) : base;
    n >>= 1;
    if (n == 0) break;
    base = convolve(base, base, o);
  }
  return *result;
}

TailGrid conv_power_tail(const LatticeDistribution& f, std::int64_t n, const ConvolutionOptions& options) {
  return tail_grid(conv_power(f, n, options));
}

void for_each_power(const LatticeDistribution& f, std::int64_t n_max, const ConvolutionOptions& options,
                    const PowerVisitor& visit) {
  require_n(n_max, "for_each_power");
  const ConvolutionOptions o = with_default_range(f, n_max, options);
  LatticeDistribution cur = f;
  if (!visit(1, cur)) return;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    cur = convolve(cur, f, o);
    if (!visit(n, cur)) return;
  }
}

namespace {

LatticeDistribution point_mass_at_zero(const LatticeDistribution& f) {
  const double k = -f.origin() / f.step();
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9 * std::max(1.0, std::abs(k)))
    throw PreconditionError("max_partial_sum: 0 is not a point of the lattice (origin " +
                            format_real(f.origin()) + ")");
  return {f.step(), static_cast<std::int64_t>(kr), {0.0}, kNegInf, f.origin()};
}

}  // namespace

void for_each_max(const LatticeDistribution& f, std::int64_t n_max, const ConvolutionOptions& options,
                  const PowerVisitor& visit) {
  require_n(n_max, "for_each_max");
  if (f.nonnegative()) {
    for_each_power(f, n_max, options, visit);
    return;
  }
  const ConvolutionOptions o = with_default_range(f, n_max, options);
  LatticeDistribution cur = point_mass_at_zero(f);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    cur = clamp_below(convolve(f, cur, o), 0.0);
    if (!visit(n, cur)) return;
  }
}

LatticeDistribution max_partial_sum(const LatticeDistribution& f, std::int64_t n, const ConvolutionOptions& options) {
  require_n(n, "max_partial_sum");
  if (f.nonnegative()) return conv_power(f, n, options);
  std::optional<LatticeDistribution> out;
  for_each_max(f, n, options, [&](std::int64_t k, const LatticeDistribution& law) {
    if (k == n) out = law;
    return true;
  });
  return *out;
}

TailGrid max_partial_sum_tail(const LatticeDistribution& f, std::int64_t n, const ConvolutionOptions& options) {
  return tail_grid(max_partial_sum(f, n, options));
}

double korshunov_maxima_approx(const Distribution& f, std::int64_t n, double x) {
  require_n(n, "korshunov_maxima_approx");
  const double m = mean(f);
  if (!(m < 0))
    throw PreconditionError("korshunov_maxima_approx: requires a negative mean (got " + format_real(m) + ")");
  const double a = -m;
  return integrated_tail(f, x, x + static_cast<double>(n) * a) / a;
}

RatioDiagnostic kesten_ratio_table(const LatticeDistribution& f, std::int64_t n_max, const std::vector<double>& x_grid,
                                   const ConvolutionOptions& options) {
  RatioDiagnostic d;
  d.policy.rule = VerdictRule::bound;
  for (double x : x_grid)
    if (!(f.log_tail(x) > kNegInf))
      throw ValidationError("kesten_ratio_table: tail vanishes at x = " + format_real(x));
  double k_hat = 0.0;
  for_each_power(f, n_max, options, [&](std::int64_t n, const LatticeDistribution& law) {
    for (double x : x_grid) {
      const double r = n == 1 ? 1.0 : std::exp(law.log_tail(x) - f.log_tail(x));
      d.points.push_back({x, n, r});
      k_hat = std::max(k_hat, r / static_cast<double>(n));
    }
    return true;
  });
  d.notes.emplace_back("sup_ratio_over_n", k_hat);
  d.finalize();
  return d;
}

RatioDiagnostic bound_check_negative_mean(const LatticeDistribution& f, std::int64_t n_max,
                                          const ConvolutionOptions& options) {
  const double m = safe_mean(f);
  if (!(m < 0))
    throw PreconditionError("bound_check_negative_mean: requires a negative mean (got " + format_real(m) + ")");
  RatioDiagnostic d;
  d.policy.rule = VerdictRule::bound;
  double k_hat = 0.0;
  double grid_end = kInf;
  for_each_power(f, n_max, options, [&](std::int64_t n, const LatticeDistribution& law) {
    const double limit = law.has_overflow() ? law.overflow_above() : law.last_point();
    grid_end = std::min(grid_end, limit);
    double best = 0.0;
    double best_x = f.first_point();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = f.point(i);
      if (x > limit + 1e-9 * f.step()) break;
      const double r = std::exp(law.log_tail(x) - f.log_tail_from(i + 1)) / static_cast<double>(n);
      if (r > best) {
        best = r;
        best_x = x;
      }
    }
    d.points.push_back({best_x, n, best});
    k_hat = std::max(k_hat, best);
    return true;
  });
  d.notes.emplace_back("K_hat", k_hat);
  d.notes.emplace_back("grid_end", grid_end);
  d.finalize();
  return d;
}

RatioDiagnostic bound_check_nonneg_mean(const LatticeDistribution& f, double c, std::int64_t n_max,
                                        const ConvolutionOptions& options) {
  const double m = safe_mean(f);
  if (!(m >= 0))
    throw PreconditionError("bound_check_nonneg_mean: requires a nonnegative mean (got " + format_real(m) + ")");
  if (!(c > m))
    throw PreconditionError("bound_check_nonneg_mean: c must exceed the mean " + format_real(m) + " (got " +
                            format_real(c) + ")");
  RatioDiagnostic d;
  d.policy.rule = VerdictRule::bound;
  double sup = 0.0;
  for_each_power(f, n_max, options, [&](std::int64_t n, const LatticeDistribution& law) {
    const double limit = law.has_overflow() ? law.overflow_above() : law.last_point();
    const double lcn = f.log_tail(c * static_cast<double>(n));
    double best = 0.0;
    double best_x = f.first_point();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = f.point(i);
      if (x > limit + 1e-9 * f.step()) break;
      const double r = std::exp(law.log_tail(x) + lcn - f.log_tail_from(i + 1));
      if (r > best) {
        best = r;
        best_x = x;
      }
    }
    d.points.push_back({best_x, n, best});
    sup = std::max(sup, best);
    return true;
  });
  d.notes.emplace_back("sup", sup);
  d.finalize();
  return d;
}

RatioDiagnostic big_jump_range_check(const LatticeDistribution& f, const std::function<double(double)>& h,
                                     const std::vector<double>& x_grid, BigJumpVariant variant,
                                     const ConvolutionOptions& options) {
  RatioDiagnostic d;
  const bool lower = variant == BigJumpVariant::lower_bound;
  std::vector<std::int64_t> n_limit(x_grid.size());
  std::int64_t n_max = 1;
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    const double hx = h(x_grid[j]);
    const double lim = lower ? hx * hx : hx;
    n_limit[j] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(lim + 1e-12)));
    n_max = std::max(n_max, n_limit[j]);
  }
  std::vector<double> value(x_grid.size(), lower ? kInf : 0.0);
  std::vector<std::int64_t> arg(x_grid.size(), 1);
  for_each_power(f, n_max, options, [&](std::int64_t n, const LatticeDistribution& law) {
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
      if (n > n_limit[j]) continue;
      const double x = x_grid[j];
      const double r = std::exp(law.log_tail(x) - f.log_tail(x)) / static_cast<double>(n);
      const double v = lower ? r : std::abs(r - 1.0);
      if (lower ? v < value[j] : v > value[j]) {
        value[j] = v;
        arg[j] = n;
      }
    }
    return true;
  });
  for (std::size_t j = 0; j < x_grid.size(); ++j) d.points.push_back({x_grid[j], arg[j], value[j]});
  if (lower) {
    d.policy.rule = VerdictRule::bound;
  } else {
    d.policy.rule = VerdictRule::convergence;
    d.policy.target = 0.0;
    d.policy.tolerance = 0.15;
  }
  d.notes.emplace_back("n_max", static_cast<double>(n_max));
  d.finalize();
  return d;
}

}  // namespace heavysum
