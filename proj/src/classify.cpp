#include "heavysum/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heavysum/errors.hpp"
#include "heavysum/spec_format.hpp"

namespace heavysum {

namespace {

// Resolve nested shifts of hazard and lattice laws into plain hazard / lattice laws.
Distribution flatten(const Distribution& d) {
  if (!d.holds<ShiftedDistribution>()) return d;
  const auto& s = d.get<ShiftedDistribution>();
  const Distribution base = flatten(*s.base);
  if (base.holds<HazardDistribution>()) {
    const auto& h = base.get<HazardDistribution>();
    std::vector<double> knots(h.knots().begin(), h.knots().end());
    for (double& k : knots) k += s.shift;
    return HazardDistribution(std::move(knots), {h.values().begin(), h.values().end()}, h.final_slope());
  }
  if (base.holds<LatticeDistribution>()) return shift_lattice(base.get<LatticeDistribution>(), s.shift);
  if (base.holds<ShiftedDistribution>()) {
    const auto& inner = base.get<ShiftedDistribution>();
    return shifted(*inner.base, inner.shift + s.shift);
  }
  return shifted(base, s.shift);
}

template <class Fn>
double simpson_rec(const Fn& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson with a relative tolerance against a coarse first estimate.
template <class Fn>
double adaptive_simpson(const Fn& f, double a, double b, double rel_tol = 1e-9) {
  if (!(b > a)) return 0.0;
  // seed the tolerance with a 16-panel composite estimate
  double coarse = 0.0;
  const int n = 16;
  const double hstep = (b - a) / n;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    coarse += w * f(a + i * hstep);
  }
  coarse *= hstep / 3.0;
  const double tol = std::max(std::abs(coarse) * rel_tol, 1e-300);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lo = a + i * hstep;
    const double hi = i + 1 == n ? b : a + (i + 1) * hstep;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_rec(f, lo, hi, fa, fm, fb, whole, tol / n, 48);
  }
  return total;
}

// Split [a, b] at a geometric ladder so each panel spans at most a factor of 2.
std::vector<double> geometric_cuts(double a, double b, double unit) {
  std::vector<double> cuts{a};
  double c = 2.0 * a;
  if (a <= 0) {
    if (a < 0 && b > 0) cuts.push_back(0.0);
    c = unit;
  }
  for (; c < b; c *= 2.0)
    if (c > cuts.back()) cuts.push_back(c);
  if (b > cuts.back()) cuts.push_back(b);
  return cuts;
}

double hazard_window(const HazardDistribution& h, double x, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (double k : h.knots()) {
    if (k > lo && k < hi) cuts.push_back(k);
    if (x - k > lo && x - k < hi) cuts.push_back(x - k);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double s = h.support_start();
  const double rx = h.hazard(x);
  auto slope = [&](double y) { return y <= s ? 0.0 : h.rate(y); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i];
    const double v = cuts[i + 1];
    if (v <= u) continue;
    const double m = 0.5 * (u + v);
    const double d = -slope(m) + slope(x - m);
    const double lu = rx - h.hazard(u) - h.hazard(x - u);
    const double lv = lu + d * (v - u);
    const double z = std::abs(d) * (v - u);
    const double shape = z < 1e-12 ? 1.0 - 0.5 * z : -std::expm1(-z) / z;
    total += (v - u) * std::exp(std::max(lu, lv)) * shape;
  }
  return total;
}

double lattice_window(const LatticeDistribution& l, double x, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  const std::int64_t ia = std::max<std::int64_t>(0, l.floor_index(lo));
  const std::int64_t ib = l.floor_index(hi) + 1;
  for (std::int64_t i = ia; i <= ib && i < static_cast<std::int64_t>(l.size()); ++i) {
    const double p = l.point(static_cast<std::size_t>(i));
    if (p > lo && p < hi) cuts.push_back(p);
  }
  const std::int64_t ja = std::max<std::int64_t>(0, l.floor_index(x - hi) - 1);
  const std::int64_t jb = l.floor_index(x - lo) + 1;
  for (std::int64_t j = ja; j <= jb && j < static_cast<std::int64_t>(l.size()); ++j) {
    const double p = x - l.point(static_cast<std::size_t>(j));
    if (p > lo && p < hi) cuts.push_back(p);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double lx = l.log_tail(x);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i];
    const double v = cuts[i + 1];
    if (v <= u) continue;
    const double m = 0.5 * (u + v);
    total += (v - u) * std::exp(l.log_tail(m) + l.log_tail(x - m) - lx);
  }
  return total;
}

}  // namespace

double positive_tail_integral(const Distribution& f) { return integrated_tail(f, 0.0, kInf); }

double window_integral_ratio(const Distribution& f, double x, double lo) {
  const double mid = 0.5 * x;
  if (!(lo < mid)) return 0.0;
  const Distribution g = flatten(f);
  if (g.holds<HazardDistribution>()) return 2.0 * hazard_window(g.get<HazardDistribution>(), x, lo, mid);
  if (g.holds<LatticeDistribution>()) return 2.0 * lattice_window(g.get<LatticeDistribution>(), x, lo, mid);
  const double lx = log_tail(g, x);
  auto integrand = [&](double y) { return std::exp(log_tail(g, x - y) + log_tail(g, y) - lx); };
  const double s = support_start(g);
  std::vector<double> cuts = geometric_cuts(lo, mid, 1.0);
  for (double k : {s, x - s})
    if (k > lo && k < mid) cuts.push_back(k);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += adaptive_simpson(integrand, cuts[i], cuts[i + 1]);
  return 2.0 * total;
}

RatioDiagnostic long_tailed_profile(const Distribution& f, double y, const std::vector<double>& x_grid) {
  if (!(y > 0)) throw ValidationError("long_tailed_profile: y must be > 0");
  if (f.holds<LatticeDistribution>()) {
    const double h = f.get<LatticeDistribution>().step();
    y = std::max(1.0, std::round(y / h)) * h;
  }
  RatioDiagnostic d;
  d.policy = {VerdictRule::convergence, 1.0, 0.05, 5};
  for (double x : x_grid) d.points.push_back({x, std::nullopt, std::exp(log_tail(f, x + y) - log_tail(f, x))});
  d.notes.emplace_back("y", y);
  d.finalize();
  return d;
}

RatioDiagnostic dominated_variation_profile(const Distribution& f, const std::vector<double>& x_grid) {
  RatioDiagnostic d;
  d.policy = {VerdictRule::bound_or_growth, 0.0, 0.05, 5};
  for (double x : x_grid) d.points.push_back({x, std::nullopt, std::exp(log_tail(f, x) - log_tail(f, 2.0 * x))});
  d.finalize();
  return d;
}

IrvProfile irv_profile(const Distribution& f, const std::vector<double>& eps_grid, const std::vector<double>& x_grid) {
  std::vector<double> xs = x_grid;
  std::sort(xs.begin(), xs.end());
  const std::size_t half = xs.size() / 2;
  IrvProfile p;
  std::vector<RatioPoint> pts;
  for (double eps : eps_grid) {
    if (!(eps > 0 && eps < 1)) throw ValidationError("irv_profile: eps must lie in (0, 1)");
    double best = 0.0;
    for (std::size_t i = half; i < xs.size(); ++i)
      best = std::max(best, std::exp(log_tail(f, (1.0 - eps) * xs[i]) - log_tail(f, xs[i])));
    p.rows.emplace_back(eps, best);
    pts.push_back({-eps, std::nullopt, best});
  }
  // order by decreasing eps; converging_to(1) as eps -> 0, otherwise "not IRV on this grid"
  std::sort(pts.begin(), pts.end(), [](const RatioPoint& a, const RatioPoint& b) { return a.x < b.x; });
  VerdictPolicy policy{VerdictRule::convergence, 1.0, 0.05, 5};
  p.verdict = judge(pts, policy);
  if (p.verdict.kind == VerdictKind::inconclusive && !pts.empty() && std::abs(pts.back().ratio - 1.0) >= 0.05)
    p.verdict.kind = VerdictKind::diverging;
  return p;
}

RatioDiagnostic heavy_tail_profile(const Distribution& f, const std::vector<double>& x_grid) {
  RatioDiagnostic d;
  d.policy = {VerdictRule::convergence, 0.0, 0.05, 5};
  for (double x : x_grid) d.points.push_back({x, std::nullopt, -log_tail(f, x) / x});
  d.finalize();
  return d;
}

LatticeDistribution condition_nonnegative(const LatticeDistribution& f) {
  std::size_t j0 = 0;
  while (j0 < f.size() && f.point(j0) < -1e-9 * f.step()) ++j0;
  if (j0 == 0) return f;
  if (j0 == f.size()) throw ValidationError("condition_nonnegative: no mass on [0, inf)");
  const double lz = f.log_tail_from(j0);
  if (lz == kNegInf) throw ValidationError("condition_nonnegative: no mass on [0, inf)");
  std::vector<double> lm(f.log_mass().begin() + static_cast<std::ptrdiff_t>(j0), f.log_mass().end());
  for (double& l : lm) l -= lz;
  const double over = f.has_overflow() ? f.overflow_log_mass() - lz : kNegInf;
  return {f.step(), f.offset() + static_cast<std::int64_t>(j0), std::move(lm), over, f.origin(),
          f.overflow_above(), f.overflow_mean()};
}

RatioDiagnostic subexp_ratio_profile(const LatticeDistribution& f, const std::vector<double>& x_grid,
                                     const ConvolutionOptions& options) {
  const LatticeDistribution g = condition_nonnegative(f);
  double x_top = 0.0;
  for (double x : x_grid) {
    if (!(g.log_tail(x) > kNegInf))
      throw ValidationError("subexp_ratio_profile: tail vanishes at x = " + format_real(x) + " (bounded support)");
    x_top = std::max(x_top, x);
  }
  ConvolutionOptions o = options;
  o.x_hi = std::min(o.x_hi, x_top + g.step());
  const LatticeDistribution s2 = convolve(g, g, o);
  RatioDiagnostic d;
  d.policy = {VerdictRule::convergence, 2.0, 0.05, 5};
  for (double x : x_grid) {
    if (s2.has_overflow() && x > s2.overflow_above() + 1e-9 * g.step())
      throw ValidationError("subexp_ratio_profile: x = " + format_real(x) + " lies beyond the lattice range");
    d.points.push_back({x, 2, std::exp(s2.log_tail(x) - g.log_tail(x))});
  }
  d.finalize();
  return d;
}

RatioDiagnostic sstar_integral_profile(const Distribution& f, const std::vector<double>& x_grid) {
  const double m = positive_tail_integral(f);
  if (!std::isfinite(m)) throw DivergenceError("sstar_integral_profile: the tail integral diverges");
  RatioDiagnostic d;
  d.policy = {VerdictRule::convergence, 2.0 * m, 0.05, 5};
  for (double x : x_grid) d.points.push_back({x, std::nullopt, window_integral_ratio(f, x, 0.0)});
  d.notes.emplace_back("tail_integral", m);
  d.finalize();
  return d;
}

PitmanResult pitman_criterion(const Distribution& f, double T) {
  const Distribution g = flatten(f);
  if (g.holds<LatticeDistribution>()) throw InapplicableError("pitman_criterion: needs a hazard rate");
  const double s = support_start(g);
  if (!(T > s)) throw ValidationError("pitman_criterion: T must exceed the support start");
  std::vector<std::pair<double, double>> pieces;  // (cut x, increment)
  if (g.holds<HazardDistribution>()) {
    const auto& h = g.get<HazardDistribution>();
    double min_late = kInf;
    for (std::size_t i = h.piece_count() / 2; i + 1 < h.piece_count(); ++i) min_late = std::min(min_late, h.piece_slope(i));
    if (h.piece_count() > 2 && h.final_slope() > min_late * (1.0 + 1e-12))
      throw InapplicableError("pitman_criterion: hazard rate is not eventually decreasing");
    for (std::size_t i = 0; i < h.piece_count(); ++i) {
      const double a = h.piece_begin(i);
      if (a >= T) break;
      const double r = h.piece_slope(i);
      const double level = r == 0 ? 0.0 : r * std::exp(r * a - h.hazard(a));
      const double end = std::min(T, h.piece_end(i));
      if (end < kInf && i + 1 < h.piece_count()) {
        pieces.emplace_back(end, level * (end - a));
        continue;
      }
      // unbounded last piece: cut at doubling lengths so the verdict sees the trend
      double lo = a;
      double len = std::max(1.0, a);
      while (lo < end) {
        const double hi = std::min(end, lo + len);
        pieces.emplace_back(hi, level * (hi - lo));
        lo = hi;
        len *= 2.0;
      }
    }
  } else {
    if (g.holds<Exponential>() || (g.holds<Weibull>() && g.get<Weibull>().beta == 1.0)) {
      // constant rate: integrand is identically r
    } else if (hazard_rate(g, T) > hazard_rate(g, 0.5 * T) * (1.0 + 1e-9)) {
      throw InapplicableError("pitman_criterion: hazard rate is not eventually decreasing");
    }
    auto integrand_u = [&](double u) {
      const double y = u * u;
      if (y <= s) return 0.0;
      const double r = hazard_rate(g, y);
      return std::exp(y * r + log_tail(g, y)) * r * 2.0 * u;
    };
    const std::vector<double> cuts = geometric_cuts(std::max(0.0, s), T, 1.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      pieces.emplace_back(cuts[i + 1], adaptive_simpson(integrand_u, std::sqrt(cuts[i]), std::sqrt(cuts[i + 1])));
  }
  PitmanResult out{0.0, {}};
  for (const auto& [x, inc] : pieces) {
    out.integral += inc;
    out.profile.points.push_back({x, std::nullopt, inc});
  }
  out.profile.policy = {VerdictRule::convergence, 0.0, 0.05 * std::max(out.integral, 1e-300), 5};
  out.profile.notes.emplace_back("integral", out.integral);
  out.profile.finalize();
  return out;
}

RatioDiagnostic kluppelberg_criterion(const HazardDistribution& f, const std::vector<double>& x_grid) {
  const double target = integrated_tail(f, 0.0, kInf);
  RatioDiagnostic d;
  d.policy = {VerdictRule::convergence, target, 0.05, 5};
  const double s = f.support_start();
  for (double x : x_grid) {
    const double r = f.rate(x);
    double total = 0.0;
    // [0, s): R = 0
    if (s > 0) {
      const double hi = std::min(s, x);
      total += r == 0 ? hi : std::expm1(r * hi) / r;
    }
    for (std::size_t j = f.piece_of(std::max(0.0, s)); j < f.piece_count(); ++j) {
      const double a = std::max({f.piece_begin(j), 0.0});
      const double b = std::min(f.piece_end(j), x);
      if (b <= a) {
        if (f.piece_begin(j) >= x) break;
        continue;
      }
      const double rj = f.piece_slope(j);
      // exponent: y r - R(a) - rj (y - a)
      const double la = a * r - f.hazard(a);
      const double slope = r - rj;
      const double z = slope * (b - a);
      const double shape = std::abs(z) < 1e-12 ? 1.0 + 0.5 * z : std::expm1(z) / z;
      total += std::exp(la) * (b - a) * shape;
    }
    d.points.push_back({x, std::nullopt, total});
  }
  d.notes.emplace_back("target", target);
  d.finalize();
  return d;
}

HazardDistribution hazard_approximation(const Distribution& f, const std::vector<double>& knots) {
  if (knots.size() < 2) throw ValidationError("hazard_approximation: need at least two knots");
  std::vector<double> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) values[i] = i == 0 ? 0.0 : -log_tail(f, knots[i]);
  if (log_tail(f, knots[0]) < -1e-15) throw ValidationError("hazard_approximation: first knot lies inside the support");
  const std::size_t n = knots.size();
  const double final_slope = (values[n - 1] - values[n - 2]) / (knots[n - 1] - knots[n - 2]);
  return {knots, values, final_slope};
}

std::function<double(double)> find_h_function(const Distribution& f) {
  const Distribution g = flatten(f);
  if (g.holds<LatticeDistribution>()) throw InapplicableError("find_h_function: lattice laws have no hazard rate");
  if (g.holds<HazardDistribution>()) {
    auto h = std::make_shared<const HazardDistribution>(g.get<HazardDistribution>());
    std::vector<double> suffix_max(h->piece_count());
    double m = 0.0;
    for (std::size_t i = h->piece_count(); i-- > 0;) {
      m = std::max(m, h->piece_slope(i));
      suffix_max[i] = m;
    }
    if (!(h->final_slope() <= 1e-2 * suffix_max[0]))
      throw InapplicableError("find_h_function: hazard rate does not vanish");
    return [h, suffix_max](double x) {
      const double r = suffix_max[h->piece_of(x)];
      const double v = r > 0 ? 1.0 / std::sqrt(r) : kInf;
      return std::min(std::max(v, 1.0), 0.5 * x);
    };
  }
  const bool light = g.holds<Exponential>() || (g.holds<Weibull>() && g.get<Weibull>().beta >= 1.0) ||
                     (g.holds<ShiftedDistribution>() && (g.get<ShiftedDistribution>().base->holds<Exponential>() ||
                                                         (g.get<ShiftedDistribution>().base->holds<Weibull>() &&
                                                          g.get<ShiftedDistribution>().base->get<Weibull>().beta >= 1.0)));
  if (light) throw InapplicableError("find_h_function: hazard rate does not vanish");
  auto dist = std::make_shared<const Distribution>(g);
  return [dist](double x) {
    double r = 0.0;
    for (int j = 0; j <= 400; ++j) r = std::max(r, hazard_rate(*dist, x * std::pow(1.05, j)));
    const double v = r > 0 ? 1.0 / std::sqrt(r) : kInf;
    return std::min(std::max(v, 1.0), 0.5 * x);
  };
}

double hstar_window_integral(const Distribution& f, const std::function<double(double)>& h, double x) {
  const double hx = h(x);
  if (hx > 0.5 * x + 1e-12 * x) throw ValidationError("hstar_window_integral: requires h(x) <= x/2");
  return window_integral_ratio(f, x, hx);
}

namespace {

double quantile_x(const Distribution& f, double level, double lo, double cap) {
  const double target = std::log(level);
  if (log_tail(f, cap) > target) return cap;
  double a = lo;
  double b = cap;
  for (int i = 0; i < 200 && b - a > 1e-9 * b; ++i) {
    const double m = std::sqrt(a * b);
    if (log_tail(f, m) > target)
      a = m;
    else
      b = m;
  }
  return b;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = n == 1 ? hi : lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  return g;
}

}  // namespace

ClassificationReport classify_distribution(const Distribution& f, const ClassifyOptions& options) {
  const double x_lo = std::max(options.x_min, support_start(f) + 1.0);
  const double x_hi = options.x_max > 0 ? options.x_max : quantile_x(f, 1e-9, x_lo, 1e7);
  const std::vector<double> grid = geometric_grid(x_lo, std::max(x_hi, 2.0 * x_lo), options.points);
  ClassificationReport rep;
  auto add = [&](const std::string& name, RatioDiagnostic d) {
    if (d.policy.rule == VerdictRule::convergence) d.policy.tolerance = options.tolerance;
    d.finalize();
    rep.classes.push_back({name, d.verdict, std::move(d)});
  };
  add("heavy_tailed", heavy_tail_profile(f, grid));
  add("long_tailed", long_tailed_profile(f, 1.0, grid));
  add("dominated_variation", dominated_variation_profile(f, grid));
  rep.irv = irv_profile(f, {0.2, 0.1, 0.05, 0.02, 0.01}, grid);

  // subexponential: exact lattice self-convolution of a discretization
  {
    LatticeDistribution lat = [&]() {
      if (f.holds<LatticeDistribution>()) return f.get<LatticeDistribution>();
      const double top = grid.back();
      double step = top / static_cast<double>(options.conv_cells);
      return discretize(f, step, top + 2.0 * step);
    }();
    std::vector<double> xs;
    for (double x : grid)
      if (!lat.has_overflow() || x <= lat.overflow_above()) xs.push_back(x);
    try {
      add("subexponential", subexp_ratio_profile(lat, xs));
    } catch (const ValidationError& e) {
      RatioDiagnostic d;
      d.notes.emplace_back("bounded_support", 1.0);
      d.verdict.kind = VerdictKind::diverging;
      rep.classes.push_back({"subexponential", d.verdict, d});
    }
  }
  try {
    add("sstar", sstar_integral_profile(f, grid));
  } catch (const DivergenceError&) {
    RatioDiagnostic d;
    d.notes.emplace_back("infinite_mean", 1.0);
    d.verdict.kind = VerdictKind::diverging;
    rep.classes.push_back({"sstar", d.verdict, d});
  }
  return rep;
}

}  // namespace heavysum
