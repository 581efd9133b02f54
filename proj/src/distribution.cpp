#include "heavysum/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "heavysum/errors.hpp"

namespace heavysum {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require(bool ok, const std::string& what, double got) {
  if (!ok) throw ValidationError(what + " (got " + fmt(got) + ")");
}

double log_normal_density(double z) {
  return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
}

// Accumulates exp(l_i) in a scaled linear register with Neumaier compensation.
struct LogAccumulator {
  double scale = kNegInf;
  double sum = 0.0;
  double comp = 0.0;

  void add(double l) {
    if (l == kNegInf) return;
    if (l > scale) {
      const double f = scale == kNegInf ? 0.0 : std::exp(scale - l);
      sum *= f;
      comp *= f;
      scale = l;
      add_linear(1.0);
    } else {
      add_linear(std::exp(l - scale));
    }
  }
  void add_linear(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  [[nodiscard]] double log() const {
    return scale == kNegInf ? kNegInf : scale + std::log(sum + comp);
  }
};

}  // namespace

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_sub_exp(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  const double d = b - a;
  return a + (d > -std::numbers::ln2 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d)));
}

double log_normal_upper_tail(double z) {
  if (z < 30.0) return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
  // Mills ratio asymptotic series; truncation error < 1e-10 relative here.
  const double u = 1.0 / (z * z);
  const double series = 1.0 - u * (1.0 - 3.0 * u * (1.0 - 5.0 * u * (1.0 - 7.0 * u)));
  return log_normal_density(z) - std::log(z) + std::log(series);
}

void validate(const FamilySpec& family) {
  std::visit(Overloaded{
                 [](const Pareto& p) {
                   require(p.alpha > 0 && std::isfinite(p.alpha), "pareto: alpha must be > 0", p.alpha);
                   require(p.xm > 0 && std::isfinite(p.xm), "pareto: xm must be > 0", p.xm);
                 },
                 [](const Weibull& w) {
                   require(w.beta > 0 && std::isfinite(w.beta), "weibull: beta must be > 0", w.beta);
                   require(w.scale > 0 && std::isfinite(w.scale), "weibull: scale must be > 0", w.scale);
                 },
                 [](const LogNormal& l) {
                   require(std::isfinite(l.mu), "lognormal: mu must be finite", l.mu);
                   require(l.sigma > 0 && std::isfinite(l.sigma), "lognormal: sigma must be > 0", l.sigma);
                 },
                 [](const Exponential& e) {
                   require(e.lambda > 0 && std::isfinite(e.lambda), "exponential: lambda must be > 0",
                           e.lambda);
                 },
             },
             family);
}

// ---------------------------------------------------------------------------
// HazardDistribution
// ---------------------------------------------------------------------------

HazardDistribution::HazardDistribution(std::vector<double> knots, std::vector<double> values,
                                       double final_slope)
    : knots_(std::move(knots)), values_(std::move(values)), final_slope_(final_slope) {
  if (knots_.empty()) throw ValidationError("hazard: knots must be non-empty");
  if (values_.size() != knots_.size())
    throw ValidationError("hazard: values must have the same length as knots");
  require(std::isfinite(knots_[0]), "hazard: knots must be finite", knots_[0]);
  require(values_[0] == 0.0, "hazard: values[0] must be 0", values_[0]);
  require(final_slope_ >= 0 && std::isfinite(final_slope_), "hazard: final_slope must be >= 0",
          final_slope_);
  slopes_.reserve(knots_.size() - 1);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    require(std::isfinite(knots_[i]) && knots_[i] > knots_[i - 1],
            "hazard: knots must be strictly increasing at index " + std::to_string(i), knots_[i]);
    require(std::isfinite(values_[i]) && values_[i] >= values_[i - 1],
            "hazard: values must be nondecreasing at index " + std::to_string(i), values_[i]);
    slopes_.push_back((values_[i] - values_[i - 1]) / (knots_[i] - knots_[i - 1]));
  }
}

double HazardDistribution::piece_end(std::size_t i) const {
  return i + 1 < knots_.size() ? knots_[i + 1] : kInf;
}

double HazardDistribution::piece_slope(std::size_t i) const {
  return i < slopes_.size() ? slopes_[i] : final_slope_;
}

std::size_t HazardDistribution::piece_of(double x) const {
  const auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
  if (it == knots_.begin()) return 0;
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

double HazardDistribution::hazard(double x) const {
  if (x <= knots_[0]) return 0.0;
  const std::size_t i = piece_of(x);
  if (i + 1 < knots_.size() && x == knots_[i + 1]) return values_[i + 1];
  return values_[i] + piece_slope(i) * (x - knots_[i]);
}

double HazardDistribution::rate(double x) const { return piece_slope(piece_of(x)); }

double HazardDistribution::inverse_hazard(double h) const {
  if (h <= 0) return knots_[0];
  const auto it = std::lower_bound(values_.begin(), values_.end(), h);
  const auto j = static_cast<std::size_t>(it - values_.begin());
  if (j < values_.size()) {
    if (values_[j] == h || j == 0) return knots_[j];
    return std::min(knots_[j], knots_[j - 1] + (h - values_[j - 1]) / slopes_[j - 1]);
  }
  if (final_slope_ == 0) return kInf;
  return knots_.back() + (h - values_.back()) / final_slope_;
}

// ---------------------------------------------------------------------------
// LatticeDistribution
// ---------------------------------------------------------------------------

LatticeDistribution::LatticeDistribution(double step, std::int64_t offset,
                                         std::vector<double> log_mass, double overflow_log_mass,
                                         double origin, double overflow_above, double overflow_mean)
    : step_(step),
      offset_(offset),
      origin_(origin),
      log_mass_(std::move(log_mass)),
      overflow_log_mass_(overflow_log_mass) {
  require(step_ > 0 && std::isfinite(step_), "lattice: step must be > 0", step_);
  require(std::isfinite(origin_), "lattice: origin must be finite", origin_);
  if (log_mass_.empty()) throw ValidationError("lattice: mass must be non-empty");
  for (double& l : log_mass_) {
    require(!std::isnan(l) && l <= 1e-9, "lattice: log-mass entries must be <= 0", l);
    l = std::min(l, 0.0);
  }
  require(!std::isnan(overflow_log_mass_) && overflow_log_mass_ <= 1e-9,
          "lattice: overflow log-mass must be <= 0", overflow_log_mass_);
  overflow_log_mass_ = std::min(overflow_log_mass_, 0.0);
  overflow_above_ = std::isnan(overflow_above) ? last_point() : overflow_above;
  overflow_mean_ = std::isnan(overflow_mean) ? overflow_above_ + step_ : overflow_mean;

  log_suffix_.assign(log_mass_.size() + 1, kNegInf);
  LogAccumulator acc;
  acc.add(overflow_log_mass_);
  log_suffix_.back() = acc.log();
  for (std::size_t i = log_mass_.size(); i-- > 0;) {
    acc.add(log_mass_[i]);
    log_suffix_[i] = acc.log();
  }
  const double total = std::exp(log_suffix_.front());
  require(std::abs(total - 1.0) <= 1e-9, "lattice: masses must sum to 1", total);
}

LatticeDistribution LatticeDistribution::from_masses(double step, std::int64_t offset,
                                                     const std::vector<double>& mass, double origin) {
  std::vector<double> lm(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i) {
    require(mass[i] >= 0 && std::isfinite(mass[i]),
            "lattice: mass entries must be >= 0 at index " + std::to_string(i), mass[i]);
    lm[i] = mass[i] > 0 ? std::log(mass[i]) : kNegInf;
  }
  return {step, offset, std::move(lm), kNegInf, origin};
}

std::int64_t LatticeDistribution::floor_index(double x) const {
  const double f = std::floor((x - origin_) / step_ - static_cast<double>(offset_) + 1e-9);
  if (f < 0) return -1;
  if (f >= static_cast<double>(size())) return static_cast<std::int64_t>(size()) - 1;
  return static_cast<std::int64_t>(f);
}

double LatticeDistribution::log_tail(double x) const {
  if (!(x == x)) return kNegInf;
  const std::int64_t i = floor_index(x);
  if (i < 0) return 0.0;
  return log_suffix_[static_cast<std::size_t>(i) + 1];
}

double LatticeDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    if (log_mass_[i] > kNegInf) m += std::exp(log_mass_[i]) * point(i);
  if (has_overflow()) {
    if (!std::isfinite(overflow_mean_))
      throw DivergenceError("lattice: overflow cell has infinite conditional mean");
    m += std::exp(overflow_log_mass_) * overflow_mean_;
  }
  return m;
}

bool LatticeDistribution::nonnegative() const { return first_point() > -1e-9 * step_; }

// ---------------------------------------------------------------------------
// Distribution
// ---------------------------------------------------------------------------

Distribution::Distribution(Pareto d) : v_(d) { validate(FamilySpec{d}); }
Distribution::Distribution(Weibull d) : v_(d) { validate(FamilySpec{d}); }
Distribution::Distribution(LogNormal d) : v_(d) { validate(FamilySpec{d}); }
Distribution::Distribution(Exponential d) : v_(d) { validate(FamilySpec{d}); }
Distribution::Distribution(FamilySpec d)
    : v_(std::visit([](const auto& f) -> Variant { return f; }, d)) {
  validate(d);
}
Distribution::Distribution(ShiftedDistribution d) : v_(std::move(d)) {
  const auto& s = std::get<ShiftedDistribution>(v_);
  if (!s.base) throw ValidationError("shift: base distribution is missing");
  require(std::isfinite(s.shift), "shift: by must be finite", s.shift);
}

Distribution shifted(const Distribution& base, double by) {
  return ShiftedDistribution{std::make_shared<const Distribution>(base), by};
}

double log_tail(const Distribution& d, double x) {
  return std::visit(
      Overloaded{
          [x](const Pareto& p) { return x <= p.xm ? 0.0 : -p.alpha * std::log(x / p.xm); },
          [x](const Weibull& w) { return x <= 0 ? 0.0 : -std::pow(x / w.scale, w.beta); },
          [x](const LogNormal& l) {
            return x <= 0 ? 0.0 : log_normal_upper_tail((std::log(x) - l.mu) / l.sigma);
          },
          [x](const Exponential& e) { return x <= 0 ? 0.0 : -e.lambda * x; },
          [x](const HazardDistribution& h) { return -h.hazard(x); },
          [x](const LatticeDistribution& l) { return l.log_tail(x); },
          [x](const ShiftedDistribution& s) { return log_tail(*s.base, x - s.shift); },
      },
      d.variant());
}

double tail(const Distribution& d, double x) { return std::exp(log_tail(d, x)); }

double support_start(const Distribution& d) {
  return std::visit(Overloaded{
                        [](const Pareto& p) { return p.xm; },
                        [](const Weibull&) { return 0.0; },
                        [](const LogNormal&) { return 0.0; },
                        [](const Exponential&) { return 0.0; },
                        [](const HazardDistribution& h) { return h.support_start(); },
                        [](const LatticeDistribution& l) { return l.first_point(); },
                        [](const ShiftedDistribution& s) { return support_start(*s.base) + s.shift; },
                    },
                    d.variant());
}

double log_tail_drop(const Distribution& d, double a, double b) {
  if (b <= a) return 0.0;
  return std::visit(
      Overloaded{
          [&](const Pareto& p) {
            if (a <= p.xm) return log_tail(d, b);
            return -p.alpha * std::log1p((b - a) / a);
          },
          [&](const Weibull& w) {
            if (a <= 0) return log_tail(d, b);
            return -std::pow(a / w.scale, w.beta) * std::expm1(w.beta * std::log1p((b - a) / a));
          },
          [&](const Exponential& e) { return -e.lambda * (b - std::max(a, 0.0)); },
          [&](const HazardDistribution& h) {
            if (a >= h.support_start()) {
              const std::size_t i = h.piece_of(a);
              if (b <= h.piece_end(i) && a > h.piece_begin(i)) return -h.piece_slope(i) * (b - a);
            }
            return -(h.hazard(b) - h.hazard(a));
          },
          [&](const ShiftedDistribution& s) { return log_tail_drop(*s.base, a - s.shift, b - s.shift); },
          [&](const auto&) { return log_tail(d, b) - log_tail(d, a); },
      },
      d.variant());
}

namespace {

double hazard_integrated_tail(const HazardDistribution& h, double a, double b) {
  double total = 0.0;
  const double s = h.support_start();
  if (a < s) {
    total += std::min(b, s) - a;
    a = s;
  }
  if (b <= a) return total;
  for (std::size_t i = h.piece_of(a); i < h.piece_count() && a < b; ++i) {
    const double hi = std::min(b, h.piece_end(i));
    if (hi <= a) continue;
    const double r = h.piece_slope(i);
    const double ta = std::exp(-h.hazard(a));
    if (hi == kInf) {
      if (r == 0) return kInf;
      total += ta / r;
    } else if (r == 0) {
      total += ta * (hi - a);
    } else {
      total += ta * -std::expm1(-r * (hi - a)) / r;
    }
    a = hi;
  }
  return total;
}

double lattice_integrated_tail(const LatticeDistribution& l, double a, double b) {
  // Below the grid the tail is 1; between consecutive points it is constant;
  // past the last point the overflow is treated as a point mass at its mean.
  double total = 0.0;
  const double p0 = l.first_point();
  if (a < p0) {
    total += std::min(b, p0) - a;
    a = p0;
  }
  const double plast = l.last_point();
  const double hi_grid = std::min(b, plast);
  if (a < hi_grid) {
    std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(0, l.floor_index(a)));
    while (a < hi_grid) {
      const double next = std::min(hi_grid, l.point(i + 1));
      if (next > a) total += std::exp(l.log_tail_from(i + 1)) * (next - a);
      a = std::max(a, next);
      ++i;
    }
  }
  if (b > plast && l.has_overflow()) {
    const double lo = std::max(a, plast);
    const double hi = std::min(b, l.overflow_mean());
    if (hi > lo) {
      if (hi == kInf) return kInf;
      total += std::exp(l.overflow_log_mass()) * (hi - lo);
    }
  }
  return total;
}

double normal_upper(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace

double integrated_tail(const Distribution& d, double a, double b) {
  if (std::isnan(a) || std::isnan(b) || a > b)
    throw ValidationError("integrated_tail: requires a <= b");
  if (a == b) return 0.0;
  if (a == kNegInf) throw ValidationError("integrated_tail: a must be finite");
  return std::visit(
      Overloaded{
          [&](const Pareto& p) {
            double total = 0.0;
            if (a < p.xm) {
              total += std::min(b, p.xm) - a;
              a = p.xm;
            }
            if (b <= a) return total;
            if (p.alpha == 1.0) return b == kInf ? kInf : total + p.xm * std::log(b / a);
            if (b == kInf && p.alpha < 1.0) return kInf;
            // xm^alpha / (alpha - 1) * (a^{1-alpha} - b^{1-alpha}), written in tail form
            const double ta = std::pow(p.xm / a, p.alpha);
            const double ratio = b == kInf ? 0.0 : std::pow(a / b, p.alpha - 1.0);
            return total + ta * a * (1.0 - ratio) / (p.alpha - 1.0);
          },
          [&](const Weibull& w) {
            double total = 0.0;
            if (a < 0) {
              total += std::min(b, 0.0) - a;
              a = 0;
            }
            if (b <= a) return total;
            const double k = 1.0 / w.beta;
            const double ua = std::pow(a / w.scale, w.beta);
            const double ga = boost::math::tgamma(k, ua);
            const double gb = b == kInf ? 0.0 : boost::math::tgamma(k, std::pow(b / w.scale, w.beta));
            return total + w.scale * k * (ga - gb);
          },
          [&](const LogNormal& l) {
            double total = 0.0;
            if (a < 0) {
              total += std::min(b, 0.0) - a;
              a = 0;
            }
            if (b <= a) return total;
            auto z = [&](double y) { return y <= 0 ? kNegInf : (std::log(y) - l.mu) / l.sigma; };
            const double za = z(a);
            const double zb = b == kInf ? kInf : z(b);
            const double boundary = (b == kInf ? 0.0 : b * normal_upper(zb)) - a * normal_upper(za);
            const double m = std::exp(l.mu + 0.5 * l.sigma * l.sigma);
            return total + boundary + m * (normal_upper(za - l.sigma) - normal_upper(zb - l.sigma));
          },
          [&](const Exponential& e) {
            double total = 0.0;
            if (a < 0) {
              total += std::min(b, 0.0) - a;
              a = 0;
            }
            if (b <= a) return total;
            const double lb = b == kInf ? 1.0 : -std::expm1(-e.lambda * (b - a));
            return total + std::exp(-e.lambda * a) * lb / e.lambda;
          },
          [&](const HazardDistribution& h) { return hazard_integrated_tail(h, a, b); },
          [&](const LatticeDistribution& l) { return lattice_integrated_tail(l, a, b); },
          [&](const ShiftedDistribution& s) {
            return integrated_tail(*s.base, a - s.shift, b == kInf ? kInf : b - s.shift);
          },
      },
      d.variant());
}

double mean(const Distribution& d) {
  return std::visit(
      Overloaded{
          [](const Pareto& p) {
            if (p.alpha <= 1.0) throw DivergenceError("pareto: mean is infinite for alpha <= 1");
            return p.alpha * p.xm / (p.alpha - 1.0);
          },
          [](const Weibull& w) { return w.scale * std::tgamma(1.0 + 1.0 / w.beta); },
          [](const LogNormal& l) { return std::exp(l.mu + 0.5 * l.sigma * l.sigma); },
          [](const Exponential& e) { return 1.0 / e.lambda; },
          [](const HazardDistribution& h) {
            const double m = hazard_integrated_tail(h, h.support_start(), kInf);
            if (!std::isfinite(m)) throw DivergenceError("hazard: tail integral diverges (final_slope = 0)");
            return h.support_start() + m;
          },
          [](const LatticeDistribution& l) { return l.mean(); },
          [](const ShiftedDistribution& s) { return mean(*s.base) + s.shift; },
      },
      d.variant());
}

double hazard_rate(const Distribution& d, double x) {
  return std::visit(
      Overloaded{
          [x](const Pareto& p) { return x < p.xm ? 0.0 : p.alpha / x; },
          [x](const Weibull& w) {
            if (x <= 0) return w.beta < 1 ? kInf : (w.beta == 1 ? 1.0 / w.scale : 0.0);
            return w.beta / w.scale * std::pow(x / w.scale, w.beta - 1.0);
          },
          [x](const LogNormal& l) {
            if (x <= 0) return 0.0;
            const double z = (std::log(x) - l.mu) / l.sigma;
            return std::exp(log_normal_density(z) - log_normal_upper_tail(z)) / (l.sigma * x);
          },
          [](const Exponential& e) { return e.lambda; },
          [x](const HazardDistribution& h) { return x < h.support_start() ? 0.0 : h.rate(x); },
          [](const LatticeDistribution&) -> double {
            throw InapplicableError("hazard_rate: not defined for lattice distributions");
          },
          [x](const ShiftedDistribution& s) { return hazard_rate(*s.base, x - s.shift); },
      },
      d.variant());
}

namespace {

double sample_from_uniform(const Distribution& d, double u) {
  return std::visit(
      Overloaded{
          [u](const Pareto& p) { return p.xm * std::pow(u, -1.0 / p.alpha); },
          [u](const Weibull& w) { return w.scale * std::pow(-std::log(u), 1.0 / w.beta); },
          [u](const LogNormal& l) {
            if (u >= 1.0) return 0.0;
            return std::exp(l.mu + l.sigma * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u));
          },
          [u](const Exponential& e) { return -std::log(u) / e.lambda; },
          [u](const HazardDistribution& h) { return h.inverse_hazard(-std::log(u)); },
          [u](const LatticeDistribution& l) {
            // largest i with P{X >= point(i)} >= u
            const double lu = std::log(u);
            if (l.has_overflow() && l.log_tail_from(l.size()) >= lu) return kInf;
            std::size_t lo = 0;
            std::size_t hi = l.size() - 1;
            while (lo < hi) {
              const std::size_t mid = (lo + hi + 1) / 2;
              if (l.log_tail_from(mid) >= lu)
                lo = mid;
              else
                hi = mid - 1;
            }
            return l.point(lo);
          },
          [u](const ShiftedDistribution& s) { return sample_from_uniform(*s.base, u) + s.shift; },
      },
      d.variant());
}

}  // namespace

double sample(const Distribution& d, CounterStream& stream) { return sample_from_uniform(d, stream.uniform()); }

// ---------------------------------------------------------------------------
// Lattice constructions
// ---------------------------------------------------------------------------

namespace {

double shortest_hazard_piece(const Distribution& d) {
  if (d.holds<HazardDistribution>()) {
    const auto& h = d.get<HazardDistribution>();
    double m = kInf;
    for (std::size_t i = 0; i + 1 < h.piece_count(); ++i)
      m = std::min(m, h.piece_end(i) - h.piece_begin(i));
    return m;
  }
  if (d.holds<ShiftedDistribution>()) return shortest_hazard_piece(*d.get<ShiftedDistribution>().base);
  return kInf;
}

}  // namespace

LatticeDistribution discretize(const Distribution& d, double step, double x_max) {
  require(step > 0 && std::isfinite(step), "discretize: step must be > 0", step);
  require(std::isfinite(x_max), "discretize: x_max must be finite", x_max);
  if (d.holds<ShiftedDistribution>()) {
    const auto& s = d.get<ShiftedDistribution>();
    return shift_lattice(discretize(*s.base, step, x_max - s.shift), s.shift);
  }
  if (d.holds<LatticeDistribution>()) {
    const auto& l = d.get<LatticeDistribution>();
    if (std::abs(l.step() - step) <= 1e-12 * step) return l;
    throw ValidationError("discretize: cannot re-grid a lattice distribution to a different step");
  }
  if (step > shortest_hazard_piece(d) * (1.0 + 1e-12))
    throw ValidationError("discretize: step " + fmt(step) + " exceeds the shortest hazard segment");

  const double s = support_start(d);
  require(x_max >= s + step, "discretize: x_max must be >= support start + step", x_max);
  const auto k0 = static_cast<std::int64_t>(std::floor(s / step + 1e-9)) + 1;
  const auto k1 = static_cast<std::int64_t>(std::floor(x_max / step + 1e-9));
  if (k1 < k0) throw ValidationError("discretize: grid is empty");

  std::vector<double> lm(static_cast<std::size_t>(k1 - k0 + 1));
  double prev_x = static_cast<double>(k0 - 1) * step;
  double prev_log = std::min(0.0, log_tail(d, prev_x));
  for (std::int64_t k = k0; k <= k1; ++k) {
    const double x = static_cast<double>(k) * step;
    const double drop = log_tail_drop(d, prev_x, x);
    lm[static_cast<std::size_t>(k - k0)] = drop == 0.0 ? kNegInf : prev_log + std::log(-std::expm1(drop));
    prev_log = log_tail(d, x);
    prev_x = x;
  }
  // mass below the grid cannot exist, but (k0-1)*step may sit slightly inside the support
  const double lead = log_tail(d, static_cast<double>(k0 - 1) * step);
  if (lead < 0.0) lm[0] = log_add_exp(lm[0], log_sub_exp(0.0, lead));

  const double last = static_cast<double>(k1) * step;
  const double over = log_tail(d, last);
  double over_mean = kInf;
  if (over > kNegInf) {
    const double it = integrated_tail(d, last, kInf);
    over_mean = std::isfinite(it) ? last + it / std::exp(over) + 0.5 * step : kInf;
  }
  return {step, k0, std::move(lm), over, 0.0, last, over > kNegInf ? over_mean : last + step};
}

LatticeDistribution clamp_below(const LatticeDistribution& d, double floor_value) {
  const double t = (floor_value - d.origin()) / d.step() - static_cast<double>(d.offset());
  const double j_real = std::round(t);
  if (std::abs(t - j_real) > 1e-6) throw ValidationError("clamp_below: floor is not a grid point");
  const auto j = static_cast<std::int64_t>(j_real);
  if (j <= 0) return d;
  const auto n = static_cast<std::int64_t>(d.size());
  std::vector<double> lm;
  if (j >= n) {
    lm.push_back(log_sub_exp(d.total_log_mass(), d.overflow_log_mass()));
  } else {
    lm.reserve(static_cast<std::size_t>(n - j));
    LogAccumulator acc;
    for (std::int64_t i = 0; i <= j; ++i) acc.add(d.log_mass()[static_cast<std::size_t>(i)]);
    lm.push_back(acc.log());
    for (std::int64_t i = j + 1; i < n; ++i) lm.push_back(d.log_mass()[static_cast<std::size_t>(i)]);
  }
  return {d.step(), d.offset() + j, std::move(lm), d.overflow_log_mass(), d.origin(),
          std::max(d.overflow_above(), floor_value), std::max(d.overflow_mean(), floor_value)};
}

LatticeDistribution shift_lattice(const LatticeDistribution& d, double shift) {
  const double k = shift / d.step();
  const double kr = std::round(k);
  std::vector<double> lm(d.log_mass().begin(), d.log_mass().end());
  if (std::abs(k - kr) <= 1e-9 * std::max(1.0, std::abs(k)))
    return {d.step(), d.offset() + static_cast<std::int64_t>(kr), std::move(lm), d.overflow_log_mass(),
            d.origin(), d.overflow_above() + shift, d.overflow_mean() + shift};
  return {d.step(), d.offset(), std::move(lm), d.overflow_log_mass(), d.origin() + shift,
          d.overflow_above() + shift, d.overflow_mean() + shift};
}

}  // namespace heavysum
