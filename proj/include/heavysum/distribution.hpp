#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "heavysum/rng.hpp"

namespace heavysum {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(e^a + e^b), exact for infinite arguments.
double log_add_exp(double a, double b);
/// log(e^a - e^b) for a >= b; returns -inf when a == b.
double log_sub_exp(double a, double b);
/// log of a standard normal upper tail, accurate far into the tail.
double log_normal_upper_tail(double z);

// ---------------------------------------------------------------------------
// Parametric families
// ---------------------------------------------------------------------------

/// Tail (xm / x)^alpha on [xm, inf).
struct Pareto {
  double alpha;
  double xm;
};

/// Tail exp(-(x / scale)^beta) on [0, inf).
struct Weibull {
  double beta;
  double scale = 1.0;
};

struct LogNormal {
  double mu;
  double sigma;
};

struct Exponential {
  double lambda;
};

using FamilySpec = std::variant<Pareto, Weibull, LogNormal, Exponential>;

/// Throws ValidationError naming the offending field.
void validate(const FamilySpec& family);

// ---------------------------------------------------------------------------
// Hazard-function law
// ---------------------------------------------------------------------------

/// Continuous law with a continuous, nondecreasing, piecewise-linear hazard
/// function R; the tail is exactly exp(-R(x)). Segment i is (x_i, x_{i+1}];
/// beyond the last knot R grows at `final_slope`.
class HazardDistribution {
 public:
  HazardDistribution(std::vector<double> knots, std::vector<double> values, double final_slope);

  [[nodiscard]] std::span<const double> knots() const { return knots_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  /// Slope of each finite segment; size() == knots().size() - 1.
  [[nodiscard]] std::span<const double> slopes() const { return slopes_; }
  [[nodiscard]] double final_slope() const { return final_slope_; }
  [[nodiscard]] double support_start() const { return knots_.front(); }

  /// Number of pieces including the unbounded last one.
  [[nodiscard]] std::size_t piece_count() const { return knots_.size(); }
  [[nodiscard]] double piece_begin(std::size_t i) const { return knots_[i]; }
  [[nodiscard]] double piece_end(std::size_t i) const;
  [[nodiscard]] double piece_slope(std::size_t i) const;
  /// Piece containing x, with the convention x in (x_i, x_{i+1}]; 0 for x <= x_0.
  [[nodiscard]] std::size_t piece_of(double x) const;

  /// R(x); zero below the support.
  [[nodiscard]] double hazard(double x) const;
  /// Hazard rate r(x) = slope of the piece containing x (left-continuous).
  [[nodiscard]] double rate(double x) const;
  /// Smallest x with R(x) >= h.
  [[nodiscard]] double inverse_hazard(double h) const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double final_slope_;
};

// ---------------------------------------------------------------------------
// Lattice law
// ---------------------------------------------------------------------------

/// Probability mass function on points origin + (offset + i) * step, stored as
/// log-probabilities. Mass that did not fit on the grid is kept in a separate
/// overflow cell: it is known to lie strictly above `overflow_above()`, and
/// its conditional mean is `overflow_mean()` (used only by mean/integrals).
class LatticeDistribution {
 public:
  LatticeDistribution(double step, std::int64_t offset, std::vector<double> log_mass,
                      double overflow_log_mass = kNegInf, double origin = 0.0,
                      double overflow_above = std::numeric_limits<double>::quiet_NaN(),
                      double overflow_mean = std::numeric_limits<double>::quiet_NaN());

  /// Build from linear probabilities.
  static LatticeDistribution from_masses(double step, std::int64_t offset,
                                         const std::vector<double>& mass, double origin = 0.0);

  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] std::int64_t offset() const { return offset_; }
  [[nodiscard]] double origin() const { return origin_; }
  [[nodiscard]] std::span<const double> log_mass() const { return log_mass_; }
  [[nodiscard]] std::size_t size() const { return log_mass_.size(); }
  [[nodiscard]] double overflow_log_mass() const { return overflow_log_mass_; }
  [[nodiscard]] double overflow_above() const { return overflow_above_; }
  [[nodiscard]] double overflow_mean() const { return overflow_mean_; }
  [[nodiscard]] bool has_overflow() const { return overflow_log_mass_ > kNegInf; }

  [[nodiscard]] double point(std::size_t i) const {
    return origin_ + static_cast<double>(offset_ + static_cast<std::int64_t>(i)) * step_;
  }
  [[nodiscard]] double first_point() const { return point(0); }
  [[nodiscard]] double last_point() const { return point(size() - 1); }

  /// log P{X >= point(i)}; i == size() gives the overflow mass.
  [[nodiscard]] double log_tail_from(std::size_t i) const { return log_suffix_[i]; }
  /// log P{X > x}. Exact up to overflow_above(); an upper bound beyond it.
  [[nodiscard]] double log_tail(double x) const;
  /// Index of the largest grid point <= x, or -1 when x is below the grid.
  [[nodiscard]] std::int64_t floor_index(double x) const;

  [[nodiscard]] double mean() const;
  [[nodiscard]] double total_log_mass() const { return log_suffix_.front(); }
  /// All grid points nonnegative (overflow is always to the right).
  [[nodiscard]] bool nonnegative() const;

 private:
  double step_;
  std::int64_t offset_;
  double origin_;
  std::vector<double> log_mass_;
  double overflow_log_mass_;
  double overflow_above_;
  double overflow_mean_;
  std::vector<double> log_suffix_;
};

// ---------------------------------------------------------------------------
// The distribution sum type
// ---------------------------------------------------------------------------

class Distribution;

/// Law of base + shift.
struct ShiftedDistribution {
  std::shared_ptr<const Distribution> base;
  double shift;
};

class Distribution {
 public:
  using Variant = std::variant<Pareto, Weibull, LogNormal, Exponential, HazardDistribution,
                               LatticeDistribution, ShiftedDistribution>;

  Distribution(Pareto d);
  Distribution(Weibull d);
  Distribution(LogNormal d);
  Distribution(Exponential d);
  Distribution(FamilySpec d);
  Distribution(HazardDistribution d) : v_(std::move(d)) {}
  Distribution(LatticeDistribution d) : v_(std::move(d)) {}
  Distribution(ShiftedDistribution d);

  [[nodiscard]] const Variant& variant() const { return v_; }
  template <class T>
  [[nodiscard]] bool holds() const {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  [[nodiscard]] const T& get() const {
    return std::get<T>(v_);
  }

 private:
  Variant v_;
};

[[nodiscard]] Distribution shifted(const Distribution& base, double by);

[[nodiscard]] double tail(const Distribution& d, double x);
[[nodiscard]] double log_tail(const Distribution& d, double x);
/// E xi. Throws DivergenceError when the tail integral is infinite.
[[nodiscard]] double mean(const Distribution& d);
/// Integral of the tail over [a, b]; b may be +inf.
[[nodiscard]] double integrated_tail(const Distribution& d, double a, double b);
/// Left end of the support (-inf never occurs for the supported families).
[[nodiscard]] double support_start(const Distribution& d);
/// Hazard rate r(x) = f(x) / tail(x); not defined for lattice laws.
[[nodiscard]] double hazard_rate(const Distribution& d, double x);
/// log tail(b) - log tail(a) for a <= b, without cancellation where a closed form exists.
[[nodiscard]] double log_tail_drop(const Distribution& d, double a, double b);
/// Inverse-transform draw using one uniform. A lattice draw that lands in the
/// overflow cell returns +inf ("beyond every grid point").
[[nodiscard]] double sample(const Distribution& d, CounterStream& stream);

/// Lattice law of step * ceil(xi / step): cell (x_{k-1}, x_k] is assigned to
/// x_k, so the lattice tail equals the continuous tail at every grid point and
/// dominates it in between. Mass above x_max goes to the overflow cell.
[[nodiscard]] LatticeDistribution discretize(const Distribution& d, double step, double x_max);

/// Lattice law of max(X, floor_value); floor_value must be a grid point.
[[nodiscard]] LatticeDistribution clamp_below(const LatticeDistribution& d, double floor_value);
/// Law of X + shift; folds into the integer offset when shift is a multiple of the step.
[[nodiscard]] LatticeDistribution shift_lattice(const LatticeDistribution& d, double shift);

}  // namespace heavysum
