#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heavysum {

/// log P{tau > n} = log_c - a ln n - b n^beta, used for n >= n_cap.
/// Covers power tails (b = 0), geometric tails (beta = 1) and Weibull-type tails.
struct CountingTailModel {
  double log_c = 0.0;
  double a = 0.0;
  double b = 0.0;
  double beta = 1.0;

  [[nodiscard]] double log_tail(double n) const;
};

/// Law of a counting variable on {0, 1, 2, ...}: explicit masses for
/// n <= n_cap and an optional analytic tail beyond.
class CountingDistribution {
 public:
  explicit CountingDistribution(std::vector<double> log_mass, std::optional<CountingTailModel> tail_model = std::nullopt,
                                std::string description = {});

  static CountingDistribution degenerate(std::int64_t n);
  /// P{tau = n} = (1 - p)^{n - min} p for n >= min.
  static CountingDistribution geometric(double p, std::int64_t min = 1);
  /// tau = ceil(X) for X ~ Pareto(alpha, xm): P{tau > n} = min(1, (xm / n)^alpha).
  static CountingDistribution pareto_count(double alpha, double xm = 1.0);
  /// P{tau > n} = min(1, (c n)^{-1} exp(-(c n)^beta)).
  static CountingDistribution weibull_count(double beta, double c);
  static CountingDistribution from_masses(const std::vector<double>& mass);

  [[nodiscard]] std::int64_t n_cap() const { return static_cast<std::int64_t>(log_mass_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& log_mass() const { return log_mass_; }
  [[nodiscard]] const std::optional<CountingTailModel>& tail_model() const { return model_; }
  [[nodiscard]] bool bounded() const { return !model_.has_value(); }
  [[nodiscard]] const std::string& description() const { return description_; }

  [[nodiscard]] double log_pmf(std::int64_t n) const;
  [[nodiscard]] double pmf(std::int64_t n) const;
  /// log P{tau > n}.
  [[nodiscard]] double log_tail(std::int64_t n) const;
  /// P{tau > x} for real x.
  [[nodiscard]] double tail(double x) const;
  /// E tau; throws DivergenceError for an infinite mean.
  [[nodiscard]] double mean() const;
  /// Largest n with P{tau = n} > 0 for bounded laws.
  [[nodiscard]] std::int64_t max_support() const;

 private:
  std::vector<double> log_mass_;
  std::vector<double> log_tail_;  // log P{tau > n}, n = 0..n_cap
  std::optional<CountingTailModel> model_;
  std::string description_;
  double mean_ = 0.0;
};

/// `degenerate n=2`, `geometric p=0.5 min=1`, `pareto_count alpha=1.8 xm=1`,
/// `weibull_count beta=0.7 c=1.266`, `counting mass=[0, 0.5, 0.5]`.
CountingDistribution parse_counting(std::string_view text);

}  // namespace heavysum
