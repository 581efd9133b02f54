#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "heavysum/convolution.hpp"
#include "heavysum/diagnostic.hpp"
#include "heavysum/distribution.hpp"

namespace heavysum {

/// log P{X > x_start + i * step} on a regular grid. Values are exact for
/// x <= exact_until and upper bounds beyond it (overflow counted as exceeding).
struct TailGrid {
  double x_start = 0.0;
  double step = 1.0;
  std::vector<double> log_tail;
  double overflow_log_mass = kNegInf;
  double exact_until = kInf;

  [[nodiscard]] std::size_t size() const { return log_tail.size(); }
  [[nodiscard]] double x(std::size_t i) const { return x_start + static_cast<double>(i) * step; }
  /// Tail at an arbitrary x (piecewise constant between grid points).
  [[nodiscard]] double log_tail_at(double x) const;
  [[nodiscard]] double tail_at(double x) const;
};

TailGrid tail_grid(const LatticeDistribution& d);

/// `x,log_tail` rows with 17 significant digits.
void write_csv(const TailGrid& grid, std::ostream& out);

/// Law of S_n by binary powering. With options.x_hi left infinite the exact
/// range is the last point of `f`, or all of n * last point for bounded `f`.
LatticeDistribution conv_power(const LatticeDistribution& f, std::int64_t n,
                               const ConvolutionOptions& options = {});
TailGrid conv_power_tail(const LatticeDistribution& f, std::int64_t n,
                         const ConvolutionOptions& options = {});

/// Visits the laws of S_1, S_2, ..., S_{n_max} in order (S_n = S_{n-1} * F).
/// The visitor returns false to stop early.
using PowerVisitor = std::function<bool(std::int64_t n, const LatticeDistribution& law)>;
void for_each_power(const LatticeDistribution& f, std::int64_t n_max, const ConvolutionOptions& options,
                    const PowerVisitor& visit);

/// Law of M_n = max(S_0, ..., S_n) through the exact recursion
/// M_n = max(0, xi + M_{n-1}) in distribution. The lattice must contain 0.
LatticeDistribution max_partial_sum(const LatticeDistribution& f, std::int64_t n,
                                    const ConvolutionOptions& options = {});
TailGrid max_partial_sum_tail(const LatticeDistribution& f, std::int64_t n,
                              const ConvolutionOptions& options = {});
void for_each_max(const LatticeDistribution& f, std::int64_t n_max, const ConvolutionOptions& options,
                  const PowerVisitor& visit);

/// (1/|E xi|) * integral of the tail over [x, x + n|E xi|]; requires E xi < 0.
double korshunov_maxima_approx(const Distribution& f, std::int64_t n, double x);

/// Table of tail^{*n}(x) / tail(x) for n = 1..n_max over x_grid. The note
/// "sup_ratio_over_n" holds max_n sup_x ratio / n.
RatioDiagnostic kesten_ratio_table(const LatticeDistribution& f, std::int64_t n_max,
                                   const std::vector<double>& x_grid, const ConvolutionOptions& options = {});

/// sup over n <= n_max and grid x of tail^{*n}(x) / (n tail(x)); requires E xi < 0.
/// One point per n (at the maximizing x); verdict bounded_by(K).
RatioDiagnostic bound_check_negative_mean(const LatticeDistribution& f, std::int64_t n_max,
                                          const ConvolutionOptions& options = {});

/// sup over n <= n_max and grid x of tail^{*n}(x) tail(cn) / tail(x); requires
/// E xi >= 0 and c > E xi.
RatioDiagnostic bound_check_nonneg_mean(const LatticeDistribution& f, double c, std::int64_t n_max,
                                        const ConvolutionOptions& options = {});

enum class BigJumpVariant { two_sided, lower_bound };

/// two_sided: per x, max over n <= h(x) of |tail^{*n}(x) / (n tail(x)) - 1|,
/// verdict converging_to(0). lower_bound: per x, min over n <= h(x)^2 of the
/// ratio itself, verdict bounded_by.
RatioDiagnostic big_jump_range_check(const LatticeDistribution& f, const std::function<double(double)>& h,
                                     const std::vector<double>& x_grid,
                                     BigJumpVariant variant = BigJumpVariant::two_sided,
                                     const ConvolutionOptions& options = {});

}  // namespace heavysum
