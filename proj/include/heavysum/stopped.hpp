#pragma once

#include <cstdint>
#include <vector>

#include "heavysum/convolution.hpp"
#include "heavysum/counting.hpp"
#include "heavysum/diagnostic.hpp"
#include "heavysum/distribution.hpp"

namespace heavysum {

struct StoppedOptions {
  ConvolutionOptions conv;        ///< x_hi defaults to the last lattice point of F
  double rel_accuracy = 1e-3;     ///< stop once the remainder bracket is this small relative to the partial sum
  std::int64_t max_terms = 200000;
};

/// Truncated series for P{S_tau > x}: the true value lies in
/// [partial + remainder_lo, partial + remainder_hi].
struct StoppedTail {
  double x = 0.0;
  double partial = 0.0;
  double remainder_lo = 0.0;
  double remainder_hi = 0.0;

  [[nodiscard]] double estimate() const { return partial + 0.5 * (remainder_lo + remainder_hi); }
};

struct StoppedResult {
  std::vector<StoppedTail> rows;
  std::int64_t n_terms = 0;  ///< last n included in the series
  double tau_tail = 0.0;     ///< P{tau > n_terms}
};

/// sum_n P{tau = n} P{S_n > x} on the lattice, tau independent of F. The
/// remainder is bracketed by [0, P{tau > N}], tightened to
/// [P{tau > N} P{S_N > x}, P{tau > N}] when F is nonnegative.
/// Throws ResourceError if max_terms is reached or x leaves the exact range.
StoppedResult stopped_sum_tail_exact(const LatticeDistribution& f, const CountingDistribution& tau,
                                     const std::vector<double>& x_grid, const StoppedOptions& options = {});

/// Same for M_tau = max(S_0, ..., S_tau); the tightened bracket always applies.
StoppedResult stopped_max_tail_exact(const LatticeDistribution& f, const CountingDistribution& tau,
                                     const std::vector<double>& x_grid, const StoppedOptions& options = {});

/// E tau * tail(x).
double predictor_light(const Distribution& f, const CountingDistribution& tau, double x);
/// E tau * tail(x) + P{tau > x / E xi}; requires E xi > 0.
double predictor_comparable(const Distribution& f, const CountingDistribution& tau, double x);

enum class Predictor { light, comparable };

/// estimate / predictor per row, verdict converging_to(1).
RatioDiagnostic stopped_ratio_profile(const StoppedResult& exact, const Distribution& f,
                                      const CountingDistribution& tau, Predictor predictor);

/// P{tau > x / c} / tail(x), verdict converging_to(0).
RatioDiagnostic condition_eq1_check(const CountingDistribution& tau, const Distribution& f, double c,
                                    const std::vector<double>& x_grid);

/// Partial sums of P{tau = n} / tail(cn). Points hold the increments over
/// dyadic blocks of n; converging_to(0) means the series settles. The note
/// "partial_sum" holds the sum up to the last whole block (2^k - 1 <= n_max).
RatioDiagnostic condition_series_check(const CountingDistribution& tau, const Distribution& f, double c,
                                       std::int64_t n_max);

/// P{S_tau > x} / tail(x) for nonnegative F. Notes: "floor" (E tau) and
/// "min_upper_half" (smallest ratio over the upper half of x_grid).
RatioDiagnostic liminf_floor_check(const LatticeDistribution& f, const CountingDistribution& tau,
                                   const std::vector<double>& x_grid, const StoppedOptions& options = {});

/// P{X_k > x} for a Galton-Watson process started from one individual, with
/// offspring law on {0, 1, 2, ...} (step 1, origin 0). Generation counts
/// beyond the offspring grid are counted as exceeding x. generations <= 4.
std::vector<double> gw_generation_tail(const LatticeDistribution& offspring, int generations,
                                       const std::vector<double>& x_grid, const ConvolutionOptions& options = {});

}  // namespace heavysum
