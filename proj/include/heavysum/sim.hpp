#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heavysum/counting.hpp"
#include "heavysum/distribution.hpp"
#include "heavysum/rng.hpp"

namespace heavysum {

/// A rule deciding after each step whether to stop. The decision at step n
/// sees only (n, S_n, xi_n) and state folded from earlier steps.
struct StoppingRule {
  enum class Kind { independent, bounded_first_exceed, first_nonpositive, h_of_first_increment };

  Kind kind = Kind::independent;
  std::optional<CountingDistribution> tau;  ///< independent
  double threshold = 0.0;                   ///< bounded_first_exceed: stop once S_n > threshold
  std::int64_t cap = 1;                     ///< bounded_first_exceed: ... or at n = cap
  double h_beta = 0.5;                      ///< h_of_first_increment: tau = H(2 xi_1) + 1
  double h_scale = 1.0;                     ///< H(y) = min(ceil(h_scale y^{1-beta} ln(1+y)), ceil(y/2) - 1), >= 0

  [[nodiscard]] std::string describe() const;
};

/// `independent tau=(geometric p=0.5)`, `bounded_first_exceed a=5 N=10`,
/// `first_nonpositive`, `h_of_first_increment beta=0.5 scale=1`.
StoppingRule parse_stopping_rule(std::string_view text);

/// The H function of the h_of_first_increment rule.
std::int64_t first_increment_h(double y, double beta, double scale);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  bool valid = true;
};

struct SimOptions {
  std::int64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::int64_t step_cap = 1000000;       ///< per-path hard cap on the number of steps
  std::int64_t population_cap = 100000000;
  double breach_limit = 1e-3;            ///< estimates are invalid above this breach rate
};

struct StoppedSimResult {
  std::vector<double> x;
  std::vector<Estimate> sum;  ///< P{S_tau > x}
  std::vector<Estimate> max;  ///< P{M_tau > x}
  Estimate tau_mean;
  std::int64_t truncated = 0;  ///< paths that hit the step cap (stopped there)
};

/// Monte Carlo over shared paths for all x at once. Work is split in fixed
/// batches, each with its own stream derived from (seed, batch index), so the
/// result does not depend on the thread count.
StoppedSimResult simulate_stopped_sum(const Distribution& f, const StoppingRule& rule,
                                      const std::vector<double>& x_grid, const SimOptions& options = {});

/// P{X_generations > x} for a Galton-Watson process from one ancestor.
/// Paths whose population passes the cap count as exceeding x.
std::vector<Estimate> simulate_gw(const LatticeDistribution& offspring, int generations,
                                  const std::vector<double>& x_grid, const SimOptions& options = {});

/// (value - exact) / std_error.
double compare_exact(const Estimate& e, double exact);

/// Draw from a counting law by inversion.
std::int64_t sample_counting(const CountingDistribution& tau, CounterStream& stream);

}  // namespace heavysum
