#pragma once

#include <cstdint>
#include <vector>

#include "heavysum/convolution.hpp"
#include "heavysum/counting.hpp"
#include "heavysum/diagnostic.hpp"
#include "heavysum/distribution.hpp"
#include "heavysum/sim.hpp"
#include "heavysum/stopped.hpp"

namespace heavysum {

/// Subexponential law G with hazard R linear between the knots t_k = R_k^2,
/// where R_0 = 0, R_1 = 1 and R_{k+1} = exp(R_k) / R_k. Beyond t_{k_max} the
/// hazard keeps the slope r_{k_max - 1}.
struct PathologicalG {
  int k_max = 0;
  std::vector<double> R;     ///< R_0..R_{k_max}
  std::vector<double> t;     ///< t_k = R_k^2
  std::vector<double> r;     ///< r_k = 1 / (R_{k+1} + R_k), k < k_max
  HazardDistribution view{{0.0}, {0.0}, 0.0};
  double b = 0.0;            ///< mean of G
  std::vector<std::int64_t> n;  ///< n_k = floor(R_k)
  std::vector<double> x;        ///< x_k = t_k - 2 n_k b

  /// The negative-mean step law eta - 2b.
  [[nodiscard]] Distribution shifted_law() const;
};

/// k_max in 1..5; R_6 does not fit in a double.
PathologicalG build_pathological(int k_max);

struct SequenceRow {
  int k;
  double R, t, r;
  double identity_error;     ///< |r_k (R_{k+1} + R_k) - 1|
  double tail_error;         ///< relative error of tail(t_k) against exp(-R_k)
  double r_t_next_over_R;    ///< r_k t_{k+1} / R_{k+1}
  double r_t;                ///< r_k t_k
  double segment_integral;   ///< integral of the tail over [t_k, t_{k+1}]
  double segment_times_R;    ///< segment_integral * R_k
};

std::vector<SequenceRow> sequence_report(const PathologicalG& g);

/// Integral of tail(x - y) g(y) dy over [a, b], exact on hazard pieces.
double hazard_window_density(const HazardDistribution& h, double x, double a, double b);

struct JkCheck {
  int k;
  double value;
  double bound;  ///< tail(t_k) / (3 R_{k-1})
  bool pass;
};

/// J_k = integral over (t_k/4, 3t_k/4] of tail(t_k - y) G(dy). Throws
/// PreconditionError when the window is not inside (t_{k-1}, t_k - t_{k-1}].
JkCheck verify_Jk(const PathologicalG& g, int k);

/// (n^2 / 3) P{eta_1 + eta_2 > x, eta_1 > n, eta_2 > n}.
double two_jump_lower_bound(const PathologicalG& g, std::int64_t n, double x);

/// P{S_n > x_k} / (n tail(x_k)) for n = 1..n_k and xi = eta - 2b, computed on
/// the lattice of G at step max(0.05, t_k / 2^20). The lattice sum overshoots
/// by at most n * step; points hold the estimate at half that overshoot.
/// Notes: ratio (at n_k), ratio_lower and ratio_upper (sound bracket),
/// predicted_floor, shift_bound_ok.
RatioDiagnostic superlinearity_report(const PathologicalG& g, int k, const ConvolutionOptions& options = {});

/// kluppelberg_criterion on G just left of t_k for each k; note "target_k" holds
/// exp(R_{k-1}) / R_{k-1}^2.
RatioDiagnostic pathological_kluppelberg(const PathologicalG& g, const std::vector<int>& ks);

struct WeibullBlowup {
  double beta = 0.7;
  Weibull family;
  LatticeDistribution f;
  CountingDistribution tau;
  StoppedResult exact;
  RatioDiagnostic ratio;  ///< P{S_tau > x} / tail(x); note "first_x_over_10_Etau" (NaN if never)
};

/// Weibull(beta) steps with P{tau > n} = min(1, (cn)^{-1} exp(-(cn)^beta)), c = E xi.
/// beta must lie in (1/2, 1).
WeibullBlowup weibull_blowup_scenario(double beta, double step = 0.25, double x_max = 3000.0,
                                      std::size_t points = 24, const ConvolutionOptions& options = {});

struct StoppingBlowup {
  StoppingRule rule;
  Distribution f;            ///< ceil of Weibull(beta) on the integers, so xi >= 1
  double lower_bound_ratio;  ///< tail(x - H(x)) / tail(x) at the reference x
  double x;
};

/// tau = H(2 xi_1) + 1 with H(y) = min(ceil(y^{1-beta} ln(1+y)), ceil(y/2) - 1).
StoppingBlowup stopping_time_blowup_scenario(double beta, double x = 100.0);

}  // namespace heavysum
