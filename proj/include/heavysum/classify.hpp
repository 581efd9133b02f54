#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "heavysum/convolution.hpp"
#include "heavysum/diagnostic.hpp"
#include "heavysum/distribution.hpp"

namespace heavysum {

/// tail(x + y) / tail(x); for lattices y is rounded to the nearest multiple of the step.
RatioDiagnostic long_tailed_profile(const Distribution& f, double y, const std::vector<double>& x_grid);

/// tail(x) / tail(2x); bounded_by(sup) unless the ratios keep growing.
RatioDiagnostic dominated_variation_profile(const Distribution& f, const std::vector<double>& x_grid);

/// For each eps, the max over the upper half of x_grid of tail((1 - eps) x) / tail(x).
IrvProfile irv_profile(const Distribution& f, const std::vector<double>& eps_grid, const std::vector<double>& x_grid);

/// -log tail(x) / x, converging to 0 for heavy tails.
RatioDiagnostic heavy_tail_profile(const Distribution& f, const std::vector<double>& x_grid);

/// tail^{*2}(x) / tail(x) on the lattice, target 2. Lattices with mass below 0
/// are first conditioned on [0, inf).
RatioDiagnostic subexp_ratio_profile(const LatticeDistribution& f, const std::vector<double>& x_grid,
                                     const ConvolutionOptions& options = {});

/// Law of X given X >= 0.
LatticeDistribution condition_nonnegative(const LatticeDistribution& f);

/// Integral of tail over [0, inf) (the positive part of the support).
double positive_tail_integral(const Distribution& f);

/// Integral of tail(x - y) tail(y) over [lo, x - lo], divided by tail(x).
/// Exact on hazard pieces and lattice cells, adaptive Simpson otherwise.
double window_integral_ratio(const Distribution& f, double x, double lo);

/// Ratio of the full S* integral to tail(x), target 2 * positive_tail_integral.
RatioDiagnostic sstar_integral_profile(const Distribution& f, const std::vector<double>& x_grid);

struct PitmanResult {
  double integral;
  RatioDiagnostic profile;  ///< cumulative integral at successive cut points
};

/// Integral of exp(y r(y) - R(y)) r(y) over [support start, T]. Exact per piece
/// for hazard laws, quadrature in sqrt(y) otherwise. Throws InapplicableError
/// when the hazard rate eventually increases.
PitmanResult pitman_criterion(const Distribution& f, double T);

/// Integral over [0, x] of exp(y r(x-) - R(y)) against the target integral of the tail.
RatioDiagnostic kluppelberg_criterion(const HazardDistribution& f, const std::vector<double>& x_grid);

/// Hazard law interpolating -log tail(x) of `f` at the given knots (first knot
/// must be the support start); the last chord slope is extended.
HazardDistribution hazard_approximation(const Distribution& f, const std::vector<double>& knots);

/// h(x) = clamp(r_env(x)^{-1/2}, 1, x/2), r_env(x) = sup_{y >= x} r(y).
/// Throws InapplicableError unless the hazard rate decays to a small fraction of its peak.
std::function<double(double)> find_h_function(const Distribution& f);

/// Integral of tail(x - y) tail(y) over [h(x), x - h(x)] divided by tail(x).
double hstar_window_integral(const Distribution& f, const std::function<double(double)>& h, double x);

struct ClassifyOptions {
  double x_min = 10.0;
  double x_max = 0.0;  ///< 0: the x with tail(x) = 1e-9, capped at 1e7
  std::size_t points = 8;
  double tolerance = 0.05;
  std::size_t conv_cells = 1u << 14;
};

struct ClassEvidence {
  std::string name;
  Verdict verdict;
  RatioDiagnostic evidence;
};

struct ClassificationReport {
  std::vector<ClassEvidence> classes;
  IrvProfile irv;
};

ClassificationReport classify_distribution(const Distribution& f, const ClassifyOptions& options = {});

}  // namespace heavysum
