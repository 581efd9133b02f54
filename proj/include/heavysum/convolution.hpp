#pragma once

#include <cstddef>

#include "heavysum/distribution.hpp"

namespace heavysum {

inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 26;

struct ConvolutionOptions {
  /// Result points above this level are folded into the overflow cell.
  double x_hi = kInf;
  /// Maximum number of cells in a result grid.
  std::size_t cell_budget = kDefaultCellBudget;
};

/// Law of X + Y for independent lattice X, Y with equal steps.
///
/// Masses are combined in linear arithmetic inside blocks that share a common
/// log-scale, so every output cell is a sum of nonnegative terms with no
/// cancellation. The result overflow cell collects P{X or Y overflows} plus
/// the grid mass above `x_hi`; its lower edge is tracked so tails stay exact
/// up to `overflow_above()` of the result. Output cells are independent, so
/// results do not depend on the thread count.
LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b,
                             const ConvolutionOptions& options = {});

}  // namespace heavysum
