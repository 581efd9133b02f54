#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace heavysum {

struct RatioPoint {
  double x;
  std::optional<std::int64_t> n;
  double ratio;
};

enum class VerdictKind { converging_to, diverging, bounded_by, inconclusive };

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  double target = std::numeric_limits<double>::quiet_NaN();
  double last_deviation = std::numeric_limits<double>::quiet_NaN();
  double sup = std::numeric_limits<double>::quiet_NaN();

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] bool converging() const { return kind == VerdictKind::converging_to; }
  [[nodiscard]] bool diverging() const { return kind == VerdictKind::diverging; }
};

/// How a verdict is derived from the points.
///  - convergence: converging_to(target) when the last `window` deviations
///    |ratio - target| strictly decrease and end below `tolerance`; diverging
///    when they never decrease and end at or above it; else inconclusive.
///  - bound: always bounded_by(sup ratio).
///  - bound_or_growth: bounded_by(sup), unless the last `window` ratios grow
///    strictly (relative step > 1e-6), which reads as diverging.
enum class VerdictRule { convergence, bound, bound_or_growth };

struct VerdictPolicy {
  VerdictRule rule = VerdictRule::convergence;
  double target = 0.0;
  double tolerance = 0.05;
  std::size_t window = 5;
};

struct RatioDiagnostic {
  std::vector<RatioPoint> points;
  VerdictPolicy policy;
  Verdict verdict;
  /// Named scalars that accompany the table (bias bounds, constants, ...).
  std::vector<std::pair<std::string, double>> notes;

  [[nodiscard]] std::optional<double> note(const std::string& key) const;
  /// Sorts points by (x, n) and recomputes the verdict from the policy.
  void finalize();
};

Verdict judge(const std::vector<RatioPoint>& points, const VerdictPolicy& policy);

std::string to_string(VerdictKind kind);

/// IRV profile: for each epsilon, the max over the tail half of the x grid of
/// tail((1 - eps) x) / tail(x).
struct IrvProfile {
  std::vector<std::pair<double, double>> rows;
  Verdict verdict;
};

}  // namespace heavysum
