#include "heavysum/diagnostic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace heavysum {

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::converging_to: return "converging_to";
    case VerdictKind::diverging: return "diverging";
    case VerdictKind::bounded_by: return "bounded_by";
    case VerdictKind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string Verdict::to_string() const {
  char buf[128];
  switch (kind) {
    case VerdictKind::converging_to:
      std::snprintf(buf, sizeof buf, "converging_to(%.6g, %.3g)", target, last_deviation);
      return buf;
    case VerdictKind::bounded_by:
      std::snprintf(buf, sizeof buf, "bounded_by(%.6g)", sup);
      return buf;
    default:
      return heavysum::to_string(kind);
  }
}

std::optional<double> RatioDiagnostic::note(const std::string& key) const {
  for (const auto& [k, v] : notes)
    if (k == key) return v;
  return std::nullopt;
}

void RatioDiagnostic::finalize() {
  std::stable_sort(points.begin(), points.end(), [](const RatioPoint& a, const RatioPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.n.value_or(0) < b.n.value_or(0);
  });
  verdict = judge(points, policy);
}

Verdict judge(const std::vector<RatioPoint>& points, const VerdictPolicy& policy) {
  Verdict v;
  v.target = policy.target;
  double sup = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) sup = std::max(sup, p.ratio);
  v.sup = sup;
  if (points.empty()) return v;

  const std::size_t w = std::min(std::max<std::size_t>(policy.window, 3), points.size());
  const auto first = points.end() - static_cast<std::ptrdiff_t>(w);

  if (policy.rule == VerdictRule::bound) {
    v.kind = VerdictKind::bounded_by;
    return v;
  }
  if (policy.rule == VerdictRule::bound_or_growth) {
    bool growing = w >= 3;
    for (auto it = first + 1; it != points.end() && growing; ++it)
      growing = it->ratio > (it - 1)->ratio * (1.0 + 1e-6);
    v.kind = growing ? VerdictKind::diverging : VerdictKind::bounded_by;
    return v;
  }

  if (points.size() < 3) return v;
  std::vector<double> dev;
  for (auto it = first; it != points.end(); ++it) dev.push_back(std::abs(it->ratio - policy.target));
  v.last_deviation = dev.back();
  bool decreasing = true;
  bool nondecreasing = true;
  for (std::size_t i = 1; i < dev.size(); ++i) {
    decreasing = decreasing && (dev[i] < dev[i - 1] || (dev[i] == 0.0 && dev[i - 1] == 0.0));
    nondecreasing = nondecreasing && dev[i] >= dev[i - 1];
  }
  if (std::isnan(dev.back())) return v;
  if (decreasing && dev.back() < policy.tolerance)
    v.kind = VerdictKind::converging_to;
  else if (nondecreasing && dev.back() >= policy.tolerance)
    v.kind = VerdictKind::diverging;
  return v;
}

}  // namespace heavysum
