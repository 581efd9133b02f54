#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heavysum/distribution.hpp"

namespace heavysum {

/// A parsed `kind key=value ...` spec. Values are kept as raw text; nested
/// specs are written in parentheses and lists in square brackets.
struct SpecArgs {
  std::string kind;
  std::map<std::string, std::string> args;

  [[nodiscard]] bool has(const std::string& key) const { return args.count(key) != 0; }
  [[nodiscard]] double real(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  [[nodiscard]] std::int64_t integer(const std::string& key,
                                     std::optional<std::int64_t> fallback = std::nullopt) const;
  [[nodiscard]] std::vector<double> reals(const std::string& key) const;
  [[nodiscard]] const std::string& raw(const std::string& key) const;
  /// Throws ValidationError if any key outside `allowed` is present.
  void only(std::initializer_list<std::string_view> allowed) const;
};

SpecArgs parse_spec_args(std::string_view text);
double parse_real(std::string_view text, std::string_view field);
std::vector<double> parse_real_list(std::string_view text, std::string_view field);

/// Parse a distribution spec such as `pareto alpha=2 xm=1` or
/// `shift base=(weibull beta=0.5) by=-3`. Supported kinds: pareto, weibull,
/// lognormal, exponential, hazard, lattice, shift, discrete (lattice image of
/// another spec), offspring (an integer lattice mixed with atoms at 0 and 1
/// to reach a target mean), center (shift a spec to mean zero) and pathological.
Distribution parse_distribution(std::string_view text);

/// Inverse of parse_distribution; reals are written with 17 significant digits.
std::string format_distribution(const Distribution& d);

std::string format_real(double v);

}  // namespace heavysum
