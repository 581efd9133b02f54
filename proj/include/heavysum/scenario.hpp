#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace heavysum {

/// A declarative experiment: `key = value` lines, optionally grouped under
/// `[section]` headers (stored as `section.key`). `#` starts a comment.
class Scenario {
 public:
  struct Entry {
    std::string value;
    int line = 0;  ///< 0 for values filled in by resolve()
  };

  static Scenario parse(std::string_view text, std::string origin = "<scenario>");

  [[nodiscard]] const std::string& origin() const { return origin_; }
  [[nodiscard]] const std::map<std::string, Entry>& entries() const { return entries_; }
  [[nodiscard]] bool has(const std::string& key) const { return entries_.count(key) != 0; }
  [[nodiscard]] const std::string& get(const std::string& key) const;
  [[nodiscard]] double real(const std::string& key) const;
  [[nodiscard]] std::int64_t integer(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
  [[nodiscard]] std::vector<double> reals(const std::string& key) const;
  [[nodiscard]] std::vector<std::string> words(const std::string& key) const;
  void set(const std::string& key, std::string value);
  void set_default(const std::string& key, std::string value);

  [[nodiscard]] std::string name() const { return get("name"); }
  [[nodiscard]] std::string kind() const { return get("kind"); }

  /// Fills every default, checks keys against the kind and resolves automatic
  /// grids, so that to_text() reproduces the run exactly.
  void resolve();

  /// Canonical text form, sections in a fixed order.
  [[nodiscard]] std::string to_text() const;

  /// Throws ValidationError prefixed with origin and line of `key`.
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

struct BundledScenario {
  std::string name;
  std::string description;
  std::string text;
};

const std::vector<BundledScenario>& bundled_scenarios();

/// Bundled scenario by name; throws ValidationError when unknown.
Scenario bundled_scenario(const std::string& name);

/// `count` points from start to stop, log or linear spacing.
std::vector<double> make_grid(double start, double stop, std::int64_t count, bool log_scale);

/// `start:stop:count[:log|:linear]` or a bracketed list.
std::vector<double> parse_grid(std::string_view text);

}  // namespace heavysum
