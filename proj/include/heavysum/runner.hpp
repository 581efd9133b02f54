#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "heavysum/scenario.hpp"

namespace heavysum {

struct RunOptions {
  std::filesystem::path out_dir = "results";
  std::optional<std::uint64_t> seed;   ///< overrides simulation.seed
  std::optional<double> tolerance;     ///< overrides the verdict tolerance
  bool write = true;
};

struct RunResult {
  std::string name;
  std::filesystem::path directory;
  /// Deterministic outputs by file name (summary.json, CSV tables, scenario.txt).
  std::map<std::string, std::string> files;
  std::string summary;  ///< same as files["summary.json"]
  bool estimates_valid = true;
  double seconds = 0.0;
};

/// Resolves, runs and (unless options.write is false) writes the bundle to
/// out_dir/<name>/ atomically. Timing goes to timing.json, outside `files`.
/// Throws InvalidEstimateError after writing when a Monte Carlo estimate is invalid.
RunResult run_scenario(Scenario scenario, const RunOptions& options = {});

/// A bundled scenario name, a scenario file, or a summary.json from an earlier run.
Scenario load_scenario(const std::string& name_or_path);

/// Writes `files` into `dir`, replacing it as a whole through a rename.
void write_bundle(const std::filesystem::path& dir, const std::map<std::string, std::string>& files);

}  // namespace heavysum
