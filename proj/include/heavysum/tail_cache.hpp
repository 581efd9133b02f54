#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "heavysum/tailcalc.hpp"

namespace heavysum {

/// On-disk cache of tail grids, one binary file per key. Purely an
/// optimization: a missing, stale or corrupt entry is recomputed.
class TailCache {
 public:
  explicit TailCache(std::filesystem::path dir);

  /// FNV-1a over the lattice contents, n, the step, the range and a kind tag.
  static std::uint64_t key(const LatticeDistribution& f, std::int64_t n, std::string_view kind, double x_hi);

  [[nodiscard]] std::optional<TailGrid> load(std::uint64_t key) const;
  /// Written to a temporary file first and renamed into place.
  void store(std::uint64_t key, const TailGrid& grid) const;

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

 private:
  [[nodiscard]] std::filesystem::path path_for(std::uint64_t key) const;
  std::filesystem::path dir_;
};

TailGrid cached_conv_power_tail(const LatticeDistribution& f, std::int64_t n, const ConvolutionOptions& options,
                                const TailCache* cache);

}  // namespace heavysum
