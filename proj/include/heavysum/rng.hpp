#pragma once

#include <cstdint>
#include <limits>

namespace heavysum {

/// Counter-based random stream.
///
/// Output i is a SplitMix64 finalization of `key + i * gamma`, so any position
/// of the stream can be reached without generating the prefix, and child
/// streams derived with `split` are statistically independent of the parent.
/// Every stream remembers the seed it was created from.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), key_(mix(seed ^ mix(stream_id + kGamma))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform double on (0, 1] with 53 random bits.
  double uniform() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  /// Independent child stream; the child keeps the parent's seed for provenance.
  [[nodiscard]] CounterStream split(std::uint64_t index) const {
    CounterStream child(seed_);
    child.key_ = mix(key_ ^ mix(index * 0xd1342543de82ef95ULL + 1));
    return child;
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t position() const { return counter_; }
  void seek(std::uint64_t position) { counter_ = position; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace heavysum
