#include "heavysum/tail_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <random>
#include <string>

namespace heavysum {

namespace {

constexpr std::array<char, 8> kMagic = {'H', 'S', 'T', 'G', '1', 0, 0, 0};

struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ULL;
    }
  }
  template <class T>
  void value(const T& v) {
    bytes(&v, sizeof v);
  }
};

template <class T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
bool get(std::istream& in, T& v) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof v));
}

}  // namespace

TailCache::TailCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::uint64_t TailCache::key(const LatticeDistribution& f, std::int64_t n, std::string_view kind, double x_hi) {
  Fnv fnv;
  fnv.bytes(kind.data(), kind.size());
  fnv.value(n);
  fnv.value(f.step());
  fnv.value(f.offset());
  fnv.value(f.origin());
  fnv.value(x_hi);
  fnv.value(f.overflow_log_mass());
  fnv.value(f.overflow_above());
  fnv.value(f.overflow_mean());
  fnv.bytes(f.log_mass().data(), f.log_mass().size_bytes());
  return fnv.h;
}

std::filesystem::path TailCache::path_for(std::uint64_t key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.tg", static_cast<unsigned long long>(key));
  return dir_ / name;
}

std::optional<TailGrid> TailCache::load(std::uint64_t key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  std::uint64_t stored = 0;
  std::uint64_t count = 0;
  TailGrid g;
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) return std::nullopt;
  if (!get(in, stored) || stored != key) return std::nullopt;
  if (!get(in, g.x_start) || !get(in, g.step) || !get(in, g.overflow_log_mass) || !get(in, g.exact_until) ||
      !get(in, count))
    return std::nullopt;
  if (count > (std::uint64_t{1} << 32)) return std::nullopt;
  g.log_tail.resize(count);
  if (!in.read(reinterpret_cast<char*>(g.log_tail.data()), static_cast<std::streamsize>(count * sizeof(double))))
    return std::nullopt;
  return g;
}

void TailCache::store(std::uint64_t key, const TailGrid& g) const {
  const auto final_path = path_for(key);
  auto tmp = final_path;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(kMagic.data(), kMagic.size());
    put(out, key);
    put(out, g.x_start);
    put(out, g.step);
    put(out, g.overflow_log_mass);
    put(out, g.exact_until);
    put(out, static_cast<std::uint64_t>(g.log_tail.size()));
    out.write(reinterpret_cast<const char*>(g.log_tail.data()),
              static_cast<std::streamsize>(g.log_tail.size() * sizeof(double)));
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

TailGrid cached_conv_power_tail(const LatticeDistribution& f, std::int64_t n, const ConvolutionOptions& options,
                                const TailCache* cache) {
  if (!cache) return conv_power_tail(f, n, options);
  const auto k = TailCache::key(f, n, "conv_power", options.x_hi);
  if (auto hit = cache->load(k)) return *hit;
  TailGrid g = conv_power_tail(f, n, options);
  cache->store(k, g);
  return g;
}

}  // namespace heavysum
