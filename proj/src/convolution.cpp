#include "heavysum/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "heavysum/errors.hpp"

namespace heavysum {

namespace {

// Largest spread of log-masses allowed inside one block. Products of two
// scaled values stay above e^-600, far from the subnormal range.
constexpr double kBlockSpread = 300.0;
constexpr std::size_t kMaxBlock = 1024;

struct Blocked {
  std::vector<double> lin;           // exp(log_mass - block scale)
  std::vector<std::uint32_t> block;  // block id of each cell
  std::vector<std::uint32_t> end;    // one past the last cell of each block
  std::vector<double> scale;         // max log-mass in each block (-inf if empty)
};

Blocked make_blocks(std::span<const double> lm, bool reverse) {
  const std::size_t n = lm.size();
  auto at = [&](std::size_t i) { return reverse ? lm[n - 1 - i] : lm[i]; };
  Blocked b;
  b.lin.resize(n);
  b.block.resize(n);
  std::size_t start = 0;
  while (start < n) {
    double hi = kNegInf;
    double lo = kInf;
    std::size_t i = start;
    for (; i < n && i - start < kMaxBlock; ++i) {
      const double l = at(i);
      if (l == kNegInf) continue;
      const double nhi = std::max(hi, l);
      const double nlo = std::min(lo, l);
      if (nhi - nlo > kBlockSpread) break;
      hi = nhi;
      lo = nlo;
    }
    const auto id = static_cast<std::uint32_t>(b.end.size());
    for (std::size_t j = start; j < i; ++j) {
      b.block[j] = id;
      b.lin[j] = hi == kNegInf ? 0.0 : std::exp(at(j) - hi);
    }
    b.end.push_back(static_cast<std::uint32_t>(i));
    b.scale.push_back(hi);
    start = i;
  }
  return b;
}

using v8 = double __attribute__((vector_size(64)));

inline v8 load8(const double* p) {
  v8 v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

inline double dot(const double* a, const double* b, std::size_t n) {
  v8 s0 = {};
  v8 s1 = {};
  v8 s2 = {};
  v8 s3 = {};
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    s0 += load8(a + i) * load8(b + i);
    s1 += load8(a + i + 8) * load8(b + i + 8);
    s2 += load8(a + i + 16) * load8(b + i + 16);
    s3 += load8(a + i + 24) * load8(b + i + 24);
  }
  for (; i + 8 <= n; i += 8) s0 += load8(a + i) * load8(b + i);
  const v8 s = (s0 + s1) + (s2 + s3);
  double r = ((s[0] + s[1]) + (s[2] + s[3])) + ((s[4] + s[5]) + (s[6] + s[7]));
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

// log of sum_{j >= i} exp(lm[j]) for every i, with a trailing -inf.
std::vector<double> log_suffix(std::span<const double> lm) {
  std::vector<double> out(lm.size() + 1, kNegInf);
  double scale = kNegInf;
  double sum = 0.0;
  for (std::size_t i = lm.size(); i-- > 0;) {
    const double l = lm[i];
    if (l > scale) {
      sum = (scale == kNegInf ? 0.0 : sum * std::exp(scale - l)) + 1.0;
      scale = l;
    } else if (l > kNegInf) {
      sum += std::exp(l - scale);
    }
    out[i] = scale == kNegInf ? kNegInf : scale + std::log(sum);
  }
  return out;
}

double safe_mean(const LatticeDistribution& d) {
  try {
    return d.mean();
  } catch (const DivergenceError&) {
    return kInf;
  }
}

}  // namespace

LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b,
                             const ConvolutionOptions& options) {
  const double h = a.step();
  if (std::abs(b.step() - h) > 1e-12 * h)
    throw ValidationError("convolve: lattice steps differ (" + std::to_string(h) + " vs " +
                          std::to_string(b.step()) + ")");
  const std::size_t ka = a.size();
  const std::size_t kb = b.size();
  const std::size_t kfull = ka + kb - 1;
  const double origin = a.origin() + b.origin();
  const std::int64_t offset = a.offset() + b.offset();

  std::size_t kout = kfull;
  if (options.x_hi < kInf) {
    const double t = std::floor((options.x_hi - origin) / h - static_cast<double>(offset) + 1e-9);
    kout = t < 1.0 ? 1 : static_cast<std::size_t>(std::min<double>(t + 1.0, static_cast<double>(kfull)));
  }
  if (kout > options.cell_budget)
    throw ResourceError("convolve: result needs " + std::to_string(kout) + " cells, budget is " +
                        std::to_string(options.cell_budget));

  const Blocked A = make_blocks(a.log_mass(), false);
  const Blocked B = make_blocks(b.log_mass(), true);

  std::vector<double> out(kout, kNegInf);
  const auto nout = static_cast<std::int64_t>(kout);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t kk = 0; kk < nout; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const std::size_t ilo = k >= kb - 1 ? k - (kb - 1) : 0;
    const std::size_t ihi = std::min(k, ka - 1);
    double scale = kNegInf;
    double sum = 0.0;
    std::size_t i = ilo;
    std::size_t jr = kb - 1 - k + i;
    while (i <= ihi) {
      const std::uint32_t ba = A.block[i];
      const std::uint32_t bb = B.block[jr];
      const std::size_t len = std::min({A.end[ba] - i, B.end[bb] - jr, ihi + 1 - i});
      const double s = A.scale[ba] + B.scale[bb];
      if (s > kNegInf) {
        const double d = dot(A.lin.data() + i, B.lin.data() + jr, len);
        if (d > 0.0) {
          if (s > scale) {
            sum = (scale == kNegInf ? 0.0 : sum * std::exp(scale - s)) + d;
            scale = s;
          } else {
            sum += d * std::exp(s - scale);
          }
        }
      }
      i += len;
      jr += len;
    }
    out[k] = scale == kNegInf ? kNegInf : scale + std::log(sum);
  }

  // Overflow bookkeeping. Grid mass above the kept range is sum_i a_i P{B_grid >= kout - i}.
  const double pa = a.overflow_log_mass();
  const double pb = b.overflow_log_mass();
  const std::vector<double> sb = log_suffix(b.log_mass());
  double trunc = kNegInf;
  double trunc_scale = kNegInf;
  std::vector<std::pair<std::size_t, double>> trunc_terms;
  if (kout < kfull) {
    for (std::size_t i = 0; i < ka; ++i) {
      const std::size_t j = kout > i ? kout - i : 0;
      if (j >= kb || a.log_mass()[i] == kNegInf) continue;
      const double t = a.log_mass()[i] + sb[j];
      trunc_terms.emplace_back(i, t);
      trunc_scale = std::max(trunc_scale, t);
    }
    if (trunc_scale > kNegInf) {
      double s = 0.0;
      for (const auto& [i, t] : trunc_terms) s += std::exp(t - trunc_scale);
      trunc = trunc_scale + std::log(s);
    }
  }
  const double either = log_add_exp(pa, pa == kNegInf ? pb : pb + std::log1p(-std::exp(pa)));
  const double over = log_add_exp(either, trunc);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  double over_above = nan;
  double over_mean = nan;
  if (over > kNegInf) {
    over_above = kInf;
    if (trunc > kNegInf) over_above = std::min(over_above, origin + static_cast<double>(offset + nout - 1) * h);
    if (a.has_overflow()) over_above = std::min(over_above, a.overflow_above() + b.first_point());
    if (b.has_overflow()) over_above = std::min(over_above, b.overflow_above() + a.first_point());

    // E[X + Y; overflow] / P{overflow}, assembled from the three disjoint pieces.
    const double mb = safe_mean(b);
    double grid_mean_a = 0.0;
    for (std::size_t i = 0; i < ka; ++i)
      if (a.log_mass()[i] > kNegInf) grid_mean_a += std::exp(a.log_mass()[i]) * a.point(i);
    double m = 0.0;
    if (a.has_overflow()) m += std::exp(pa - over) * (a.overflow_mean() + mb);
    if (b.has_overflow())
      m += std::exp(pb - over) * (grid_mean_a + (1.0 - std::exp(pa)) * b.overflow_mean());
    if (!trunc_terms.empty()) {
      std::vector<double> lm_shifted(kb);
      for (std::size_t j = 0; j < kb; ++j)
        lm_shifted[j] = b.log_mass()[j] + (j > 0 ? std::log(static_cast<double>(j) * h) : kNegInf);
      const std::vector<double> sby = log_suffix(lm_shifted);
      for (const auto& [i, t] : trunc_terms) {
        const std::size_t j = kout > i ? kout - i : 0;
        m += std::exp(t - over) * (a.point(i) + b.first_point());
        m += std::exp(a.log_mass()[i] + sby[j] - over);
      }
    }
    over_mean = std::isnan(m) ? kInf : std::max(m, over_above);
  }
  out.resize(kout);
  return {h, offset, std::move(out), over, origin, over_above, over_mean};
}

}  // namespace heavysum
