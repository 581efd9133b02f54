#include "heavysum/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heavysum/errors.hpp"
#include "heavysum/spec_format.hpp"

namespace heavysum {

namespace {

constexpr std::int64_t kBatch = 1 << 16;

Estimate indicator_estimate(std::int64_t hits, std::int64_t n, std::uint64_t seed, bool valid) {
  Estimate e;
  e.samples = n;
  e.seed = seed;
  e.valid = valid;
  e.value = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
  return e;
}

// Folded stopping state; `stop` sees only the current step.
struct RuleState {
  const StoppingRule& rule;
  std::int64_t target = 0;

  bool stop(std::int64_t n, double s, double xi) {
    switch (rule.kind) {
      case StoppingRule::Kind::independent:
        return n >= target;
      case StoppingRule::Kind::bounded_first_exceed:
        return s > rule.threshold || n >= rule.cap;
      case StoppingRule::Kind::first_nonpositive:
        return s <= 0.0;
      case StoppingRule::Kind::h_of_first_increment:
        if (n == 1) target = first_increment_h(2.0 * xi, rule.h_beta, rule.h_scale) + 1;
        return n >= target;
    }
    return true;
  }
};

void check_samples(const SimOptions& o) {
  if (o.samples < 1) throw ValidationError("simulation: samples must be >= 1");
  if (o.step_cap < 1) throw ValidationError("simulation: step cap must be >= 1");
}

}  // namespace

std::int64_t first_increment_h(double y, double beta, double scale) {
  if (!(y > 0)) return 0;
  const double a = std::ceil(scale * std::pow(y, 1.0 - beta) * std::log1p(y));
  const double b = std::ceil(y / 2.0) - 1.0;
  const double h = std::max(0.0, std::min(a, b));
  return h > 9e18 ? std::numeric_limits<std::int64_t>::max() / 2 : static_cast<std::int64_t>(h);
}

std::string StoppingRule::describe() const {
  switch (kind) {
    case Kind::independent:
      return "independent tau=(" + (tau ? tau->description() : std::string("?")) + ")";
    case Kind::bounded_first_exceed:
      return "bounded_first_exceed a=" + format_real(threshold) + " N=" + std::to_string(cap);
    case Kind::first_nonpositive:
      return "first_nonpositive";
    case Kind::h_of_first_increment:
      return "h_of_first_increment beta=" + format_real(h_beta) + " scale=" + format_real(h_scale);
  }
  return {};
}

StoppingRule parse_stopping_rule(std::string_view text) {
  const SpecArgs a = parse_spec_args(text);
  StoppingRule r;
  if (a.kind == "independent") {
    a.only({"tau"});
    r.kind = StoppingRule::Kind::independent;
    r.tau = parse_counting(a.raw("tau"));
  } else if (a.kind == "bounded_first_exceed") {
    a.only({"a", "N"});
    r.kind = StoppingRule::Kind::bounded_first_exceed;
    r.threshold = a.real("a");
    r.cap = a.integer("N");
    if (r.cap < 1) throw ValidationError("bounded_first_exceed: N must be >= 1");
  } else if (a.kind == "first_nonpositive") {
    a.only({});
    r.kind = StoppingRule::Kind::first_nonpositive;
  } else if (a.kind == "h_of_first_increment") {
    a.only({"beta", "scale"});
    r.kind = StoppingRule::Kind::h_of_first_increment;
    r.h_beta = a.real("beta");
    r.h_scale = a.real("scale", 1.0);
    if (!(r.h_beta > 0 && r.h_beta < 1)) throw ValidationError("h_of_first_increment: beta must lie in (0, 1)");
    if (!(r.h_scale >= 0)) throw ValidationError("h_of_first_increment: scale must be >= 0");
  } else {
    throw ValidationError("unknown stopping rule '" + a.kind + "'");
  }
  return r;
}

std::int64_t sample_counting(const CountingDistribution& tau, CounterStream& stream) {
  const double lu = std::log(stream.uniform());
  // smallest n with log P{tau > n} < log u
  const std::int64_t cap = tau.n_cap();
  for (std::int64_t n = 0; n < cap; ++n)
    if (tau.log_tail(n) < lu) return n;
  if (tau.bounded()) return tau.max_support();
  std::int64_t lo = cap - 1;  // tail(lo) >= u
  std::int64_t hi = std::max<std::int64_t>(cap, 1);
  while (tau.log_tail(hi) >= lu) {
    lo = hi;
    if (hi > (std::int64_t{1} << 60)) return hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (tau.log_tail(mid) >= lu ? lo : hi) = mid;
  }
  return hi;
}

StoppedSimResult simulate_stopped_sum(const Distribution& f, const StoppingRule& rule,
                                      const std::vector<double>& x_grid, const SimOptions& options) {
  check_samples(options);
  if (rule.kind == StoppingRule::Kind::independent && !rule.tau)
    throw ValidationError("independent stopping rule needs a tau law");
  const std::size_t nx = x_grid.size();
  const std::int64_t batches = (options.samples + kBatch - 1) / kBatch;
  std::vector<std::int64_t> sum_hits(static_cast<std::size_t>(batches) * nx, 0);
  std::vector<std::int64_t> max_hits(sum_hits.size(), 0);
  std::vector<double> tau_sum(static_cast<std::size_t>(batches), 0.0);
  std::vector<double> tau_sq(static_cast<std::size_t>(batches), 0.0);
  std::vector<std::int64_t> trunc(static_cast<std::size_t>(batches), 0);
  const CounterStream root(options.seed);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < batches; ++b) {
    CounterStream stream = root.split(static_cast<std::uint64_t>(b));
    const std::int64_t begin = b * kBatch;
    const std::int64_t end = std::min(options.samples, begin + kBatch);
    const auto bi = static_cast<std::size_t>(b);
    for (std::int64_t i = begin; i < end; ++i) {
      RuleState state{rule};
      if (rule.kind == StoppingRule::Kind::independent) state.target = sample_counting(*rule.tau, stream);
      double s = 0.0;
      double m = 0.0;
      std::int64_t n = 0;
      bool stopped = rule.kind == StoppingRule::Kind::independent && state.target == 0;
      while (!stopped) {
        if (n == options.step_cap) {
          ++trunc[bi];
          break;
        }
        const double xi = sample(f, stream);
        ++n;
        s += xi;
        m = std::max(m, s);
        stopped = state.stop(n, s, xi);
      }
      tau_sum[bi] += static_cast<double>(n);
      tau_sq[bi] += static_cast<double>(n) * static_cast<double>(n);
      for (std::size_t j = 0; j < nx; ++j) {
        sum_hits[bi * nx + j] += s > x_grid[j];
        max_hits[bi * nx + j] += m > x_grid[j];
      }
    }
  }

  StoppedSimResult out;
  out.x = x_grid;
  std::int64_t truncated = 0;
  double ts = 0.0;
  double tq = 0.0;
  for (std::int64_t b = 0; b < batches; ++b) {
    truncated += trunc[static_cast<std::size_t>(b)];
    ts += tau_sum[static_cast<std::size_t>(b)];
    tq += tau_sq[static_cast<std::size_t>(b)];
  }
  out.truncated = truncated;
  const bool valid = static_cast<double>(truncated) <= options.breach_limit * static_cast<double>(options.samples);
  for (std::size_t j = 0; j < nx; ++j) {
    std::int64_t hs = 0;
    std::int64_t hm = 0;
    for (std::int64_t b = 0; b < batches; ++b) {
      hs += sum_hits[static_cast<std::size_t>(b) * nx + j];
      hm += max_hits[static_cast<std::size_t>(b) * nx + j];
    }
    out.sum.push_back(indicator_estimate(hs, options.samples, options.seed, valid));
    out.max.push_back(indicator_estimate(hm, options.samples, options.seed, valid));
  }
  const auto ns = static_cast<double>(options.samples);
  out.tau_mean.samples = options.samples;
  out.tau_mean.seed = options.seed;
  out.tau_mean.valid = valid;
  out.tau_mean.value = ts / ns;
  const double var = std::max(0.0, tq / ns - out.tau_mean.value * out.tau_mean.value);
  out.tau_mean.std_error = std::sqrt(var / ns);
  return out;
}

std::vector<Estimate> simulate_gw(const LatticeDistribution& offspring, int generations,
                                  const std::vector<double>& x_grid, const SimOptions& options) {
  check_samples(options);
  if (generations < 1) throw ValidationError("simulate_gw: generations must be >= 1");
  if (std::abs(offspring.step() - 1.0) > 1e-12 || offspring.origin() != 0.0 || offspring.offset() < 0)
    throw ValidationError("simulate_gw: offspring law must live on {0, 1, 2, ...}");
  const Distribution law(offspring);
  const std::size_t nx = x_grid.size();
  const std::int64_t batches = (options.samples + kBatch - 1) / kBatch;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(batches) * nx, 0);
  std::vector<std::int64_t> breaches(static_cast<std::size_t>(batches), 0);
  const CounterStream root(options.seed);
  const auto pop_cap = static_cast<double>(options.population_cap);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < batches; ++b) {
    CounterStream stream = root.split(static_cast<std::uint64_t>(b));
    const std::int64_t begin = b * kBatch;
    const std::int64_t end = std::min(options.samples, begin + kBatch);
    const auto bi = static_cast<std::size_t>(b);
    for (std::int64_t i = begin; i < end; ++i) {
      double pop = 1.0;
      bool breach = false;
      for (int g = 0; g < generations && pop > 0; ++g) {
        double next = 0.0;
        for (double j = 0; j < pop; ++j) {
          next += sample(law, stream);
          if (next > pop_cap) {
            breach = true;
            break;
          }
        }
        if (breach) break;
        pop = next;
      }
      breaches[bi] += breach;
      for (std::size_t j = 0; j < nx; ++j) hits[bi * nx + j] += breach || pop > x_grid[j];
    }
  }
  std::int64_t total_breach = 0;
  for (auto v : breaches) total_breach += v;
  const bool valid = static_cast<double>(total_breach) <= options.breach_limit * static_cast<double>(options.samples);
  std::vector<Estimate> out;
  for (std::size_t j = 0; j < nx; ++j) {
    std::int64_t h = 0;
    for (std::int64_t b = 0; b < batches; ++b) h += hits[static_cast<std::size_t>(b) * nx + j];
    out.push_back(indicator_estimate(h, options.samples, options.seed, valid));
  }
  return out;
}

double compare_exact(const Estimate& e, double exact) {
  if (!(exact >= 0.0 && exact <= 1.0)) throw ValidationError("compare_exact: exact value outside [0, 1]");
  const double d = e.value - exact;
  if (e.std_error > 0) return d / e.std_error;
  if (d == 0) return 0.0;
  return d > 0 ? kInf : kNegInf;
}

}  // namespace heavysum
