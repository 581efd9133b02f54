#include "heavysum/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "heavysum/distribution.hpp"
#include "heavysum/errors.hpp"
#include "heavysum/spec_format.hpp"

namespace heavysum {

double CountingTailModel::log_tail(double n) const {
  double v = log_c;
  if (a != 0.0) v -= a * std::log(n);
  if (b != 0.0) v -= b * std::pow(n, beta);
  return std::min(v, 0.0);
}

namespace {

constexpr std::int64_t kModelCap = 256;

// Sum of exp(model.log_tail(n)) over n >= from.
double model_tail_sum(const CountingTailModel& m, std::int64_t from) {
  if (m.b == 0.0 && m.a <= 1.0) return kInf;
  double sum = 0.0;
  constexpr std::int64_t kTerms = 1000000;
  std::int64_t n = from;
  for (; n < from + kTerms; ++n) {
    const double t = std::exp(m.log_tail(static_cast<double>(n)));
    sum += t;
    if (t < 1e-18 * sum) return sum;
  }
  if (m.b != 0.0) return sum;
  // Power tail: Euler-Maclaurin remainder for c n^{-a}.
  const double nn = static_cast<double>(n);
  const double f = std::exp(m.log_tail(nn));
  return sum + f * nn / (m.a - 1.0) + 0.5 * f + m.a * f / (12.0 * nn);
}

}  // namespace

CountingDistribution::CountingDistribution(std::vector<double> log_mass, std::optional<CountingTailModel> tail_model,
                                           std::string description)
    : log_mass_(std::move(log_mass)), model_(tail_model), description_(std::move(description)) {
  if (log_mass_.empty()) throw ValidationError("counting distribution: no masses");
  for (double l : log_mass_)
    if (std::isnan(l) || l > 1e-12) throw ValidationError("counting distribution: invalid log-mass");
  const std::size_t n = log_mass_.size();
  if (model_ && n < 2) throw ValidationError("counting distribution: a tail model needs n_cap >= 1");
  log_tail_.assign(n, kNegInf);
  double acc = model_ ? model_->log_tail(static_cast<double>(n - 1)) : kNegInf;
  log_tail_[n - 1] = acc;
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = log_add_exp(acc, log_mass_[i + 1]);
    log_tail_[i] = acc;
  }
  const double total = log_add_exp(acc, log_mass_[0]);
  if (std::abs(std::expm1(total)) > 1e-9)
    throw ValidationError("counting distribution: masses sum to " + format_real(std::exp(total)));
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) m += std::exp(log_tail_[i]);
  if (model_) m += model_tail_sum(*model_, static_cast<std::int64_t>(n - 1));
  mean_ = m;
  if (description_.empty()) description_ = bounded() ? "counting" : "counting (modelled tail)";
}

CountingDistribution CountingDistribution::degenerate(std::int64_t n) {
  if (n < 0) throw ValidationError("degenerate: n must be >= 0");
  std::vector<double> lm(static_cast<std::size_t>(n + 1), kNegInf);
  lm.back() = 0.0;
  return CountingDistribution(std::move(lm), std::nullopt, "degenerate n=" + std::to_string(n));
}

namespace {

// Masses from an exact tail function T(n) = P{tau > n} that agrees with the model beyond n_cap.
CountingDistribution from_tail(const std::function<double(std::int64_t)>& log_t, std::int64_t n_cap,
                               const CountingTailModel& model, std::string description) {
  std::vector<double> lm(static_cast<std::size_t>(n_cap + 1));
  double prev = 0.0;  // log P{tau > -1}
  for (std::int64_t n = 0; n <= n_cap; ++n) {
    const double cur = n == n_cap ? model.log_tail(static_cast<double>(n)) : log_t(n);
    lm[static_cast<std::size_t>(n)] = log_sub_exp(prev, std::min(cur, prev));
    prev = cur;
  }
  return CountingDistribution(std::move(lm), model, std::move(description));
}

}  // namespace

CountingDistribution CountingDistribution::geometric(double p, std::int64_t min) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("geometric: p must lie in (0, 1]");
  if (min < 0) throw ValidationError("geometric: min must be >= 0");
  if (p == 1.0) return degenerate(min);
  const double lq = std::log1p(-p);
  CountingTailModel model{(1.0 - static_cast<double>(min)) * lq, 0.0, -lq, 1.0};
  const std::int64_t cap = std::max<std::int64_t>(min + 1, kModelCap);
  auto log_t = [&](std::int64_t n) {
    return n < min ? 0.0 : static_cast<double>(n - min + 1) * lq;
  };
  return from_tail(log_t, cap, model,
                   "geometric p=" + format_real(p) + " min=" + std::to_string(min));
}

CountingDistribution CountingDistribution::pareto_count(double alpha, double xm) {
  if (!(alpha > 0.0) || !(xm > 0.0)) throw ValidationError("pareto_count: alpha and xm must be positive");
  CountingTailModel model{alpha * std::log(xm), alpha, 0.0, 1.0};
  const auto cap = std::max<std::int64_t>(kModelCap, static_cast<std::int64_t>(std::ceil(xm)) + 1);
  auto log_t = [&](std::int64_t n) {
    return static_cast<double>(n) <= xm ? 0.0 : alpha * (std::log(xm) - std::log(static_cast<double>(n)));
  };
  return from_tail(log_t, cap, model, "pareto_count alpha=" + format_real(alpha) + " xm=" + format_real(xm));
}

CountingDistribution CountingDistribution::weibull_count(double beta, double c) {
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("weibull_count: beta must lie in (0, 1)");
  if (!(c > 0.0)) throw ValidationError("weibull_count: c must be positive");
  CountingTailModel model{-std::log(c), 1.0, std::pow(c, beta), beta};
  auto log_t = [&](std::int64_t n) { return n == 0 ? 0.0 : model.log_tail(static_cast<double>(n)); };
  return from_tail(log_t, kModelCap, model, "weibull_count beta=" + format_real(beta) + " c=" + format_real(c));
}

CountingDistribution CountingDistribution::from_masses(const std::vector<double>& mass) {
  std::vector<double> lm(mass.size());
  double total = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (!(mass[i] >= 0.0)) throw ValidationError("counting: masses must be nonnegative");
    total += mass[i];
    lm[i] = mass[i] > 0.0 ? std::log(mass[i]) : kNegInf;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("counting: masses sum to " + format_real(total));
  std::string desc = "counting mass=[";
  for (std::size_t i = 0; i < mass.size(); ++i) desc += (i ? ", " : "") + format_real(mass[i]);
  return CountingDistribution(std::move(lm), std::nullopt, desc + "]");
}

double CountingDistribution::log_pmf(std::int64_t n) const {
  if (n < 0) return kNegInf;
  if (n <= n_cap()) return log_mass_[static_cast<std::size_t>(n)];
  if (!model_) return kNegInf;
  return log_sub_exp(log_tail(n - 1), log_tail(n));
}

double CountingDistribution::mean() const {
  if (!std::isfinite(mean_)) throw DivergenceError("counting distribution: infinite mean (" + description_ + ")");
  return mean_;
}

double CountingDistribution::pmf(std::int64_t n) const { return std::exp(log_pmf(n)); }

double CountingDistribution::log_tail(std::int64_t n) const {
  if (n < 0) return 0.0;
  if (n < n_cap()) return log_tail_[static_cast<std::size_t>(n)];
  if (!model_) return kNegInf;
  return model_->log_tail(static_cast<double>(n));
}

double CountingDistribution::tail(double x) const {
  if (x < 0) return 1.0;
  if (x >= 9e18) return 0.0;
  return std::exp(log_tail(static_cast<std::int64_t>(std::floor(x))));
}

std::int64_t CountingDistribution::max_support() const {
  if (model_) return -1;
  for (std::int64_t n = n_cap(); n >= 0; --n)
    if (log_mass_[static_cast<std::size_t>(n)] > kNegInf) return n;
  return 0;
}

CountingDistribution parse_counting(std::string_view text) {
  const SpecArgs a = parse_spec_args(text);
  if (a.kind == "degenerate") {
    a.only({"n"});
    return CountingDistribution::degenerate(a.integer("n"));
  }
  if (a.kind == "geometric") {
    a.only({"p", "min"});
    return CountingDistribution::geometric(a.real("p"), a.integer("min", 1));
  }
  if (a.kind == "pareto_count") {
    a.only({"alpha", "xm"});
    return CountingDistribution::pareto_count(a.real("alpha"), a.real("xm", 1.0));
  }
  if (a.kind == "weibull_count") {
    a.only({"beta", "c"});
    return CountingDistribution::weibull_count(a.real("beta"), a.real("c", 1.0));
  }
  if (a.kind == "counting") {
    a.only({"mass"});
    return CountingDistribution::from_masses(a.reals("mass"));
  }
  throw ValidationError("unknown counting distribution kind '" + a.kind + "'");
}

}  // namespace heavysum
