#include "heavysum/spec_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "heavysum/errors.hpp"
#include "heavysum/pathological.hpp"

namespace heavysum {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Length of a bracketed group starting at s[0] ('(' or '[').
std::size_t group_length(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(' || s[i] == '[') ++depth;
    if (s[i] == ')' || s[i] == ']') {
      if (--depth == 0) return i + 1;
    }
  }
  throw ValidationError("spec: unbalanced brackets in '" + std::string(s) + "'");
}

std::string_view strip_parens(std::string_view s) {
  s = trim(s);
  while (s.size() >= 2 && s.front() == '(' && group_length(s) == s.size()) s = trim(s.substr(1, s.size() - 2));
  return s;
}

}  // namespace

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(std::string_view text, std::string_view field) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return kNegInf;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty() || std::isnan(v))
    throw ValidationError(std::string(field) + ": expected a real number, got '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_real_list(std::string_view text, std::string_view field) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ValidationError(std::string(field) + ": expected a list like [1, 2, 3]");
  text = text.substr(1, text.size() - 2);
  std::vector<double> out;
  while (!trim(text).empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_real(text.substr(0, comma), field));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

SpecArgs parse_spec_args(std::string_view text) {
  text = strip_parens(text);
  SpecArgs out;
  std::size_t i = 0;
  while (i < text.size() && !is_space(text[i])) ++i;
  out.kind = std::string(text.substr(0, i));
  if (out.kind.empty()) throw ValidationError("spec: empty distribution spec");
  while (true) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i >= text.size()) break;
    const auto eq = text.find('=', i);
    if (eq == std::string_view::npos)
      throw ValidationError("spec '" + out.kind + "': expected key=value near '" + std::string(text.substr(i)) +
                            "'");
    const std::string key(trim(text.substr(i, eq - i)));
    if (key.empty() || key.find_first_of(" \t()[]") != std::string::npos)
      throw ValidationError("spec '" + out.kind + "': malformed key '" + key + "'");
    i = eq + 1;
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t len = 0;
    if (i < text.size() && (text[i] == '(' || text[i] == '[')) {
      len = group_length(text.substr(i));
    } else {
      while (i + len < text.size() && !is_space(text[i + len])) ++len;
    }
    if (len == 0) throw ValidationError("spec '" + out.kind + "': missing value for '" + key + "'");
    if (out.args.count(key)) throw ValidationError("spec '" + out.kind + "': duplicate key '" + key + "'");
    out.args[key] = std::string(text.substr(i, len));
    i += len;
  }
  return out;
}

const std::string& SpecArgs::raw(const std::string& key) const {
  const auto it = args.find(key);
  if (it == args.end()) throw ValidationError(kind + ": missing required field '" + key + "'");
  return it->second;
}

double SpecArgs::real(const std::string& key, std::optional<double> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
  }
  return parse_real(raw(key), kind + "." + key);
}

std::int64_t SpecArgs::integer(const std::string& key, std::optional<std::int64_t> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
  }
  const double v = parse_real(raw(key), kind + "." + key);
  if (v != std::floor(v) || std::abs(v) > 9e15)
    throw ValidationError(kind + "." + key + ": expected an integer, got '" + raw(key) + "'");
  return static_cast<std::int64_t>(v);
}

std::vector<double> SpecArgs::reals(const std::string& key) const {
  return parse_real_list(raw(key), kind + "." + key);
}

void SpecArgs::only(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [k, v] : args) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == k;
    if (!ok) throw ValidationError(kind + ": unknown field '" + k + "'");
  }
}

Distribution parse_distribution(std::string_view text) {
  const SpecArgs a = parse_spec_args(text);
  const std::string& k = a.kind;
  if (k == "pareto") {
    a.only({"alpha", "xm"});
    return Pareto{a.real("alpha"), a.real("xm", 1.0)};
  }
  if (k == "weibull") {
    a.only({"beta", "scale"});
    return Weibull{a.real("beta"), a.real("scale", 1.0)};
  }
  if (k == "lognormal") {
    a.only({"mu", "sigma"});
    return LogNormal{a.real("mu", 0.0), a.real("sigma")};
  }
  if (k == "exponential") {
    a.only({"lambda"});
    return Exponential{a.real("lambda", 1.0)};
  }
  if (k == "hazard") {
    a.only({"knots", "values", "final_slope"});
    return HazardDistribution(a.reals("knots"), a.reals("values"), a.real("final_slope"));
  }
  if (k == "shift") {
    a.only({"base", "by"});
    return shifted(parse_distribution(a.raw("base")), a.real("by"));
  }
  if (k == "lattice") {
    a.only({"step", "offset", "origin", "mass", "overflow", "overflow_above", "overflow_mean"});
    const std::vector<double> mass = a.reals("mass");
    const double over = a.real("overflow", 0.0);
    double total = over;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      if (!(mass[i] >= 0)) throw ValidationError("lattice.mass: entry " + std::to_string(i) + " is negative");
      total += mass[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw ValidationError("lattice.mass: masses must sum to 1 (got " + format_real(total) + ")");
    std::vector<double> lm(mass.size());
    for (std::size_t i = 0; i < mass.size(); ++i) lm[i] = mass[i] > 0 ? std::log(mass[i]) : kNegInf;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!(over >= 0)) throw ValidationError("lattice.overflow: must be >= 0");
    return LatticeDistribution(a.real("step"), a.integer("offset", 0), std::move(lm),
                               over > 0 ? std::log(over) : kNegInf, a.real("origin", 0.0),
                               a.real("overflow_above", nan), a.real("overflow_mean", nan));
  }
  if (k == "discrete") {
    a.only({"base", "step", "x_max"});
    return discretize(parse_distribution(a.raw("base")), a.real("step"), a.real("x_max"));
  }
  if (k == "offspring") {
    // w * base + b * delta_1 + (1 - w - b) * delta_0, with b fixed by the target mean
    a.only({"base", "mean", "weight"});
    const Distribution bd = parse_distribution(a.raw("base"));
    if (!bd.holds<LatticeDistribution>()) throw ValidationError("offspring.base: must be a lattice law");
    const auto& base = bd.get<LatticeDistribution>();
    if (base.step() != 1.0 || base.origin() != 0.0 || base.offset() < 0)
      throw ValidationError("offspring.base: must live on {0, 1, 2, ...}");
    const double mu = base.mean();
    const double target = a.real("mean", 1.0);
    const double w = a.real("weight", target / mu);
    const double b = target - w * mu;
    const double z = 1.0 - w - b;
    if (!(w > 0 && w <= 1) || b < -1e-12 || z < -1e-12)
      throw ValidationError("offspring: weight " + format_real(w) + " cannot reach mean " + format_real(target));
    const auto n = static_cast<std::size_t>(base.offset()) + base.size();
    std::vector<double> lm(std::max<std::size_t>(n, 2), kNegInf);
    for (std::size_t i = 0; i < base.size(); ++i)
      lm[static_cast<std::size_t>(base.offset()) + i] = base.log_mass()[i] + std::log(w);
    if (z > 0) lm[0] = log_add_exp(lm[0], std::log(z));
    if (b > 0) lm[1] = log_add_exp(lm[1], std::log(b));
    return LatticeDistribution(1.0, 0, std::move(lm), base.overflow_log_mass() + std::log(w), 0.0,
                               base.overflow_above(), base.overflow_mean());
  }
  if (k == "center") {
    a.only({"base"});
    const Distribution base = parse_distribution(a.raw("base"));
    const double m = mean(base);
    if (base.holds<LatticeDistribution>()) return shift_lattice(base.get<LatticeDistribution>(), -m);
    return shifted(base, -m);
  }
  if (k == "pathological") {
    a.only({"k_max"});
    return build_pathological(static_cast<int>(a.integer("k_max", 5))).view;
  }
  throw ValidationError("spec: unknown distribution kind '" + k + "'");
}

namespace {

std::string format_list(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_real(v[i]);
  }
  return s + "]";
}

}  // namespace

std::string format_distribution(const Distribution& d) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          os << "pareto alpha=" << format_real(v.alpha) << " xm=" << format_real(v.xm);
        } else if constexpr (std::is_same_v<T, Weibull>) {
          os << "weibull beta=" << format_real(v.beta) << " scale=" << format_real(v.scale);
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          os << "lognormal mu=" << format_real(v.mu) << " sigma=" << format_real(v.sigma);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          os << "exponential lambda=" << format_real(v.lambda);
        } else if constexpr (std::is_same_v<T, HazardDistribution>) {
          os << "hazard knots=" << format_list(v.knots()) << " values=" << format_list(v.values())
             << " final_slope=" << format_real(v.final_slope());
        } else if constexpr (std::is_same_v<T, LatticeDistribution>) {
          std::vector<double> m(v.size());
          for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::exp(v.log_mass()[i]);
          os << "lattice step=" << format_real(v.step()) << " offset=" << v.offset();
          if (v.origin() != 0.0) os << " origin=" << format_real(v.origin());
          os << " mass=" << format_list(m);
          if (v.has_overflow())
            os << " overflow=" << format_real(std::exp(v.overflow_log_mass()))
               << " overflow_above=" << format_real(v.overflow_above())
               << " overflow_mean=" << format_real(v.overflow_mean());
        } else {
          os << "shift base=(" << format_distribution(*v.base) << ") by=" << format_real(v.shift);
        }
      },
      d.variant());
  return os.str();
}

}  // namespace heavysum
