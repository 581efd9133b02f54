#include "heavysum/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

#include "heavysum/errors.hpp"
#include "heavysum/spec_format.hpp"

namespace heavysum {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Keys every kind accepts, then the extra keys per kind.
const std::set<std::string> kCommon = {"name", "description", "kind", "method", "tolerance"};

const std::map<std::string, std::set<std::string>>& kind_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"stopped",
       {"distribution", "tau", "predictor", "quantity", "eq1_c", "grid.*", "numerics.*", "simulation.*"}},
      {"simulate", {"distribution", "tau", "rule", "predictor", "grid.*", "numerics.*", "simulation.*"}},
      {"maxima", {"distribution", "n", "grid.*", "numerics.*"}},
      {"bound_negative", {"distribution", "n_max", "numerics.*"}},
      {"bound_nonneg", {"distribution", "n_max", "c", "numerics.*"}},
      {"big_jump", {"distribution", "h", "variant", "grid.*", "numerics.*"}},
      {"branching", {"distribution", "generations", "grid.*", "numerics.*", "simulation.*"}},
      {"pathological", {"k", "verify", "numerics.*"}},
      {"blowup_weibull", {"beta", "points", "numerics.*"}},
      {"stopping_blowup", {"beta", "x", "simulation.*"}},
      {"classify", {"distribution", "grid.*", "numerics.*"}},
  };
  return keys;
}

const std::map<std::string, std::set<std::string>> kSections = {
    {"grid", {"start", "stop", "count", "scale", "points"}},
    {"numerics", {"step", "x_max", "cell_budget", "rel_accuracy", "max_terms"}},
    {"simulation", {"samples", "seed", "step_cap"}},
};

double nice_step(double raw) {
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * p >= raw) return m * p;
  return 10.0 * p;
}

// Smallest x (to 1e-9 relative) with tail(x) <= level.
double tail_quantile(const Distribution& f, double level) {
  const double ll = std::log(level);
  double lo = support_start(f);
  if (!std::isfinite(lo)) lo = -1.0;
  double hi = std::max(1.0, std::abs(lo)) * 2.0;
  int guard = 0;
  while (log_tail(f, hi) > ll) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) throw ValidationError("grid: tail level " + format_real(level) + " not reached");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-9 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (log_tail(f, mid) > ll ? lo : hi) = mid;
  }
  return hi;
}

std::string fmt(double v) { return format_real(v); }

}  // namespace

Scenario Scenario::parse(std::string_view text, std::string origin) {
  Scenario s;
  s.origin_ = std::move(origin);
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    const std::string where = s.origin_ + ":" + std::to_string(line) + ": ";
    if (l.front() == '[') {
      if (l.back() != ']') throw ValidationError(where + "unterminated section header");
      section = trim(l.substr(1, l.size() - 2));
      if (!kSections.count(section)) throw ValidationError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ValidationError(where + "expected 'key = value'");
    const std::string key = trim(l.substr(0, eq));
    const std::string value = trim(l.substr(eq + 1));
    if (key.empty()) throw ValidationError(where + "empty key");
    if (value.empty()) throw ValidationError(where + "empty value for '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (!section.empty() && !kSections.at(section).count(key))
      throw ValidationError(where + "unknown key '" + key + "' in [" + section + "]");
    if (s.entries_.count(full)) throw ValidationError(where + "duplicate key '" + full + "'");
    s.entries_[full] = {value, line};
  }
  if (!s.has("name")) throw ValidationError(s.origin_ + ": missing 'name'");
  return s;
}

const std::string& Scenario::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ValidationError(origin_ + ": missing '" + key + "'");
  return it->second.value;
}

void Scenario::fail(const std::string& key, const std::string& message) const {
  const auto it = entries_.find(key);
  std::string where = origin_;
  if (it != entries_.end() && it->second.line > 0) where += ":" + std::to_string(it->second.line);
  throw ValidationError(where + ": " + key + ": " + message);
}

double Scenario::real(const std::string& key) const {
  try {
    return parse_real(get(key), key);
  } catch (const ValidationError& e) {
    fail(key, e.what());
  }
}

std::int64_t Scenario::integer(const std::string& key) const {
  const double v = real(key);
  if (v != std::floor(v) || std::abs(v) > 9e15) fail(key, "expected an integer, got '" + get(key) + "'");
  return static_cast<std::int64_t>(v);
}

bool Scenario::flag(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(key, "expected true or false, got '" + v + "'");
}

std::vector<double> Scenario::reals(const std::string& key) const {
  try {
    return parse_real_list(get(key), key);
  } catch (const ValidationError& e) {
    fail(key, e.what());
  }
}

std::vector<std::string> Scenario::words(const std::string& key) const {
  std::string v = get(key);
  if (!v.empty() && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
  std::vector<std::string> out;
  std::string cur;
  for (char c : v + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

void Scenario::set(const std::string& key, std::string value) {
  auto& e = entries_[key];
  e.value = std::move(value);
}

void Scenario::set_default(const std::string& key, std::string value) {
  if (!has(key)) entries_[key] = {std::move(value), 0};
}

void Scenario::resolve() {
  set_default("kind", "stopped");
  set_default("description", "");
  const std::string k = kind();
  const auto kk = kind_keys().find(k);
  if (kk == kind_keys().end()) fail("kind", "unknown kind '" + k + "'");
  const auto& allowed = kk->second;
  for (const auto& [key, e] : entries_) {
    if (kCommon.count(key) || allowed.count(key)) continue;
    const auto dot = key.find('.');
    if (dot != std::string::npos && allowed.count(key.substr(0, dot) + ".*")) continue;
    fail(key, "not used by kind '" + k + "'");
  }
  auto uses = [&](const std::string& key) { return allowed.count(key) != 0; };

  set_default("method", k == "simulate" || k == "stopping_blowup" ? "simulate" : "exact");
  {
    const std::string m = get("method");
    if (m != "exact" && m != "simulate" && m != "both") fail("method", "expected exact, simulate or both");
  }
  const bool banded = k == "stopped" || k == "simulate" || k == "maxima" || k == "branching";
  set_default("tolerance", k == "big_jump" ? "0.15" : banded ? "0.1" : "0.05");

  // Per-kind knobs.
  if (k == "stopped" || k == "simulate") {
    set_default("predictor", "light");
    if (get("predictor") != "light" && get("predictor") != "comparable")
      fail("predictor", "expected light or comparable");
  }
  if (k == "stopped") {
    set_default("quantity", "sum");
    if (get("quantity") != "sum" && get("quantity") != "max") fail("quantity", "expected sum or max");
    set_default("eq1_c", "none");
    if (!has("tau")) fail("tau", "required for kind stopped");
  }
  if (k == "simulate") {
    if (!has("rule")) {
      if (!has("tau")) fail("rule", "simulate needs a rule or a tau law");
      set("rule", "independent tau=(" + get("tau") + ")");
    }
  }
  if (k == "maxima") set_default("n", "[1, 5, 20, 100]");
  if (k == "bound_negative") set_default("n_max", "200");
  if (k == "bound_nonneg") set_default("n_max", "60");
  if (k == "big_jump") {
    set_default("h", "sqrt");
    set_default("variant", "two_sided");
  }
  if (k == "branching") set_default("generations", "2");
  if (k == "pathological") {
    set_default("k", "4");
    set_default("verify", "[sequence, jk, superlinearity]");
  }
  if (k == "blowup_weibull") {
    set_default("beta", "0.7");
    set_default("points", "12");
    set_default("numerics.step", "0.25");
    set_default("numerics.x_max", "1000");
  }
  if (k == "stopping_blowup") {
    set_default("beta", "0.5");
    set_default("x", "100");
  }
  if (uses("distribution") && !has("distribution")) fail("distribution", "required for kind " + k);

  // Grid: explicit points win; otherwise start/stop/count, with start and stop
  // defaulting to the tail levels 1e-2 and 1e-5 of the distribution.
  if (uses("grid.*")) {
    if (has("grid.points")) {
      for (const char* key : {"grid.start", "grid.stop", "grid.count", "grid.scale"})
        if (has(key)) fail(key, "conflicts with grid.points");
    } else {
      std::optional<Distribution> f;
      auto dist = [&]() -> const Distribution& {
        if (!f) f = parse_distribution(get("distribution"));
        return *f;
      };
      if (k == "classify") {
        // class diagnostics need the far tail: 10 up to the 1e-9 level
        set_default("grid.start", fmt(std::max(10.0, support_start(dist()) + 1.0)));
        set_default("grid.stop", fmt(std::min(1e7, tail_quantile(dist(), 1e-9))));
      }
      set_default("grid.start", fmt(std::max(1.0, tail_quantile(dist(), 1e-2))));
      set_default("grid.stop", fmt(tail_quantile(dist(), 1e-5)));
      set_default("grid.count", "8");
      set_default("grid.scale", "log");
      if (get("grid.scale") != "log" && get("grid.scale") != "linear") fail("grid.scale", "expected log or linear");
      if (!(real("grid.stop") > real("grid.start"))) fail("grid.stop", "must exceed grid.start");
      if (get("grid.scale") == "log" && !(real("grid.start") > 0)) fail("grid.start", "log grids need start > 0");
      if (integer("grid.count") < 1) fail("grid.count", "must be >= 1");
    }
  }

  if (uses("numerics.*")) {
    double top = 0.0;
    if (has("grid.points")) {
      for (double v : reals("grid.points")) top = std::max(top, v);
    } else if (has("grid.stop")) {
      top = real("grid.stop");
    }
    if (k == "bound_negative" || k == "bound_nonneg") top = 400.0;
    if (k != "pathological" && k != "blowup_weibull") {
      set_default("numerics.x_max", fmt(std::ceil(1.25 * top + 10.0)));
      set_default("numerics.step", fmt(nice_step(real("numerics.x_max") / 16384.0)));
    }
    set_default("numerics.cell_budget", "67108864");
    set_default("numerics.rel_accuracy", "0.001");
    set_default("numerics.max_terms", "200000");
    if (has("numerics.step") && !(real("numerics.step") > 0)) fail("numerics.step", "must be positive");
  }
  if (uses("simulation.*")) {
    set_default("simulation.samples", "1000000");
    set_default("simulation.seed", "1");
    set_default("simulation.step_cap", "1000000");
    if (integer("simulation.samples") < 1) fail("simulation.samples", "must be >= 1");
  }
  if (has("tolerance") && !(real("tolerance") > 0)) fail("tolerance", "must be positive");
}

std::string Scenario::to_text() const {
  std::ostringstream os;
  std::vector<std::string> sections;
  for (const auto& [key, e] : entries_) {
    if (key.find('.') == std::string::npos && !e.value.empty()) os << key << " = " << e.value << '\n';
  }
  for (const auto& [sec, keys] : kSections) {
    bool header = false;
    for (const auto& [key, e] : entries_) {
      if (key.rfind(sec + ".", 0) != 0) continue;
      if (!header) {
        os << "\n[" << sec << "]\n";
        header = true;
      }
      os << key.substr(sec.size() + 1) << " = " << e.value << '\n';
    }
  }
  return os.str();
}

std::vector<double> make_grid(double start, double stop, std::int64_t count, bool log_scale) {
  if (count < 1) throw ValidationError("grid: count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> out;
  for (std::int64_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(i == count - 1 ? stop
                  : log_scale   ? start * std::pow(stop / start, u)
                                : start + (stop - start) * u);
  }
  return out;
}

std::vector<double> parse_grid(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '[') return parse_real_list(t, "x-grid");
  std::vector<std::string> parts;
  std::string cur;
  for (char c : t + ":") {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (parts.size() < 3 || parts.size() > 4) throw ValidationError("x-grid: expected start:stop:count[:log|:linear]");
  const bool log_scale = parts.size() == 4 ? parts[3] == "log" : true;
  if (parts.size() == 4 && parts[3] != "log" && parts[3] != "linear")
    throw ValidationError("x-grid: scale must be log or linear");
  const double start = parse_real(parts[0], "x-grid start");
  const double stop = parse_real(parts[1], "x-grid stop");
  const double count = parse_real(parts[2], "x-grid count");
  if (count < 1 || count != std::floor(count)) throw ValidationError("x-grid: count must be a positive integer");
  if (log_scale && !(start > 0)) throw ValidationError("x-grid: log grids need start > 0");
  return make_grid(start, stop, static_cast<std::int64_t>(count), log_scale);
}

}  // namespace heavysum
