#include "heavysum/runner.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "heavysum/classify.hpp"
#include "heavysum/errors.hpp"
#include "heavysum/pathological.hpp"
#include "heavysum/sim.hpp"
#include "heavysum/spec_format.hpp"
#include "heavysum/stopped.hpp"
#include "heavysum/tailcalc.hpp"
#include "json.hpp"

namespace heavysum {

namespace {

using json = nlohmann::ordered_json;

// Probabilities below 1e-12 are written as decimal strings.
json prob(double v) {
  if (v > 0 && v < 1e-12) return format_real(v);
  if (!std::isfinite(v)) return format_real(v);
  return v;
}

json diag_json(const RatioDiagnostic& d) {
  json j;
  j["verdict"] = d.verdict.to_string();
  j["kind"] = to_string(d.verdict.kind);
  j["target"] = prob(d.verdict.target);
  j["sup"] = prob(d.verdict.sup);
  j["last_deviation"] = prob(d.verdict.last_deviation);
  json notes = json::object();
  for (const auto& [k, v] : d.notes) notes[k] = prob(v);
  j["notes"] = notes;
  json pts = json::array();
  for (const auto& p : d.points) pts.push_back(json::array({prob(p.x), p.n ? json(*p.n) : json(), prob(p.ratio)}));
  j["points"] = pts;
  return j;
}

// CSV with a fixed header and %.17g cells.
class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) {
    bool first = true;
    for (const auto& h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << '\n';
  }
  Csv& row(std::initializer_list<double> cells) {
    bool first = true;
    for (double c : cells) {
      os_ << (first ? "" : ",") << format_real(c);
      first = false;
    }
    os_ << '\n';
    return *this;
  }
  [[nodiscard]] std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

struct Context {
  const Scenario& s;
  json summary;
  std::map<std::string, std::string> files;
  bool valid = true;

  [[nodiscard]] double tol() const { return s.real("tolerance"); }

  [[nodiscard]] std::vector<double> grid() const {
    if (s.has("grid.points")) return s.reals("grid.points");
    return make_grid(s.real("grid.start"), s.real("grid.stop"), s.integer("grid.count"),
                     s.get("grid.scale") == "log");
  }

  [[nodiscard]] ConvolutionOptions conv() const {
    ConvolutionOptions o;
    o.x_hi = s.real("numerics.x_max");
    o.cell_budget = static_cast<std::size_t>(s.integer("numerics.cell_budget"));
    return o;
  }

  [[nodiscard]] SimOptions sim() const {
    SimOptions o;
    o.samples = s.integer("simulation.samples");
    o.seed = static_cast<std::uint64_t>(s.integer("simulation.seed"));
    o.step_cap = s.integer("simulation.step_cap");
    return o;
  }

  [[nodiscard]] Distribution dist() const { return parse_distribution(s.get("distribution")); }

  [[nodiscard]] LatticeDistribution lattice(const Distribution& f) const {
    const double step = s.real("numerics.step");
    const double x_max = s.real("numerics.x_max");
    if (f.holds<LatticeDistribution>()) {
      const auto& l = f.get<LatticeDistribution>();
      if (std::abs(l.step() - step) <= 1e-12 * step) return l;
    }
    return discretize(f, step, x_max);
  }

  void track(const Estimate& e) { valid = valid && e.valid; }
};

void finalize_with(RatioDiagnostic& d, double tol) {
  if (d.policy.rule == VerdictRule::convergence) d.policy.tolerance = tol;
  d.finalize();
}

void run_stopped(Context& c) {
  const Scenario& s = c.s;
  const Distribution F = c.dist();
  const LatticeDistribution f = c.lattice(F);
  const CountingDistribution tau = parse_counting(s.get("tau"));
  const std::vector<double> xs = c.grid();
  const bool use_max = s.get("quantity") == "max";
  const std::string method = s.get("method");

  std::optional<StoppedResult> exact;
  if (method != "simulate") {
    StoppedOptions so;
    so.conv = c.conv();
    so.rel_accuracy = s.real("numerics.rel_accuracy");
    so.max_terms = s.integer("numerics.max_terms");
    exact = use_max ? stopped_max_tail_exact(f, tau, xs, so) : stopped_sum_tail_exact(f, tau, xs, so);
  }
  std::optional<StoppedSimResult> mc;
  if (method != "exact") {
    StoppingRule rule;
    rule.tau = tau;
    mc = simulate_stopped_sum(Distribution(f), rule, xs, c.sim());
    for (const auto& e : use_max ? mc->max : mc->sum) c.track(e);
  }
  const Predictor pk = s.get("predictor") == "comparable" ? Predictor::comparable : Predictor::light;
  auto predict = [&](double x) { return pk == Predictor::light ? predictor_light(F, tau, x) : predictor_comparable(F, tau, x); };

  Csv csv({"x", "exact", "remainder_lo", "remainder_hi", "predictor", "ratio", "sim_estimate", "sim_std_error", "z"});
  RatioDiagnostic d;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p = predict(xs[i]);
    const double ex = exact ? exact->rows[i].estimate() : nan;
    const double lo = exact ? exact->rows[i].remainder_lo : nan;
    const double hi = exact ? exact->rows[i].remainder_hi : nan;
    double est = nan, se = nan, z = nan;
    if (mc) {
      const Estimate& e = use_max ? mc->max[i] : mc->sum[i];
      est = e.value;
      se = e.std_error;
      if (exact) z = compare_exact(e, std::min(1.0, ex));
    }
    const double ratio = (exact ? ex : est) / p;
    csv.row({xs[i], ex, lo, hi, p, ratio, est, se, z});
    d.points.push_back({xs[i], std::nullopt, ratio});
  }
  d.policy = {VerdictRule::convergence, 1.0, 0.1, 5};
  finalize_with(d, c.tol());
  if (exact) {
    d.notes.emplace_back("n_terms", static_cast<double>(exact->n_terms));
    d.notes.emplace_back("tau_tail_at_truncation", exact->tau_tail);
  }
  d.notes.emplace_back("E_tau", tau.mean());
  c.summary["ratio"] = diag_json(d);
  c.summary["verdict"] = d.verdict.to_string();
  if (s.get("eq1_c") != "none") {
    RatioDiagnostic e = condition_eq1_check(tau, F, s.real("eq1_c"), xs);
    c.summary["eq1"] = diag_json(e);
  }
  c.files["table.csv"] = csv.str();
}

void run_simulate(Context& c) {
  const Scenario& s = c.s;
  const Distribution F = c.dist();
  const StoppingRule rule = parse_stopping_rule(s.get("rule"));
  const std::vector<double> xs = c.grid();
  const StoppedSimResult mc = simulate_stopped_sum(F, rule, xs, c.sim());
  for (const auto& e : mc.sum) c.track(e);
  c.track(mc.tau_mean);

  std::optional<StoppedResult> exact;
  if (rule.kind == StoppingRule::Kind::independent && F.holds<LatticeDistribution>()) {
    StoppedOptions so;
    so.conv.x_hi = F.get<LatticeDistribution>().last_point();
    exact = stopped_sum_tail_exact(F.get<LatticeDistribution>(), *rule.tau, xs, so);
  }
  const double et = mc.tau_mean.value;
  Csv csv({"x", "estimate", "std_error", "max_estimate", "max_std_error", "predictor", "ratio", "z",
           "exact_if_available", "z_exact"});
  RatioDiagnostic d;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  json zs = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p = et * tail(F, xs[i]);
    const Estimate& e = mc.sum[i];
    const double z = e.std_error > 0 ? (e.value - p) / e.std_error : nan;
    const double ex = exact ? exact->rows[i].estimate() : nan;
    const double zx = exact ? compare_exact(e, std::min(1.0, ex)) : nan;
    csv.row({xs[i], e.value, e.std_error, mc.max[i].value, mc.max[i].std_error, p, e.value / p, z, ex, zx});
    d.points.push_back({xs[i], std::nullopt, e.value / p});
    zs.push_back(prob(z));
  }
  d.policy = {VerdictRule::convergence, 1.0, 0.1, 5};
  finalize_with(d, c.tol());
  d.notes.emplace_back("tau_mean", et);
  d.notes.emplace_back("tau_mean_std_error", mc.tau_mean.std_error);
  d.notes.emplace_back("truncated_paths", static_cast<double>(mc.truncated));
  c.summary["rule"] = rule.describe();
  c.summary["ratio"] = diag_json(d);
  c.summary["z_vs_predictor"] = zs;
  c.summary["verdict"] = d.verdict.to_string();
  c.files["table.csv"] = csv.str();
}

void run_maxima(Context& c) {
  const Scenario& s = c.s;
  const Distribution F = c.dist();
  const LatticeDistribution f = c.lattice(F);
  const std::vector<double> xs = c.grid();
  std::vector<std::int64_t> ns;
  for (double v : s.reals("n")) {
    if (v < 1 || v != std::floor(v)) s.fail("n", "entries must be positive integers");
    ns.push_back(static_cast<std::int64_t>(v));
  }
  std::sort(ns.begin(), ns.end());
  Csv csv({"n", "x", "exact", "approx", "ratio"});
  json per_n = json::object();
  std::size_t next = 0;
  for_each_max(f, ns.back(), c.conv(), [&](std::int64_t n, const LatticeDistribution& law) {
    if (next >= ns.size() || n != ns[next]) return true;
    ++next;
    const double limit = law.has_overflow() ? law.overflow_above() : kInf;
    RatioDiagnostic d;
    for (double x : xs) {
      if (x > limit + 1e-9 * f.step())
        throw ResourceError("maxima: x = " + format_real(x) + " is beyond the exact range " + format_real(limit) +
                            " at n = " + std::to_string(n) + "; raise numerics.x_max");
      const double ex = std::exp(law.log_tail(x));
      const double ap = korshunov_maxima_approx(F, n, x);
      csv.row({static_cast<double>(n), x, ex, ap, ex / ap});
      d.points.push_back({x, n, ex / ap});
    }
    d.policy = {VerdictRule::convergence, 1.0, 0.1, 5};
    finalize_with(d, c.tol());
    per_n[std::to_string(n)] = diag_json(d);
    return true;
  });
  c.summary["ratio_by_n"] = per_n;
  c.files["table.csv"] = csv.str();
}

void run_bound(Context& c, bool negative) {
  const Scenario& s = c.s;
  const LatticeDistribution f = c.lattice(c.dist());
  const std::int64_t n_max = s.integer("n_max");
  RatioDiagnostic d = negative ? bound_check_negative_mean(f, n_max, c.conv())
                               : bound_check_nonneg_mean(f, s.real("c"), n_max, c.conv());
  Csv csv({"n", "x_argmax", "value"});
  for (const auto& p : d.points) csv.row({static_cast<double>(p.n.value_or(0)), p.x, p.ratio});
  c.summary["bound"] = diag_json(d);
  c.summary["verdict"] = d.verdict.to_string();
  c.files["table.csv"] = csv.str();
}

void run_big_jump(Context& c) {
  const Scenario& s = c.s;
  const Distribution F = c.dist();
  const LatticeDistribution f = c.lattice(F);
  std::function<double(double)> h;
  if (s.get("h") == "sqrt")
    h = [](double x) { return std::sqrt(x); };
  else if (s.get("h") == "auto")
    h = find_h_function(F);
  else
    s.fail("h", "expected sqrt or auto");
  BigJumpVariant v = BigJumpVariant::two_sided;
  if (s.get("variant") == "lower_bound")
    v = BigJumpVariant::lower_bound;
  else if (s.get("variant") != "two_sided")
    s.fail("variant", "expected two_sided or lower_bound");
  RatioDiagnostic d = big_jump_range_check(f, h, c.grid(), v, c.conv());
  if (v == BigJumpVariant::two_sided) {
    d.policy.tolerance = c.tol();
    d.finalize();
  }
  Csv csv({"x", "h", "n_argmax", "value"});
  for (const auto& p : d.points) csv.row({p.x, h(p.x), static_cast<double>(p.n.value_or(0)), p.ratio});
  c.summary["big_jump"] = diag_json(d);
  c.summary["verdict"] = d.verdict.to_string();
  c.files["table.csv"] = csv.str();
}

void run_branching(Context& c) {
  const Scenario& s = c.s;
  const Distribution off_d = c.dist();
  if (!off_d.holds<LatticeDistribution>()) c.s.fail("distribution", "offspring law must be a lattice on the integers");
  const auto& off = off_d.get<LatticeDistribution>();
  const int gens = static_cast<int>(s.integer("generations"));
  const std::vector<double> xs = c.grid();
  const std::vector<double> exact = gw_generation_tail(off, gens, xs, c.conv());
  std::vector<Estimate> mc;
  if (s.get("method") != "exact") {
    mc = simulate_gw(off, gens, xs, c.sim());
    for (const auto& e : mc) c.track(e);
  }
  const double m = off.mean();
  auto ftail = [&](double x) { return std::exp(off.log_tail(x)); };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Csv csv({"x", "exact", "predictor", "ratio", "sim_estimate", "sim_std_error", "z"});
  RatioDiagnostic d;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double p = nan;
    if (std::abs(m - 1.0) < 1e-9)
      p = gens * ftail(xs[i]);
    else if (gens == 2)
      p = m * ftail(xs[i]) + ftail(xs[i] / m);
    double est = nan, se = nan, z = nan;
    if (!mc.empty()) {
      est = mc[i].value;
      se = mc[i].std_error;
      z = compare_exact(mc[i], std::min(1.0, exact[i]));
    }
    csv.row({xs[i], exact[i], p, exact[i] / p, est, se, z});
    d.points.push_back({xs[i], std::nullopt, exact[i] / p});
  }
  d.policy = {VerdictRule::convergence, 1.0, 0.1, 5};
  finalize_with(d, c.tol());
  d.notes.emplace_back("offspring_mean", m);
  c.summary["ratio"] = diag_json(d);
  c.summary["verdict"] = d.verdict.to_string();
  c.files["table.csv"] = csv.str();
}

void run_pathological(Context& c) {
  const Scenario& s = c.s;
  const int k = static_cast<int>(s.integer("k"));
  if (k < 2 || k > 4) s.fail("k", "must lie in 2..4");
  const PathologicalG g = build_pathological(5);
  c.summary["b"] = g.b;
  json out = json::object();
  for (const std::string& what : s.words("verify")) {
    if (what == "sequence") {
      Csv csv({"k", "R", "t", "r", "n_k", "x_k", "identity_error", "tail_error", "r_t_next_over_R", "r_t",
               "segment_integral", "segment_times_R"});
      for (const auto& row : sequence_report(g))
        csv.row({static_cast<double>(row.k), row.R, row.t, row.r, static_cast<double>(g.n[row.k]), g.x[row.k],
                 row.identity_error, row.tail_error, row.r_t_next_over_R, row.r_t, row.segment_integral,
                 row.segment_times_R});
      c.files["sequence.csv"] = csv.str();
    } else if (what == "jk") {
      Csv csv({"k", "value", "bound", "pass"});
      json arr = json::array();
      for (int j = 2; j <= k; ++j) {
        try {
          const JkCheck r = verify_Jk(g, j);
          csv.row({static_cast<double>(j), r.value, r.bound, r.pass ? 1.0 : 0.0});
          arr.push_back({{"k", j}, {"value", prob(r.value)}, {"bound", prob(r.bound)}, {"pass", r.pass}});
        } catch (const PreconditionError& e) {
          arr.push_back({{"k", j}, {"error", e.what()}});
        }
      }
      c.files["jk.csv"] = csv.str();
      out["jk"] = arr;
    } else if (what == "superlinearity") {
      Csv csv({"k", "n", "x_k", "ratio"});
      json arr = json::object();
      for (int j = 3; j <= k; ++j) {
        RatioDiagnostic d = superlinearity_report(g, j);
        for (const auto& p : d.points) csv.row({static_cast<double>(j), static_cast<double>(*p.n), p.x, p.ratio});
        arr[std::to_string(j)] = diag_json(d);
      }
      c.files["superlinearity.csv"] = csv.str();
      out["superlinearity"] = arr;
    } else if (what == "kluppelberg") {
      std::vector<int> ks;
      for (int j = 2; j <= k; ++j) ks.push_back(j);
      RatioDiagnostic d = pathological_kluppelberg(g, ks);
      Csv csv({"k", "x", "value", "reference"});
      for (std::size_t i = 0; i < ks.size(); ++i)
        csv.row({static_cast<double>(ks[i]), d.points[i].x, d.points[i].ratio,
                 *d.note("target_" + std::to_string(ks[i]))});
      c.files["kluppelberg.csv"] = csv.str();
      out["kluppelberg"] = diag_json(d);
    } else {
      s.fail("verify", "unknown check '" + what + "' (sequence, jk, superlinearity, kluppelberg)");
    }
  }
  c.summary["checks"] = out;
}

void run_blowup_weibull(Context& c) {
  const Scenario& s = c.s;
  ConvolutionOptions o;
  o.cell_budget = static_cast<std::size_t>(s.integer("numerics.cell_budget"));
  const WeibullBlowup w = weibull_blowup_scenario(s.real("beta"), s.real("numerics.step"), s.real("numerics.x_max"),
                                                  static_cast<std::size_t>(s.integer("points")), o);
  Csv csv({"x", "exact", "remainder_lo", "remainder_hi", "tail", "ratio"});
  for (std::size_t i = 0; i < w.exact.rows.size(); ++i) {
    const auto& r = w.exact.rows[i];
    csv.row({r.x, r.estimate(), r.remainder_lo, r.remainder_hi, tail(Distribution(w.family), r.x),
             w.ratio.points[i].ratio});
  }
  c.summary["ratio"] = diag_json(w.ratio);
  c.summary["verdict"] = w.ratio.verdict.to_string();
  c.files["table.csv"] = csv.str();
}

void run_stopping_blowup(Context& c) {
  const Scenario& s = c.s;
  const StoppingBlowup b = stopping_time_blowup_scenario(s.real("beta"), s.real("x"));
  const StoppedSimResult mc = simulate_stopped_sum(b.f, b.rule, {b.x}, c.sim());
  c.track(mc.sum[0]);
  c.track(mc.tau_mean);
  const double p = mc.tau_mean.value * tail(b.f, b.x);
  const Estimate& e = mc.sum[0];
  const double z = e.std_error > 0 ? (e.value - p) / e.std_error : std::numeric_limits<double>::quiet_NaN();
  Csv csv({"x", "estimate", "std_error", "tau_mean", "predictor", "ratio", "z", "lower_bound_ratio"});
  csv.row({b.x, e.value, e.std_error, mc.tau_mean.value, p, e.value / p, z, b.lower_bound_ratio});
  c.summary["rule"] = b.rule.describe();
  c.summary["ratio"] = prob(e.value / p);
  c.summary["z"] = prob(z);
  c.summary["lower_bound_ratio"] = prob(b.lower_bound_ratio);
  c.files["table.csv"] = csv.str();
}

void run_classify(Context& c) {
  ClassifyOptions o;
  const std::vector<double> xs = c.grid();
  o.x_min = xs.front();
  o.x_max = xs.back();
  o.points = xs.size();
  o.tolerance = c.tol();
  const ClassificationReport r = classify_distribution(c.dist(), o);
  json classes = json::object();
  for (const auto& ce : r.classes) classes[ce.name] = diag_json(ce.evidence);
  json irv;
  irv["verdict"] = r.irv.verdict.to_string();
  json rows = json::array();
  for (const auto& [eps, v] : r.irv.rows) rows.push_back(json::array({eps, prob(v)}));
  irv["rows"] = rows;
  classes["irv"] = irv;
  c.summary["classes"] = classes;
  Csv csv({"class", "verdict_code", "sup", "last_deviation"});
  std::ostringstream os;
  os << "class,verdict\n";
  for (const auto& ce : r.classes) os << ce.name << ',' << ce.verdict.to_string() << '\n';
  os << "irv," << r.irv.verdict.to_string() << '\n';
  c.files["classes.csv"] = os.str();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + p.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

void write_bundle(const std::filesystem::path& dir, const std::map<std::string, std::string>& files) {
  namespace fs = std::filesystem;
  const fs::path parent = dir.parent_path().empty() ? fs::path(".") : dir.parent_path();
  fs::create_directories(parent);
  const std::string tag = std::to_string(::getpid());
  const fs::path tmp = parent / ("." + dir.filename().string() + ".tmp." + tag);
  const fs::path old = parent / ("." + dir.filename().string() + ".old." + tag);
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  for (const auto& [name, content] : files) {
    std::ofstream out(tmp / name, std::ios::binary);
    out << content;
    if (!out) throw ResourceError("cannot write '" + (tmp / name).string() + "'");
  }
  if (fs::exists(dir)) fs::rename(dir, old);
  fs::rename(tmp, dir);
  fs::remove_all(old);
}

Scenario load_scenario(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (!fs::exists(name_or_path)) return bundled_scenario(name_or_path);
  const std::string text = read_file(name_or_path);
  if (fs::path(name_or_path).extension() == ".json") {
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("config_text"))
      throw ValidationError(name_or_path + ": not a result summary (no config_text)");
    return Scenario::parse(j["config_text"].get<std::string>(), name_or_path);
  }
  return Scenario::parse(text, name_or_path);
}

RunResult run_scenario(Scenario scenario, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (options.tolerance) scenario.set("tolerance", format_real(*options.tolerance));
  scenario.resolve();
  if (options.seed && scenario.has("simulation.seed")) scenario.set("simulation.seed", std::to_string(*options.seed));

  Context c{scenario, json::object(), {}, true};
  c.summary["name"] = scenario.name();
  c.summary["kind"] = scenario.kind();
  c.summary["description"] = scenario.get("description");
  c.summary["version"] = HEAVYSUM_VERSION;
  json cfg = json::object();
  for (const auto& [k, e] : scenario.entries()) cfg[k] = e.value;
  c.summary["config"] = cfg;
  c.summary["config_text"] = scenario.to_text();

  const std::string kind = scenario.kind();
  try {
    if (kind == "stopped") run_stopped(c);
    else if (kind == "simulate") run_simulate(c);
    else if (kind == "maxima") run_maxima(c);
    else if (kind == "bound_negative") run_bound(c, true);
    else if (kind == "bound_nonneg") run_bound(c, false);
    else if (kind == "big_jump") run_big_jump(c);
    else if (kind == "branching") run_branching(c);
    else if (kind == "pathological") run_pathological(c);
    else if (kind == "blowup_weibull") run_blowup_weibull(c);
    else if (kind == "stopping_blowup") run_stopping_blowup(c);
    else if (kind == "classify") run_classify(c);
  } catch (const ValidationError& e) {
    throw ValidationError("scenario " + scenario.name() + ": " + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError("scenario " + scenario.name() + ": " + e.what());
  }
  c.summary["estimates_valid"] = c.valid;

  RunResult r;
  r.name = scenario.name();
  r.estimates_valid = c.valid;
  r.summary = c.summary.dump(2) + "\n";
  r.files = std::move(c.files);
  r.files["summary.json"] = r.summary;
  r.files["scenario.txt"] = scenario.to_text();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.directory = options.out_dir / r.name;
  if (options.write) {
    auto all = r.files;
    json timing;
    timing["seconds"] = r.seconds;
    all["timing.json"] = timing.dump(2) + "\n";
    write_bundle(r.directory, all);
  }
  if (!c.valid)
    throw InvalidEstimateError("scenario " + r.name + ": a Monte Carlo estimate breached its truncation limit");
  return r;
}

}  // namespace heavysum
