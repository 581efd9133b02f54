// heavysum command-line entry point: builds a Scenario per subcommand and hands it to the runner.
#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "heavysum/errors.hpp"
#include "heavysum/runner.hpp"
#include "heavysum/scenario.hpp"
#include "heavysum/spec_format.hpp"
#include "heavysum/tailcalc.hpp"

using namespace heavysum;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out_dir = "results";
  int threads = 0;
  std::optional<double> tolerance;
};

RunOptions run_options(const Globals& g) {
  RunOptions o;
  o.out_dir = g.out_dir;
  o.seed = g.seed;
  o.tolerance = g.tolerance;
  return o;
}

void report(const RunResult& r) {
  std::cout << r.summary;
  std::cerr << "wrote " << r.directory.string() << " (" << format_real(r.seconds) << " s)\n";
}

// Quote-free single-line values only; multi-line input would break the scenario text.
std::string line_value(const std::string& v, const char* what) {
  if (v.find('\n') != std::string::npos) throw ValidationError(std::string(what) + ": must fit on one line");
  return v;
}

void set_grid(Scenario& s, const std::string& grid) {
  if (grid.empty()) return;
  std::ostringstream os;
  os << '[';
  const auto xs = parse_grid(grid);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << format_real(xs[i]);
  os << ']';
  s.set("grid.points", os.str());
}

int dispatch(int argc, char** argv) {
  CLI::App app{"heavysum: tails of sums, stopped sums and maxima for heavy-tailed laws"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HEAVYSUM_VERSION);
  Globals g;
  app.add_option("--seed", g.seed, "override the Monte Carlo seed");
  app.add_option("--out-dir", g.out_dir, "results directory")->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--tolerance", g.tolerance, "verdict tolerance override")->check(CLI::PositiveNumber);

  std::function<int()> action;

  auto* list = app.add_subcommand("list", "bundled scenarios");
  list->callback([&] {
    action = [] {
      for (const auto& b : bundled_scenarios()) std::cout << b.name << "\t" << b.description << "\n";
      return 0;
    };
  });

  std::string target;
  auto* run = app.add_subcommand("run", "run a bundled scenario, a scenario file or a summary.json");
  run->add_option("scenario", target, "name or path")->required();
  run->callback([&] { action = [&] { report(run_scenario(load_scenario(target), run_options(g))); return 0; }; });

  std::string spec, grid, name;
  auto* classify = app.add_subcommand("classify", "class-membership diagnostics for a distribution");
  classify->add_option("spec", spec, "distribution spec, e.g. \"weibull beta=0.5\"")->required();
  classify->add_option("--x-grid", grid, "start:stop:count[:log|:linear] or [x1, x2, ...]");
  classify->add_option("--name", name, "result name")->default_str("classify");
  classify->callback([&] {
    action = [&] {
      Scenario s = Scenario::parse("name = classify\nkind = classify\n", "classify");
      s.set("name", name.empty() ? "classify" : name);
      s.set("distribution", line_value(spec, "spec"));
      set_grid(s, grid);
      report(run_scenario(s, run_options(g)));
      return 0;
    };
  });

  std::int64_t n = 1;
  double step = 0, x_max = 0;
  bool maxima = false;
  auto* convtail = app.add_subcommand("convtail", "tail of the n-fold convolution (or of the running maximum)");
  convtail->add_option("spec", spec, "distribution spec")->required();
  convtail->add_option("-n", n, "number of summands")->required()->check(CLI::PositiveNumber);
  convtail->add_option("--step", step, "lattice step")->required()->check(CLI::PositiveNumber);
  convtail->add_option("--x-max", x_max, "upper end of the exact range")->required()->check(CLI::PositiveNumber);
  convtail->add_flag("--max", maxima, "max over k <= n of the partial sums instead of S_n");
  convtail->callback([&] {
    action = [&] {
      const Distribution d = parse_distribution(spec);
      const LatticeDistribution f = discretize(d, step, x_max);
      ConvolutionOptions o;
      o.x_hi = x_max;
      const TailGrid t = maxima ? max_partial_sum_tail(f, n, o) : conv_power_tail(f, n, o);
      write_csv(t, std::cout);
      return 0;
    };
  });

  std::string file;
  auto* stopped = app.add_subcommand("stopped", "stopped-sum tail from a scenario file");
  stopped->add_option("scenario", file, "scenario file or bundled name")->required();
  stopped->callback([&] {
    action = [&] {
      Scenario s = load_scenario(file);
      s.set_default("kind", "stopped");
      if (s.kind() != "stopped") s.fail("kind", "the stopped subcommand needs kind = stopped");
      report(run_scenario(s, run_options(g)));
      return 0;
    };
  });

  std::optional<std::int64_t> samples;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo stopped sums from a scenario file");
  simulate->add_option("scenario", file, "scenario file or bundled name")->required();
  simulate->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
  simulate->add_option("--x-grid", grid, "start:stop:count[:log|:linear] or [x1, x2, ...]");
  simulate->callback([&] {
    action = [&] {
      Scenario s = load_scenario(file);
      s.set_default("kind", "simulate");
      if (s.kind() == "stopped") s.set("method", s.has("method") && s.get("method") == "both" ? "both" : "simulate");
      if (samples) s.set("simulation.samples", std::to_string(*samples));
      set_grid(s, grid);
      report(run_scenario(s, run_options(g)));
      return 0;
    };
  });

  int k = 4;
  std::vector<std::string> verify;
  auto* patho = app.add_subcommand("pathological", "the hazard-built counterexample and its checks");
  patho->add_option("--k", k, "largest construction index to check")->check(CLI::Range(2, 4))->capture_default_str();
  patho->add_option("--verify", verify, "sequence, jk, superlinearity, kluppelberg (repeatable)")
      ->check(CLI::IsMember({"sequence", "jk", "superlinearity", "kluppelberg"}));
  patho->callback([&] {
    action = [&] {
      Scenario s = Scenario::parse("name = pathological\nkind = pathological\n", "pathological");
      s.set("name", "pathological_k" + std::to_string(k));
      s.set("k", std::to_string(k));
      std::string v;
      for (const auto& w : verify.empty() ? std::vector<std::string>{"sequence", "jk", "superlinearity"} : verify)
        v += (v.empty() ? "" : " ") + w;
      s.set("verify", v);
      report(run_scenario(s, run_options(g)));
      return 0;
    };
  });

  int generations = 2;
  std::string method = "exact";
  auto* branching = app.add_subcommand("branching", "Galton-Watson generation sizes for an integer offspring law");
  branching->add_option("spec", spec, "offspring spec (a lattice on 0, 1, 2, ...)")->required();
  branching->add_option("--generations", generations, "generation index")->check(CLI::Range(1, 4))->capture_default_str();
  branching->add_option("--x-grid", grid, "start:stop:count[:log|:linear] or [x1, x2, ...]")->required();
  branching->add_option("--method", method, "exact, simulate or both")
      ->check(CLI::IsMember({"exact", "simulate", "both"}))
      ->capture_default_str();
  branching->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
  branching->callback([&] {
    action = [&] {
      Scenario s = Scenario::parse("name = branching\nkind = branching\n", "branching");
      s.set("name", "branching");
      s.set("distribution", line_value(spec, "spec"));
      s.set("generations", std::to_string(generations));
      s.set("method", method);
      if (samples) s.set("simulation.samples", std::to_string(*samples));
      set_grid(s, grid);
      report(run_scenario(s, run_options(g)));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);
  return action();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const InvalidEstimateError& e) {
    std::cerr << "invalid estimate: " << e.what() << "\n";
    return 4;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
