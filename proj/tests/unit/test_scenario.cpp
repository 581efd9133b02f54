#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "heavysum/errors.hpp"
#include "heavysum/runner.hpp"
#include "heavysum/scenario.hpp"

using namespace heavysum;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("heavysum_unit_" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(Scenario::parse("name = a\nbogus line\n", "s.txt"), doctest::Contains("s.txt:2"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(Scenario::parse("name = a\n[grid]\nwidth = 3\n", "s.txt"), doctest::Contains("s.txt:3"),
                       ValidationError);
  CHECK_THROWS_AS(Scenario::parse("distribution = pareto alpha=2\n"), ValidationError);
  Scenario s = Scenario::parse("name = a\ndistribution = pareto alpha=2\ntau = geometric p=0.5\nn_max = 4\n", "s.txt");
  CHECK_THROWS_WITH_AS(s.resolve(), doctest::Contains("s.txt:4"), ValidationError);
}

TEST_CASE("minimal scenario resolves every knob") {
  Scenario s = Scenario::parse("name = tiny\ndistribution = pareto alpha=2.5\ntau = geometric p=0.5\n");
  s.resolve();
  for (const char* key : {"kind", "method", "grid.start", "grid.stop", "grid.count", "numerics.step", "numerics.x_max",
                          "numerics.cell_budget", "simulation.seed", "tolerance"})
    CHECK(s.has(key));
  Scenario again = Scenario::parse(s.to_text());
  again.resolve();
  CHECK(again.to_text() == s.to_text());
}

TEST_CASE("grids") {
  const auto g = make_grid(10, 1000, 3, true);
  CHECK(g[1] == doctest::Approx(100));
  CHECK(parse_grid("1:3:3:linear") == std::vector<double>{1, 2, 3});
  CHECK(parse_grid("[5, 7]") == std::vector<double>{5, 7});
  CHECK_THROWS_AS((void)parse_grid("1:3"), ValidationError);
}

TEST_CASE("catalog") {
  const auto& all = bundled_scenarios();
  CHECK(all.size() >= 12);
  std::set<std::string> prefixes;
  for (const auto& b : all) {
    CHECK_FALSE(b.description.empty());
    prefixes.insert(b.name.substr(0, b.name.find('_')));
    Scenario s = bundled_scenario(b.name);
    CHECK_NOTHROW(s.resolve());
  }
  for (const char* p : {"theorem1", "th", "thm2", "co1", "stopping", "pathological"}) CHECK(prefixes.count(p));
  CHECK_THROWS_AS((void)bundled_scenario("nope"), ValidationError);
}

TEST_CASE("run writes a bundle that re-runs bit-identically") {
  const fs::path out = scratch("bundle");
  RunOptions o;
  o.out_dir = out;
  const RunResult a = run_scenario(bundled_scenario("theorem1_cross_mc"), o);
  CHECK(fs::exists(out / "theorem1_cross_mc" / "summary.json"));
  CHECK(fs::exists(out / "theorem1_cross_mc" / "table.csv"));
  CHECK(fs::exists(out / "theorem1_cross_mc" / "timing.json"));
  RunOptions o2;
  o2.write = false;
  const RunResult b = run_scenario(load_scenario((out / "theorem1_cross_mc" / "summary.json").string()), o2);
  CHECK(a.files == b.files);
  fs::remove_all(out);
}

TEST_CASE("seed override changes Monte Carlo output only") {
  RunOptions o;
  o.write = false;
  const RunResult a = run_scenario(bundled_scenario("co1_critical_gw"), o);
  o.seed = 99;
  const RunResult b = run_scenario(bundled_scenario("co1_critical_gw"), o);
  CHECK(a.files.at("table.csv") != b.files.at("table.csv"));
  CHECK(b.summary.find("\"simulation.seed\": \"99\"") != std::string::npos);
}

TEST_CASE("validation errors name the scenario and field") {
  Scenario s = Scenario::parse("name = bad\ndistribution = pareto alpha=-1\ntau = geometric p=0.5\n");
  RunOptions o;
  o.write = false;
  CHECK_THROWS_WITH_AS(run_scenario(s, o), doctest::Contains("alpha"), ValidationError);
}

TEST_CASE("resource errors surface") {
  Scenario s = Scenario::parse(
      "name = big\ndistribution = pareto alpha=2\ntau = geometric p=0.5\n[grid]\npoints = [100]\n"
      "[numerics]\nstep = 0.001\nx_max = 200\ncell_budget = 1000\n");
  RunOptions o;
  o.write = false;
  CHECK_THROWS_AS(run_scenario(s, o), ResourceError);
}

TEST_CASE("invalid estimates are written then reported") {
  const fs::path out = scratch("invalid");
  Scenario s = Scenario::parse(
      "name = capped\nkind = simulate\ndistribution = pareto alpha=2\ntau = degenerate n=50\n"
      "[grid]\npoints = [100]\n[simulation]\nsamples = 1000\nstep_cap = 10\n");
  RunOptions o;
  o.out_dir = out;
  CHECK_THROWS_AS(run_scenario(s, o), InvalidEstimateError);
  CHECK(fs::exists(out / "capped" / "summary.json"));
  fs::remove_all(out);
}
