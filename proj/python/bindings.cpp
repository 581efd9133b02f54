#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heavysum/classify.hpp"
#include "heavysum/errors.hpp"
#include "heavysum/pathological.hpp"
#include "heavysum/runner.hpp"
#include "heavysum/scenario.hpp"
#include "heavysum/sim.hpp"
#include "heavysum/spec_format.hpp"
#include "heavysum/stopped.hpp"
#include "heavysum/tailcalc.hpp"

namespace py = pybind11;
using namespace heavysum;

namespace {

py::dict diag_dict(const RatioDiagnostic& d) {
  py::dict out;
  out["verdict"] = d.verdict.to_string();
  py::list pts;
  for (const auto& p : d.points) pts.append(py::make_tuple(p.x, p.n ? py::cast(*p.n) : py::none(), p.ratio));
  out["points"] = pts;
  py::dict notes;
  for (const auto& [k, v] : d.notes) notes[py::str(k)] = v;
  out["notes"] = notes;
  return out;
}

LatticeDistribution as_lattice(const std::string& spec, double step, double x_max) {
  const Distribution d = parse_distribution(spec);
  if (d.holds<LatticeDistribution>() && step <= 0) return d.get<LatticeDistribution>();
  if (step <= 0) throw ValidationError("step must be positive for non-lattice laws");
  return discretize(d, step, x_max);
}

}  // namespace

PYBIND11_MODULE(_heavysum, m) {
  m.doc() = "Tails of sums, stopped sums and maxima of heavy-tailed random walks";
  m.attr("__version__") = HEAVYSUM_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<InvalidEstimateError>(m, "InvalidEstimateError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());

  m.def("tail", [](const std::string& spec, double x) { return tail(parse_distribution(spec), x); },
        py::arg("spec"), py::arg("x"));
  m.def("log_tail", [](const std::string& spec, double x) { return log_tail(parse_distribution(spec), x); },
        py::arg("spec"), py::arg("x"));
  m.def("mean", [](const std::string& spec) { return mean(parse_distribution(spec)); }, py::arg("spec"));
  m.def("integrated_tail",
        [](const std::string& spec, double a, double b) { return integrated_tail(parse_distribution(spec), a, b); },
        py::arg("spec"), py::arg("a"), py::arg("b"));
  m.def("normalize_spec", [](const std::string& spec) { return format_distribution(parse_distribution(spec)); },
        py::arg("spec"));

  m.def(
      "conv_tail",
      [](const std::string& spec, std::int64_t n, const std::vector<double>& xs, double step, double x_max,
         bool maxima) {
        const LatticeDistribution f = as_lattice(spec, step, x_max);
        ConvolutionOptions o;
        o.x_hi = x_max;
        py::gil_scoped_release release;
        const LatticeDistribution law = maxima ? max_partial_sum(f, n, o) : conv_power(f, n, o);
        std::vector<double> out;
        for (double x : xs) out.push_back(std::exp(law.log_tail(x)));
        return out;
      },
      py::arg("spec"), py::arg("n"), py::arg("x"), py::arg("step") = 0.0, py::arg("x_max") = kInf,
      py::arg("maxima") = false, "P{S_n > x} (or P{M_n > x}) on the lattice of `spec`.");

  m.def(
      "stopped_tail",
      [](const std::string& spec, const std::string& tau, const std::vector<double>& xs, double step, double x_max,
         bool maxima) {
        const LatticeDistribution f = as_lattice(spec, step, x_max);
        StoppedOptions o;
        o.conv.x_hi = x_max;
        StoppedResult r;
        {
          py::gil_scoped_release release;
          const auto t = parse_counting(tau);
          r = maxima ? stopped_max_tail_exact(f, t, xs, o) : stopped_sum_tail_exact(f, t, xs, o);
        }
        py::list rows;
        for (const auto& row : r.rows)
          rows.append(py::dict(py::arg("x") = row.x, py::arg("estimate") = row.estimate(),
                               py::arg("remainder_lo") = row.remainder_lo, py::arg("remainder_hi") = row.remainder_hi));
        return rows;
      },
      py::arg("spec"), py::arg("tau"), py::arg("x"), py::arg("step") = 0.0, py::arg("x_max") = kInf,
      py::arg("maxima") = false);

  m.def(
      "simulate",
      [](const std::string& spec, const std::string& rule, const std::vector<double>& xs, std::int64_t samples,
         std::uint64_t seed) {
        SimOptions o;
        o.samples = samples;
        o.seed = seed;
        StoppedSimResult r;
        {
          const Distribution d = parse_distribution(spec);
          const StoppingRule sr = parse_stopping_rule(rule);
          py::gil_scoped_release release;
          r = simulate_stopped_sum(d, sr, xs, o);
        }
        py::list rows;
        for (std::size_t i = 0; i < xs.size(); ++i)
          rows.append(py::dict(py::arg("x") = xs[i], py::arg("estimate") = r.sum[i].value,
                               py::arg("std_error") = r.sum[i].std_error, py::arg("valid") = r.sum[i].valid));
        return py::make_tuple(rows, r.tau_mean.value);
      },
      py::arg("spec"), py::arg("rule"), py::arg("x"), py::arg("samples") = 100000, py::arg("seed") = 1);

  m.def(
      "classify",
      [](const std::string& spec) {
        const ClassificationReport r = classify_distribution(parse_distribution(spec));
        py::dict out;
        for (const auto& c : r.classes) out[py::str(c.name)] = diag_dict(c.evidence);
        out["irv"] = r.irv.verdict.to_string();
        return out;
      },
      py::arg("spec"));

  m.def("pathological_sequence", [](int k_max) {
    const PathologicalG g = build_pathological(k_max);
    return py::dict(py::arg("R") = g.R, py::arg("t") = g.t, py::arg("r") = g.r, py::arg("b") = g.b);
  }, py::arg("k_max") = 5);

  m.def("list_scenarios", [] {
    py::list out;
    for (const auto& b : bundled_scenarios()) out.append(py::make_tuple(b.name, b.description));
    return out;
  });
  m.def(
      "run",
      [](const std::string& name_or_path, const std::string& out_dir, bool write) {
        RunOptions o;
        o.out_dir = out_dir;
        o.write = write;
        RunResult r;
        {
          Scenario s = load_scenario(name_or_path);
          py::gil_scoped_release release;
          r = run_scenario(s, o);
        }
        return py::make_tuple(r.summary, r.files);
      },
      py::arg("scenario"), py::arg("out_dir") = "results", py::arg("write") = false,
      "Runs a scenario; returns (summary JSON text, {file name: content}).");
}
