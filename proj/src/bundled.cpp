#include "heavysum/errors.hpp"
#include "heavysum/scenario.hpp"

namespace heavysum {

const std::vector<BundledScenario>& bundled_scenarios() {
  static const std::vector<BundledScenario> all = {
      {"theorem1_geometric_pareto", "stopped sum, Pareto(2,1) - 3 steps (negative mean), geometric count",
       R"(name = theorem1_geometric_pareto
description = stopped sum, Pareto(2,1) - 3 steps (negative mean), geometric count
kind = stopped
distribution = shift base=(pareto alpha=2 xm=1) by=-3
tau = geometric p=0.5

[grid]
start = 99.7
stop = 997
count = 10

[numerics]
step = 0.02
x_max = 1200
)"},
      {"theorem1_nonneg_mean_eq1", "stopped sum, Pareto(2.5,1) steps (positive mean), geometric count, tail condition on tau",
       R"(name = theorem1_nonneg_mean_eq1
description = stopped sum, Pareto(2.5,1) steps (positive mean), geometric count, tail condition on tau
kind = stopped
distribution = pareto alpha=2.5 xm=1
tau = geometric p=0.5
eq1_c = 1.6666666666666667

[grid]
start = 25.12
stop = 251.19
count = 8

[numerics]
step = 0.02
x_max = 300
)"},
      {"theorem1_cross_mc", "stopped sum on the lattice, exact series against Monte Carlo",
       R"(name = theorem1_cross_mc
description = stopped sum on the lattice, exact series against Monte Carlo
kind = stopped
method = both
distribution = shift base=(pareto alpha=2 xm=1) by=-3
tau = geometric p=0.5

[grid]
points = [5, 10, 20, 40]

[numerics]
step = 0.02
x_max = 120

[simulation]
samples = 1000000
seed = 7
)"},
      {"th_asymp_negative_mean", "uniform bound on tail^{*n}(x) / (n tail(x)), negative mean",
       R"(name = th_asymp_negative_mean
description = uniform bound on tail^{*n}(x) / (n tail(x)), negative mean
kind = bound_negative
distribution = shift base=(pareto alpha=2 xm=1) by=-3
n_max = 200

[numerics]
step = 0.02
x_max = 600
)"},
      {"th_asymp_nonneg_mean", "uniform bound on tail^{*n}(x) tail(cn) / tail(x), positive mean, c = 2",
       R"(name = th_asymp_nonneg_mean
description = uniform bound on tail^{*n}(x) tail(cn) / tail(x), positive mean, c = 2
kind = bound_nonneg
distribution = pareto alpha=2.5 xm=1
c = 2
n_max = 60

[numerics]
step = 0.05
x_max = 500
)"},
      {"maxima_negative_mean", "maxima of partial sums against the integrated-tail approximation",
       R"(name = maxima_negative_mean
description = maxima of partial sums against the integrated-tail approximation
kind = maxima
distribution = shift base=(pareto alpha=2 xm=1) by=-3
n = [1, 5, 20, 100]

[grid]
start = 31.32
stop = 313.23
count = 6

[numerics]
step = 0.02
x_max = 520
)"},
      {"equiv_nf_centered_pareto", "one big jump for n up to sqrt(x), centered Pareto(2.5)",
       R"(name = equiv_nf_centered_pareto
description = one big jump for n up to sqrt(x), centered Pareto(2.5)
kind = big_jump
distribution = center base=(pareto alpha=2.5 xm=1)
h = sqrt

[grid]
points = [200, 400, 800]

[numerics]
step = 0.02
x_max = 850
)"},
      {"thm2_comparable_pareto", "stopped sum with a count tail comparable to the step tail",
       R"(name = thm2_comparable_pareto
description = stopped sum with a count tail comparable to the step tail
kind = stopped
distribution = pareto alpha=2.2 xm=1
tau = pareto_count alpha=1.8
predictor = comparable

[grid]
start = 18.74
stop = 187.38
count = 6

[numerics]
step = 0.05
x_max = 250
)"},
      {"co1_critical_gw", "second generation of a critical branching process, Pareto(2.5) offspring tail",
       R"(name = co1_critical_gw
description = second generation of a critical branching process, Pareto(2.5) offspring tail
kind = branching
method = both
distribution = offspring base=(discrete base=(pareto alpha=2.5 xm=1) step=1 x_max=1000) mean=1
generations = 2

[grid]
points = [9, 18, 36, 72]

[simulation]
samples = 2000000
seed = 11
)"},
      {"co1_supercritical_gw", "second generation of a supercritical branching process, two-term tail",
       R"(name = co1_supercritical_gw
description = second generation of a supercritical branching process, two-term tail
kind = branching
distribution = discrete base=(pareto alpha=2.5 xm=1) step=1 x_max=1000
generations = 2

[grid]
points = [25, 50, 100, 200]
)"},
      {"stopping_bounded_first_exceed", "dependent bounded stopping time: first passage above a, capped at N",
       R"(name = stopping_bounded_first_exceed
description = dependent bounded stopping time: first passage above a, capped at N
kind = simulate
distribution = shift base=(pareto alpha=2 xm=1) by=-3
rule = bounded_first_exceed a=5 N=10

[grid]
points = [250, 313.2]

[simulation]
samples = 10000000
seed = 3
)"},
      {"stopping_h_blowup", "stopping time H(2 xi_1) + 1 with Weibull(0.5) steps: ratio grows",
       R"(name = stopping_h_blowup
description = stopping time H(2 xi_1) + 1 with Weibull(0.5) steps: ratio grows
kind = stopping_blowup
beta = 0.5
x = 100

[simulation]
samples = 1000000
seed = 5
)"},
      {"blowup_weibull_beta07", "Weibull(0.7) steps with a count tail of the same order: ratio grows",
       R"(name = blowup_weibull_beta07
description = Weibull(0.7) steps with a count tail of the same order: ratio grows
kind = blowup_weibull
beta = 0.7
points = 12

[numerics]
step = 0.25
x_max = 1000
)"},
      {"pathological_k4", "subexponential law with superlinear tail^{*n}(x) / tail(x) along a sequence",
       R"(name = pathological_k4
description = subexponential law with superlinear tail^{*n}(x) / tail(x) along a sequence
kind = pathological
k = 4
verify = [sequence, jk, superlinearity]
)"},
      {"pathological_kluppelberg", "integrated hazard criterion on the pathological law",
       R"(name = pathological_kluppelberg
description = integrated hazard criterion on the pathological law
kind = pathological
k = 4
verify = [kluppelberg]
)"},
      {"classify_weibull", "class membership report for Weibull(0.5)",
       R"(name = classify_weibull
description = class membership report for Weibull(0.5)
kind = classify
distribution = weibull beta=0.5

[grid]
start = 10
stop = 2000
count = 8
)"},
  };
  return all;
}

Scenario bundled_scenario(const std::string& name) {
  for (const auto& b : bundled_scenarios())
    if (b.name == name) return Scenario::parse(b.text, "bundled:" + name);
  throw ValidationError("unknown bundled scenario '" + name + "'");
}

}  // namespace heavysum
