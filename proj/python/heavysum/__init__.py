"""Tails of sums, stopped sums and maxima of heavy-tailed random walks.

Distributions are passed as spec strings, e.g. ``"pareto alpha=2 xm=1"`` or
``"shift base=(pareto alpha=2 xm=1) by=-3"``.
"""

import json

from ._heavysum import (
    DivergenceError,
    Error,
    InvalidEstimateError,
    ResourceError,
    ValidationError,
    __version__,
    classify,
    conv_tail,
    integrated_tail,
    list_scenarios,
    log_tail,
    mean,
    normalize_spec,
    pathological_sequence,
    simulate,
    stopped_tail,
    tail,
)
from ._heavysum import run as _run


def run(scenario, out_dir="results", write=False):
    """Run a bundled scenario (or a scenario file) and return the parsed summary."""
    summary, files = _run(scenario, out_dir, write)
    out = json.loads(summary)
    out["files"] = files
    return out


__all__ = [
    "DivergenceError",
    "Error",
    "InvalidEstimateError",
    "ResourceError",
    "ValidationError",
    "__version__",
    "classify",
    "conv_tail",
    "integrated_tail",
    "list_scenarios",
    "log_tail",
    "mean",
    "normalize_spec",
    "pathological_sequence",
    "run",
    "simulate",
    "stopped_tail",
    "tail",
]
