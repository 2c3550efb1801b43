"""Adaptive reference-plane search for multiobjective optimisation.

The package bundles the AREA algorithm, a MOEA/D baseline, benchmark
problems with reference fronts, quality indicators and an experiment driver.
"""

from .area import AreaConfig, RunResult, run_area
from .core import ConfigurationError, UsageError
from .metrics import hv, igd, nadir_plus, spacing
from .moead_baseline import MoeadConfig, run_moead
from .problems import make_problem, pf_sample
from .variation import OperatorParams

__version__ = "0.1.0"

__all__ = [
    "AreaConfig",
    "ConfigurationError",
    "MoeadConfig",
    "OperatorParams",
    "RunResult",
    "UsageError",
    "hv",
    "igd",
    "make_problem",
    "nadir_plus",
    "pf_sample",
    "run_area",
    "run_moead",
    "spacing",
]
