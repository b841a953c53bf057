"""Nonlocal traffic-flow conservation laws: Lax-Friedrichs simulation and blow-up thresholds."""

__version__ = "0.1.0"

from .analysis import (ConvergenceRow, RefinementStudy, RiemannState, ShockClass,
                       exact_lwr_solution, lwr_riemann_exact, riccati_blowup_time,
                       shock_refinement_study)
from .config import ConfigError, config_to_dict, load_config, parse_config
from .diagnostics import Side, front_position, l1_error, max_gradient, total_mass
from .errors import (AnalysisError, ConfigurationError, NlflowError, ParameterError,
                     SimulationDiverged, UsageError)
from .flux import FluxModel, Variant, eval_flux, local_wave_speed
from .grid import Boundary, Field, GridSpec, make_grid, sample_at
from .kernel import DiscreteKernel, KernelShape, KernelSpec, convolve, discretize
from .scenario import (Box, Constant, Gaussian, QuarticBump, ScenarioKind, ScenarioSpec,
                       build_initial, closed_form_derivative)
from .solver import SimConfig, SimResult, Snapshot, choose_dt, lf_step, run
from .threshold import (ThresholdKind, ThresholdReport, Verdict, assess, derivative_extremes,
                        threshold_const_a, threshold_const_ab, threshold_lin_ab)

__all__ = [
    "__version__", "AnalysisError", "assess", "Boundary", "Box", "build_initial", "choose_dt",
    "closed_form_derivative", "config_to_dict", "ConfigError", "ConfigurationError", "Constant",
    "ConvergenceRow", "convolve", "derivative_extremes", "DiscreteKernel", "discretize",
    "eval_flux", "exact_lwr_solution", "Field", "FluxModel", "front_position", "Gaussian",
    "GridSpec", "KernelShape", "KernelSpec", "l1_error", "lf_step", "load_config",
    "local_wave_speed", "lwr_riemann_exact", "make_grid", "max_gradient", "NlflowError",
    "ParameterError", "parse_config", "QuarticBump", "RefinementStudy", "riccati_blowup_time",
    "RiemannState", "run", "sample_at", "ScenarioKind", "ScenarioSpec",
    "shock_refinement_study", "ShockClass", "Side", "SimConfig", "SimResult",
    "SimulationDiverged", "Snapshot", "threshold_const_a", "threshold_const_ab",
    "threshold_lin_ab", "ThresholdKind", "ThresholdReport", "total_mass", "UsageError",
    "Variant", "Verdict",
]
