"""Ebola transmission model with optimal vaccination control."""

from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    EbovaxError,
    GridMismatchError,
    IntegrationError,
)
from .grid import Grid, Trajectory
from .integrate import integrate_backward, integrate_forward, interpolate, rk4_step
from .model import (
    STATE_NAMES,
    X0_DEFAULT,
    active_infected,
    cumulative_confirmed,
    ngm_coefficients,
    ngm_spectral,
    r0_closed,
    r0_discrepancy,
    rhs_base,
    rhs_vacc,
)
from .ocp import (
    ENDPOINT,
    MIXED,
    UNCONSTRAINED,
    FbsmOptions,
    OcpProblem,
    OcpSolution,
    adjoint_rhs,
    control_candidate,
    cost,
    fbsm_solve,
    multiplier_psi,
    project_mixed,
    solve_endpoint,
    solve_mixed,
)
from .output import CompareReport, compare_observed, read_observed
from .params import Params
from .scenarios import (
    ENDPOINT_SWEEP_THETAS,
    PRESETS,
    ScenarioSummary,
    get_preset,
    preset_names,
    run_scenario,
    simulate_uncontrolled,
    summary_metrics,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "EbovaxError",
    "GridMismatchError",
    "IntegrationError",
    "Grid",
    "Trajectory",
    "integrate_backward",
    "integrate_forward",
    "interpolate",
    "rk4_step",
    "STATE_NAMES",
    "X0_DEFAULT",
    "active_infected",
    "cumulative_confirmed",
    "ngm_coefficients",
    "ngm_spectral",
    "r0_closed",
    "r0_discrepancy",
    "rhs_base",
    "rhs_vacc",
    "ENDPOINT",
    "MIXED",
    "UNCONSTRAINED",
    "FbsmOptions",
    "OcpProblem",
    "OcpSolution",
    "adjoint_rhs",
    "control_candidate",
    "cost",
    "fbsm_solve",
    "multiplier_psi",
    "project_mixed",
    "solve_endpoint",
    "solve_mixed",
    "CompareReport",
    "compare_observed",
    "read_observed",
    "Params",
    "ENDPOINT_SWEEP_THETAS",
    "PRESETS",
    "ScenarioSummary",
    "get_preset",
    "preset_names",
    "run_scenario",
    "simulate_uncontrolled",
    "summary_metrics",
    "__version__",
]
