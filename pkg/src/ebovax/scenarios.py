"""Named experiment presets and summary metrics.

Preset names are stable CLI identifiers. All presets share the default
initial state (18000 susceptible, 15 infectious) and mesh h = 0.05 day.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels, model, ocp
from .errors import ConvergenceError, DomainError
from .grid import Grid, Trajectory
from .params import Params

SIMULATE = "simulate"

DEFAULT_STEP = 0.05


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    kind: str                 # simulate | unconstrained | endpoint | mixed
    tf: float = 90.0
    theta: float = None
    w1: float = 1.0
    w2: float = 1.0

    @property
    def n_steps(self):
        return int(round(self.tf / DEFAULT_STEP))

    def grid(self, n_steps=None):
        return Grid(0.0, self.tf, self.n_steps if n_steps is None else n_steps)

    def params(self):
        return Params(w1=self.w1, w2=self.w2)

    def problem(self, params=None, n_steps=None):
        if self.kind == SIMULATE:
            return None
        return ocp.OcpProblem(
            params=self.params() if params is None else params,
            grid=self.grid(n_steps),
            variant=self.kind,
            theta=self.theta,
        )


def _build_presets():
    presets = [
        ScenarioPreset("no-vaccination", SIMULATE),
        ScenarioPreset("unlimited", ocp.UNCONSTRAINED),
    ]
    for theta in (10000, 11000, 13000, 15000, 16000, 18000, 20000):
        presets.append(ScenarioPreset(f"endpoint-{theta}", ocp.ENDPOINT, theta=float(theta)))
    for theta in (10000, 20000):
        for w2 in (50, 500):
            presets.append(
                ScenarioPreset(f"endpoint-{theta}-w2-{w2}", ocp.ENDPOINT, theta=float(theta), w2=float(w2))
            )
    presets.append(ScenarioPreset("mixed-1000-10", ocp.MIXED, tf=10.0, theta=1000.0))
    presets.append(ScenarioPreset("mixed-1200-15", ocp.MIXED, tf=15.0, theta=1200.0))
    presets.append(ScenarioPreset("mixed-900-16", ocp.MIXED, tf=16.0, theta=900.0))
    return {preset.name: preset for preset in presets}


PRESETS = _build_presets()

#: Stock sizes of the endpoint sweep, in sweep order.
ENDPOINT_SWEEP_THETAS = (10000.0, 11000.0, 13000.0, 15000.0, 16000.0, 18000.0, 20000.0)


def preset_names():
    return tuple(PRESETS)


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise DomainError(
            f"unknown scenario {name!r}; valid names: {', '.join(PRESETS)}"
        ) from None


@dataclass
class ScenarioSummary:
    final_s: float
    final_e: float
    final_i: float
    final_r: float
    final_d: float
    final_h: float
    final_b: float
    final_c: float
    cost: float
    total_vaccines: float
    days_at_max_u: float
    t_active_below_1: float
    t_active_below_0p1: float
    max_u: float
    u0: float
    peak_su: float
    t_control_zero: float


def days_at_max(grid, u, threshold=1.0 - 1e-6):
    """Measure of {t: u(t) >= threshold} for the piecewise-linear control."""
    u = np.asarray(u, dtype=np.float64)
    h = grid.h
    total = 0.0
    for j in range(grid.n_steps):
        a, b = u[j], u[j + 1]
        above_a = a >= threshold
        above_b = b >= threshold
        if above_a and above_b:
            total += h
        elif above_a:
            total += h * (a - threshold) / (a - b)
        elif above_b:
            total += h * (b - threshold) / (b - a)
    return total


def first_crossing_below(grid, series, level):
    """First time the piecewise-linear series drops below level; nan if never."""
    series = np.asarray(series, dtype=np.float64)
    if series[0] < level:
        return grid.t0
    h = grid.h
    for j in range(grid.n_steps):
        a, b = series[j], series[j + 1]
        if a >= level and b < level:
            return grid.t0 + j * h + h * (a - level) / (a - b)
    return float("nan")


def time_control_zero(grid, u, tol=1e-6):
    """First time after which u stays below tol; nan if it never settles."""
    u = np.asarray(u, dtype=np.float64)
    above = np.flatnonzero(u >= tol)
    if above.size == 0:
        return grid.t0
    last = int(above[-1])
    if last == grid.n_steps:
        return float("nan")
    h = grid.h
    return grid.t0 + last * h + h * (u[last] - tol) / (u[last] - u[last + 1])


def summarize_states(grid, xs, u, cost_value, params):
    """ScenarioSummary from raw mesh arrays.

    The threshold-crossing times track the infectious compartment I(t),
    the count the elimination thresholds are stated against.
    """
    finals = xs[-1]
    active = xs[:, model.I]
    su = xs[:, model.S] * u
    return ScenarioSummary(
        final_s=float(finals[model.S]),
        final_e=float(finals[model.E]),
        final_i=float(finals[model.I]),
        final_r=float(finals[model.R]),
        final_d=float(finals[model.D]),
        final_h=float(finals[model.H]),
        final_b=float(finals[model.B]),
        final_c=float(finals[model.C]),
        cost=float(cost_value),
        total_vaccines=float(finals[model.W]),
        days_at_max_u=float(days_at_max(grid, u)),
        t_active_below_1=float(first_crossing_below(grid, active, 1.0)),
        t_active_below_0p1=float(first_crossing_below(grid, active, 0.1)),
        max_u=float(np.max(u)),
        u0=float(u[0]),
        peak_su=float(np.max(su)),
        t_control_zero=float(time_control_zero(grid, u)),
    )


def summary_metrics(solution):
    """ScenarioSummary of a solved control problem."""
    return summarize_states(
        solution.problem.grid,
        solution.states.values,
        solution.control,
        solution.cost,
        solution.problem.params,
    )


def simulate_uncontrolled(grid, params, x0=None):
    """Integrate the model with u = 0 over the grid."""
    x0 = model.X0_DEFAULT if x0 is None else np.asarray(x0, dtype=np.float64)
    if x0.shape == (8,):
        x0 = np.append(x0, 0.0)
    u = np.zeros(grid.n_steps + 1)
    out = np.empty((grid.n_steps + 1, 9))
    kernels.forward_sweep(x0, u, grid.h, params.vector(), out)
    return Trajectory(grid, out)


def run_scenario(preset, params=None, options=None, n_steps=None):
    """Run one preset; returns (OcpSolution or Trajectory, ScenarioSummary)."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    p = preset.params() if params is None else params

    if preset.kind == SIMULATE:
        grid = preset.grid(n_steps)
        traj = simulate_uncontrolled(grid, p)
        u = np.zeros(grid.n_steps + 1)
        cost_value = ocp._cost_arrays(traj.values, u, p.w1, p.w2, grid.h)
        return traj, summarize_states(grid, traj.values, u, cost_value, p)

    problem = preset.problem(params=p, n_steps=n_steps)
    try:
        if preset.kind == ocp.ENDPOINT:
            solution = ocp.solve_endpoint(problem, options=options)
        elif preset.kind == ocp.MIXED:
            solution = ocp.solve_mixed(problem, options=options)
        else:
            solution = ocp.fbsm_solve(problem, options=options)
    except ConvergenceError as exc:
        raise ConvergenceError(
            f"scenario '{preset.name}': {exc}",
            solution=exc.solution,
            residual=exc.residual,
        ) from exc
    return solution, summary_metrics(solution)
