"""Bit-stable CSV/summary writers and the observed-data comparison.

All floats are serialized with repr (shortest round-trip form), so files
re-read to bitwise-equal values and reruns are byte-identical.
"""

from dataclasses import dataclass

import numpy as np

from . import model
from .errors import ConfigError
from .integrate import interpolate

TRAJECTORY_STATE_COLUMNS = ("t", "S", "E", "I", "R", "D", "H", "B", "C", "W", "u")


def fmt(value):
    """Round-trip-exact text for one cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_rows(path, header, columns):
    rows = np.column_stack(columns)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(float(cell)) for cell in row) + "\n")


def write_states_csv(path, grid, states, control):
    """Trajectory CSV for a plain (uncontrolled or fixed-control) run."""
    _write_rows(path, TRAJECTORY_STATE_COLUMNS, [grid.times, *states.T, control])


def write_solution_csv(path, solution):
    """Trajectory CSV for a solved control problem.

    Unconstrained/endpoint solutions carry lambda1..lambda9 (lambda9 is the
    constant endpoint costate, 0 when unconstrained); mixed solutions carry
    lambda1..lambda8 and psi instead.
    """
    grid = solution.problem.grid
    states = solution.states.values
    lam = solution.adjoints.values
    header = list(TRAJECTORY_STATE_COLUMNS)
    columns = [grid.times, *states.T, solution.control]
    header += [f"lambda{q}" for q in range(1, 9)]
    columns += list(lam.T)
    if solution.psi is not None:
        header.append("psi")
        columns.append(solution.psi)
    else:
        header.append("lambda9")
        columns.append(np.full(grid.n_steps + 1, solution.k if solution.k is not None else 0.0))
    _write_rows(path, header, columns)


def summary_entries(summary, params, iterations, converged, theta=None, k=None, psi=None):
    """Ordered (key, value) pairs for the summary file."""
    entries = [
        ("cost", summary.cost),
        ("total_vaccines", summary.total_vaccines),
        ("days_at_max_u", summary.days_at_max_u),
        ("final_S", summary.final_s),
        ("final_E", summary.final_e),
        ("final_I", summary.final_i),
        ("final_R", summary.final_r),
        ("final_D", summary.final_d),
        ("final_H", summary.final_h),
        ("final_B", summary.final_b),
        ("final_C", summary.final_c),
        ("t_active_below_1", summary.t_active_below_1),
        ("t_active_below_0p1", summary.t_active_below_0p1),
        ("r0_closed", model.r0_closed(params)),
        ("r0_spectral", model.ngm_spectral(params)),
        ("iterations", iterations),
        ("converged", converged),
        ("max_u", summary.max_u),
        ("u0", summary.u0),
        ("peak_su", summary.peak_su),
        ("t_control_zero", summary.t_control_zero),
    ]
    if theta is not None:
        entries.append(("theta", theta))
    if k is not None:
        entries.append(("k", k))
    if psi is not None:
        entries.append(("psi_min", float(np.min(psi))))
        entries.append(("psi_max", float(np.max(psi))))
    return entries


def write_summary(path, entries):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for key, value in entries:
            fh.write(f"{key},{fmt(value)}\n")


def write_sweep_csv(path, label, rows):
    """Comparison table for a sweep: one row per swept value."""
    header = (label, "cost", "days_at_max_u", "final_I", "total_vaccines")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(cell) for cell in row) + "\n")


def read_observed(path):
    """Observed-data CSV: rows of (day, cumulative_cases), optional header."""
    days = []
    cases = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = [part.strip() for part in line.split(",")]
            if len(parts) < 2:
                raise ConfigError(f"observed data line {lineno}: need day,cases, got {line!r}")
            try:
                day = float(parts[0])
                value = float(parts[1])
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise ConfigError(
                    f"observed data line {lineno}: non-numeric entry in {line!r}"
                ) from None
            days.append(day)
            cases.append(value)
    if not days:
        raise ConfigError("observed data file contains no usable rows")
    return np.array(days), np.array(cases)


@dataclass
class CompareReport:
    days: np.ndarray
    observed: np.ndarray
    computed: np.ndarray
    residuals: np.ndarray
    l2: float
    mae: float


def compare_observed(states_trajectory, params, days, cases):
    """Residuals of cumulative confirmed cases against observed counts.

    The model trajectory is interpolated at the observed days; days outside
    the grid raise a domain error.
    """
    computed = np.array(
        [model.cumulative_confirmed(interpolate(states_trajectory, day), params) for day in days]
    )
    residuals = computed - np.asarray(cases, dtype=np.float64)
    l2 = float(np.sqrt(np.sum(residuals**2)))
    mae = float(np.mean(np.abs(residuals)))
    return CompareReport(np.asarray(days, dtype=np.float64), np.asarray(cases, dtype=np.float64),
                         computed, residuals, l2, mae)
