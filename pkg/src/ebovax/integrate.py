"""Fixed-step RK4 integration, forward and backward, plus mesh interpolation.

These are the generic (callback-driven) routines. The solver's hot loops
use the fused sweeps in ebovax.kernels, which reproduce the same
arithmetic; equivalence is covered by tests.
"""

import numpy as np

from .errors import DomainError, GridMismatchError, IntegrationError
from .grid import Grid, Trajectory


def _check_finite(k, t):
    if not np.all(np.isfinite(k)):
        raise IntegrationError(f"non-finite derivative at t = {t}", t=t)


def rk4_step(f, t, y, h):
    """One classic Runge-Kutta 4 step for dy/dt = f(t, y)."""
    k1 = np.asarray(f(t, y), dtype=np.float64)
    _check_finite(k1, t)
    k2 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k1), dtype=np.float64)
    _check_finite(k2, t)
    k3 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k2), dtype=np.float64)
    _check_finite(k3, t)
    k4 = np.asarray(f(t + h, y + h * k3), dtype=np.float64)
    _check_finite(k4, t)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_forward(f, y0, grid):
    """Integrate dy/dt = f(t, y) from y(t0) = y0 over the grid."""
    y0 = np.asarray(y0, dtype=np.float64)
    if not np.all(np.isfinite(y0)):
        raise DomainError("integrate_forward: non-finite initial state")
    n = grid.n_steps
    h = grid.h
    shape = (n + 1,) if y0.ndim == 0 else (n + 1,) + y0.shape
    values = np.empty(shape)
    values[0] = y0
    y = y0
    for j in range(n):
        y = rk4_step(f, grid.t0 + j * h, y, h)
        values[j + 1] = y
    return Trajectory(grid, values)


def _node_values(series, grid, name):
    """Per-node values from a Trajectory or array; None means zeros."""
    if series is None:
        return np.zeros(grid.n_steps + 1)
    if isinstance(series, Trajectory):
        if series.grid != grid:
            raise GridMismatchError(f"{name} lives on a different grid")
        return series.values
    series = np.asarray(series, dtype=np.float64)
    if series.shape[0] != grid.n_steps + 1:
        raise GridMismatchError(f"{name} has {series.shape[0]} rows, grid needs {grid.n_steps + 1}")
    return series


def integrate_backward(g, lam_tf, grid, stored, control=None):
    """Integrate dlam/dt = g(x(t), lam, u(t)) from lam(tf) = lam_tf down to t0.

    `stored` holds the state trajectory on the same grid; `control` the
    per-node control values (or None for zero control). Mid-step state and
    control values are the linear midpoints of the bracketing nodes.
    """
    xs = _node_values(stored, grid, "stored trajectory")
    us = _node_values(control, grid, "control")
    lam_tf = np.asarray(lam_tf, dtype=np.float64)
    if not np.all(np.isfinite(lam_tf)):
        raise DomainError("integrate_backward: non-finite terminal value")

    n = grid.n_steps
    h = grid.h
    hh = 0.5 * h
    h6 = h / 6.0
    shape = (n + 1,) if lam_tf.ndim == 0 else (n + 1,) + lam_tf.shape
    values = np.empty(shape)
    values[n] = lam_tf
    lam = lam_tf
    for j in range(n, 0, -1):
        xj = xs[j]
        xjm = xs[j - 1]
        xm = xjm + 0.5 * (xj - xjm)
        uj = us[j]
        ujm = us[j - 1]
        um = ujm + 0.5 * (uj - ujm)
        t = grid.t0 + j * h
        k1 = np.asarray(g(xj, lam, uj), dtype=np.float64)
        _check_finite(k1, t)
        k2 = np.asarray(g(xm, lam - hh * k1, um), dtype=np.float64)
        _check_finite(k2, t)
        k3 = np.asarray(g(xm, lam - hh * k2, um), dtype=np.float64)
        _check_finite(k3, t)
        k4 = np.asarray(g(xjm, lam - h * k3, ujm), dtype=np.float64)
        _check_finite(k4, t)
        lam = lam - h6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        values[j - 1] = lam
    return Trajectory(grid, values)


def interpolate(traj, t):
    """Value at time t by linear interpolation; exact at mesh points."""
    grid = traj.grid
    n = grid.n_steps
    h = grid.h
    t = float(t)
    t_last = grid.t0 + n * h
    if not (min(grid.t0, t_last) <= t <= max(grid.tf, t_last)):
        raise DomainError(f"t = {t!r} outside grid [{grid.t0!r}, {grid.tf!r}]")
    j = int(np.floor((t - grid.t0) / h))
    j = min(max(j, 0), n - 1)
    if t == grid.t0 + j * h:
        return np.copy(traj.values[j])
    if t == grid.t0 + (j + 1) * h:
        return np.copy(traj.values[j + 1])
    frac = (t - (grid.t0 + j * h)) / h
    return traj.values[j] + frac * (traj.values[j + 1] - traj.values[j])
