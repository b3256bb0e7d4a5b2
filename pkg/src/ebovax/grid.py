"""Uniform time grid and mesh-sampled trajectories."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

@dataclass(frozen=True)
class Grid:
    """Uniform mesh of n_steps intervals on [t0, tf], times in days."""

    t0: float
    tf: float
    n_steps: int

    def __post_init__(self):
        if not (np.isfinite(self.t0) and np.isfinite(self.tf)) or self.tf <= self.t0:
            raise DomainError(f"grid needs tf > t0, got [{self.t0!r}, {self.tf!r}]")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise DomainError(f"n_steps must be a positive integer, got {self.n_steps!r}")
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "tf", float(self.tf))
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def h(self):
        return (self.tf - self.t0) / self.n_steps

    @property
    def times(self):
        """Mesh points t_k = t0 + k*h."""
        return self.t0 + np.arange(self.n_steps + 1) * self.h


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Values sampled on a grid: shape (n_steps+1,) or (n_steps+1, m)."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim not in (1, 2) or values.shape[0] != self.grid.n_steps + 1:
            raise DomainError(
                f"trajectory needs {self.grid.n_steps + 1} rows, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("trajectory contains non-finite values")
        object.__setattr__(self, "values", values)

    def column(self, index):
        return self.values[:, index] if self.values.ndim == 2 else self.values

    def final(self):
        return self.values[-1]
