"""Model parameters and their validation.

Rates are per day; n_total is the fixed population size N; w1, w2 are the
cost weights of the control objective. Defaults are the baseline parameter
set used by every scenario preset.
"""

from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import DomainError

# Rate fields that must be nonnegative. w2 is excluded: it must be
# strictly positive (it divides the control law).
_RATE_FIELDS = (
    "sigma", "mu", "xi",
    "beta_i", "beta_d", "beta_h", "beta_r",
    "gamma1", "gamma2", "gamma3",
    "epsilon", "tau", "delta1", "delta2",
)

# Fixed layout of Params.vector(), shared with the sweep kernels.
VECTOR_FIELDS = (
    "mu", "sigma", "gamma1", "gamma2", "gamma3", "epsilon", "tau",
    "delta1", "delta2", "xi", "beta_i", "beta_d", "beta_h", "beta_r",
    "n_total", "w1", "w2",
)


@dataclass(frozen=True)
class Params:
    sigma: float = 1.0 / 11.4      # exposed -> infectious
    mu: float = 14.0 / 1000.0      # birth/death rate
    xi: float = 14.0 / 1000.0      # incineration rate
    beta_i: float = 0.14           # contact rate, infectious
    beta_d: float = 0.40           # contact rate, dead (pre-burial)
    beta_h: float = 0.29           # contact rate, hospitalized
    beta_r: float = 0.185          # contact rate, recovering
    gamma1: float = 1.0 / 10.0     # infectious -> recovering
    gamma2: float = 1.0 / 5.0      # hospitalized -> recovering
    gamma3: float = 1.0 / 30.0     # recovering -> fully recovered
    epsilon: float = 1.0 / 9.6     # infectious -> dead
    tau: float = 1.0 / 5.0         # infectious -> hospitalized
    delta1: float = 1.0 / 2.0      # dead -> buried
    delta2: float = 1.0 / 4.6      # hospitalized -> buried
    n_total: float = 18015.0       # population size N
    w1: float = 1.0                # weight on infectious count
    w2: float = 1.0                # weight on control effort u^2

    # Aggregate outflow rates of the five infected-side compartments.
    @property
    def a1(self):
        return self.gamma2 + self.delta2 + self.mu   # hospitalized

    @property
    def a2(self):
        return self.gamma3 + self.mu                 # recovering

    @property
    def a3(self):
        return self.delta1 + self.xi                 # dead

    @property
    def a4(self):
        return self.sigma + self.mu                  # exposed

    @property
    def a5(self):
        return self.gamma1 + self.epsilon + self.tau + self.mu  # infectious

    def validate(self):
        """Check invariants; raises DomainError naming the offending field."""
        for name in _RATE_FIELDS:
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0.0:
                raise DomainError(f"parameter '{name}' must be a finite nonnegative rate, got {value!r}")
        if not np.isfinite(self.n_total) or self.n_total <= 0.0:
            raise DomainError(f"parameter 'n_total' must be positive, got {self.n_total!r}")
        if not np.isfinite(self.w1) or self.w1 < 0.0:
            raise DomainError(f"parameter 'w1' must be nonnegative, got {self.w1!r}")
        if not np.isfinite(self.w2) or self.w2 <= 0.0:
            raise DomainError(f"parameter 'w2' must be positive, got {self.w2!r}")
        return self

    def vector(self):
        """Parameters packed as a float64 array in VECTOR_FIELDS order."""
        return np.array([getattr(self, name) for name in VECTOR_FIELDS], dtype=np.float64)

    def with_updates(self, **updates):
        """Copy with fields replaced, then validated."""
        return replace(self, **updates).validate()


PARAM_FIELD_NAMES = tuple(f.name for f in fields(Params))
