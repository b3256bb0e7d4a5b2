"""Compartmental Ebola transmission model.

State vector order (all file output and trajectories use it):

    S  susceptible
    E  exposed (infected, not yet infectious)
    I  infectious
    R  recovering (no longer symptomatic, still infectious)
    D  dead, awaiting burial (still infectious)
    H  hospitalized (still infectious)
    B  buried
    C  completely recovered / vaccinated
    W  cumulative vaccines administered (vaccination model only)

Transmission mixes four infectious classes (I, H, D, R) with separate
contact rates. Vaccination at rate u(t) in [0, 1] moves susceptibles
directly to C and is counted in W.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import Params

S, E, I, R, D, H, B, C, W = range(9)

STATE_NAMES = ("S", "E", "I", "R", "D", "H", "B", "C", "W")

#: Default initial state: 18000 susceptible, 15 infectious.
X0_DEFAULT = np.array([18000.0, 0.0, 15.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])


def rhs_base(x, p):
    """Time derivatives of the eight-compartment model without vaccination."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (8,):
        raise DomainError(f"rhs_base expects 8 components, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("rhs_base: non-finite state")
    return _derivatives(x, 0.0, p)[:8]


def rhs_vacc(x, u, p):
    """Time derivatives of the nine-compartment model with vaccination rate u."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (9,):
        raise DomainError(f"rhs_vacc expects 9 components, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("rhs_vacc: non-finite state")
    u = float(u)
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"control u must lie in [0, 1], got {u!r}")
    return _derivatives(x, u, p)


def _derivatives(x, u, p):
    # Expression order matches the sweep kernels exactly; keep in sync.
    s, e, i, r, d, h = x[S], x[E], x[I], x[R], x[D], x[H]
    b, c = x[B], x[C]
    n = p.n_total

    mass = p.beta_i * i + p.beta_h * h + p.beta_d * d + p.beta_r * r
    newinf = mass * s / n
    su = s * u

    out = np.empty(9)
    out[S] = p.mu * n - newinf - p.mu * s - su
    out[E] = newinf - p.a4 * e
    out[I] = p.sigma * e - p.a5 * i
    out[R] = p.gamma1 * i + p.gamma2 * h - p.a2 * r
    out[D] = p.epsilon * i - p.a3 * d
    out[H] = p.tau * i - p.a1 * h
    out[B] = p.delta1 * d + p.delta2 * h - p.xi * b
    out[C] = p.gamma3 * r - p.mu * c + su
    out[W] = su
    return out


def r0_closed(p):
    """Basic reproduction number, closed form."""
    a1, a2, a3, a4, a5 = p.a1, p.a2, p.a3, p.a4, p.a5
    den = a1 * a2 * a3 * a4 * a5
    if den <= 0.0:
        raise DomainError("r0_closed: outflow rates must be positive")
    mu = p.mu
    core = p.beta_i * (p.gamma3 * a1 + mu * (p.gamma2 + p.delta2) + mu**2)
    core += p.beta_r * (p.gamma1 * a1 + p.gamma2 * p.tau)
    core += p.beta_h * p.tau * a2
    bracket = a3 * core + p.beta_d * p.epsilon * (p.gamma3 * a1 + mu * (p.gamma2 + p.delta2) + mu**2)
    return p.sigma / den * bracket


@dataclass(frozen=True)
class NgmCoefficients:
    """First row of the next-generation matrix and the outflow aggregates.

    The matrix has a single nonzero row, so its spectral radius is |a11|.
    a11 as written disagrees with the closed-form reproduction number for
    the default parameter set (see `discrepancy`); r0_closed is canonical.
    """

    a1: float
    a2: float
    a3: float
    a4: float
    a5: float
    a11: float
    a12: float
    a13: float
    a14: float
    a15: float

    @property
    def spectral_radius(self):
        return abs(self.a11)


def ngm_coefficients(p):
    """Evaluate the next-generation-matrix first-row coefficients."""
    a1, a2, a3, a4, a5 = p.a1, p.a2, p.a3, p.a4, p.a5
    den = a1 * a2 * a3 * a4 * a5
    if den <= 0.0:
        raise DomainError("ngm_coefficients: outflow rates must be positive")
    a11 = (
        a3 * p.beta_i * p.sigma * a1 * a4
        + a3 * p.beta_r * p.sigma * (a4 * p.gamma1 + p.tau * p.gamma2)
        + p.beta_d * p.epsilon * p.sigma * a1 * a4
        + a3 * p.beta_h * p.tau * p.sigma * a1
    ) / den
    a12 = (
        p.beta_r / a1
        + p.beta_r * (a4 * p.gamma1 + p.tau * p.gamma2) / (a1 * a2 * a3)
        + p.beta_d * p.epsilon / (a2 * a3)
        + p.beta_h * p.tau / (a2 * a4)
    )
    a13 = p.beta_r / a1
    a14 = p.beta_d / a3
    a15 = p.beta_r * p.gamma2 / (a1 * a4) + p.beta_h / a4
    return NgmCoefficients(a1, a2, a3, a4, a5, a11, a12, a13, a14, a15)


def ngm_spectral(p):
    """Spectral radius of F V^-1 built from the transmission/transition split.

    Independent verification path for r0_closed: F holds the new-infection
    terms into E from contact with I, R, D, H; V holds the linearized
    outflows among the infected compartments (E, I, R, D, H) at the
    disease-free equilibrium. Agrees with the closed form to rounding.
    """
    a1, a2, a3, a4, a5 = p.a1, p.a2, p.a3, p.a4, p.a5
    f = np.zeros((5, 5))
    f[0] = (0.0, p.beta_i, p.beta_r, p.beta_d, p.beta_h)
    v = np.array([
        [a4, 0.0, 0.0, 0.0, 0.0],
        [-p.sigma, a5, 0.0, 0.0, 0.0],
        [0.0, -p.gamma1, a2, 0.0, -p.gamma2],
        [0.0, -p.epsilon, 0.0, a3, 0.0],
        [0.0, -p.tau, 0.0, 0.0, a1],
    ])
    if not np.isfinite(np.linalg.cond(v)) or np.linalg.det(v) == 0.0:
        raise DomainError("ngm_spectral: transition matrix is singular")
    k = f @ np.linalg.inv(v)
    return float(np.max(np.abs(np.linalg.eigvals(k))))


def r0_discrepancy(p):
    """Relative disagreement of the tabulated |a11| from r0_closed.

    The first-row coefficient a11 evaluates to nearly twice the closed
    form for the default rates; both r0_closed and ngm_spectral agree with
    each other, so a value well above rounding error flags a11 itself.
    """
    closed = r0_closed(p)
    printed = ngm_coefficients(p).spectral_radius
    if closed == 0.0:
        return abs(printed)
    return abs(printed - closed) / abs(closed)


def cumulative_confirmed(x, p):
    """Cumulative confirmed cases: I+R+D+H+B+C - mu*(N-S-E).

    Works on a single state or on an array of states (last axis = state).
    """
    x = np.asarray(x, dtype=np.float64)
    infected = x[..., I] + x[..., R] + x[..., D] + x[..., H] + x[..., B] + x[..., C]
    return infected - p.mu * (p.n_total - x[..., S] - x[..., E])


def active_infected(x, p):
    """Currently active infections: I+R+D+H+B - mu*(N-S-E-C)."""
    x = np.asarray(x, dtype=np.float64)
    active = x[..., I] + x[..., R] + x[..., D] + x[..., H] + x[..., B]
    return active - p.mu * (p.n_total - x[..., S] - x[..., E] - x[..., C])
