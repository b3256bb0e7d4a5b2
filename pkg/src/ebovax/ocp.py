"""Optimal vaccination control via the forward-backward sweep method.

Three problem variants over the nine-compartment model:

    unconstrained  minimize J = integral of w1*I + w2*u^2, u in [0,1]
    endpoint       same J subject to W(tf) <= theta (total vaccine stock),
                   handled by shooting on the constant vaccine-counter
                   costate k: larger k penalizes vaccination harder and
                   lowers W(tf); k is found by bracketing + bisection
    mixed          same J subject to S(t)*u(t) <= theta at every instant
                   (per-day supply), handled by pointwise projection of the
                   control candidate with multiplier recovery

Convention: minimization form, costates lam1..lam8 with zero terminal
values; the control candidate is (lam1 - lam8 - shift)*S/(2*w2) clamped to
[0,1], where the shift is k (endpoint), 0 (unconstrained), or the supply
multiplier psi(t) (mixed).
"""

from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, GridMismatchError
from .grid import Grid, Trajectory
from .model import I, S, W, X0_DEFAULT
from .params import Params

UNCONSTRAINED = "unconstrained"
ENDPOINT = "endpoint"
MIXED = "mixed"
VARIANTS = (UNCONSTRAINED, ENDPOINT, MIXED)

# Step-factor floor for the merit safeguard; below it the step is taken as-is.
_STEP_FLOOR = 1e-6
# Activity tolerance for the mixed constraint: |S*u - theta| <= _ACTIVE_TOL*max(1, theta).
_ACTIVE_TOL = 1e-6
# Feasibility slack accepted after polishing: S*u <= theta*(1 + _FEAS_TOL).
_FEAS_TOL = 1e-9


@dataclass(frozen=True)
class OcpProblem:
    params: Params
    grid: Grid
    x0: np.ndarray = None
    variant: str = UNCONSTRAINED
    theta: float = None

    def __post_init__(self):
        self.params.validate()
        x0 = X0_DEFAULT if self.x0 is None else np.asarray(self.x0, dtype=np.float64)
        if x0.shape == (8,):
            x0 = np.append(x0, 0.0)
        if x0.shape != (9,) or not np.all(np.isfinite(x0)):
            raise DomainError(f"x0 must be 8 or 9 finite components, got {x0!r}")
        object.__setattr__(self, "x0", x0)
        if self.variant not in VARIANTS:
            raise DomainError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.variant == UNCONSTRAINED:
            if self.theta is not None:
                raise DomainError("unconstrained problems take no theta")
        else:
            if self.theta is None or not np.isfinite(self.theta) or self.theta < 0.0:
                raise DomainError(f"{self.variant} variant needs theta >= 0, got {self.theta!r}")
            object.__setattr__(self, "theta", float(self.theta))


@dataclass
class OcpSolution:
    problem: OcpProblem
    states: Trajectory          # (n+1, 9)
    adjoints: Trajectory        # (n+1, 8), zero terminal row
    control: np.ndarray         # (n+1,)
    cost: float
    iterations: int
    final_change: float
    converged: bool
    k: float = None             # endpoint variant only
    psi: np.ndarray = None      # mixed variant only

    @property
    def total_vaccines(self):
        return float(self.states.values[-1, W])


@dataclass(frozen=True)
class FbsmOptions:
    relax: float = 0.5
    tol: float = 1e-3
    max_sweeps: int = 500


def adjoint_rhs(x, lam, u, p):
    """Derivatives of the nine costates.

    lam[0..7] are the costates of S..C; lam[8] is the vaccine-counter
    costate (the shift), whose derivative is identically zero. Mirrors the
    backward sweep kernel arithmetic.
    """
    x = np.asarray(x, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (9,):
        raise DomainError(f"adjoint_rhs expects 9 costates, got shape {lam.shape}")
    s, i, r, d, ho = x[0], x[2], x[3], x[4], x[5]
    l1, l2, l3, l4, l5, l6, l7, l8 = lam[:8]
    sh = lam[8]

    cf = (p.beta_i * i + p.beta_h * ho + p.beta_d * d + p.beta_r * r) / p.n_total
    sn = s / p.n_total
    out = np.empty(9)
    out[0] = l1 * (cf + p.mu + u) - l2 * cf - (l8 + sh) * u
    out[1] = l2 * p.a4 - l3 * p.sigma
    out[2] = -p.w1 + (l1 - l2) * (p.beta_i * sn) + l3 * p.a5 - l4 * p.gamma1 - l5 * p.epsilon - l6 * p.tau
    out[3] = (l1 - l2) * (p.beta_r * sn) + l4 * p.a2 - l8 * p.gamma3
    out[4] = (l1 - l2) * (p.beta_d * sn) + l5 * p.a3 - l7 * p.delta1
    out[5] = (l1 - l2) * (p.beta_h * sn) - l4 * p.gamma2 + l6 * p.a1 - l7 * p.delta2
    out[6] = l7 * p.xi
    out[7] = l8 * p.mu
    out[8] = 0.0
    return out


def control_candidate(s, lam1, lam8, shift, w2):
    """Unprojected optimality-condition control, clamped to [0, 1]."""
    if w2 <= 0.0:
        raise DomainError(f"w2 must be positive, got {w2!r}")
    raw = (lam1 - lam8 - shift) * s / (2.0 * w2)
    return np.clip(raw, 0.0, 1.0)


def project_mixed(u_cand, s, theta):
    """Cap the control so s*u <= theta; vacuous when s <= 0."""
    if s > 0.0:
        return float(np.clip(min(u_cand, theta / s), 0.0, 1.0))
    return float(u_cand)


def multiplier_psi(s, lam1, lam8, u_active, w2, active=True):
    """Supply-constraint multiplier from stationarity in u.

    Valid where the constraint is active (s*u = theta): then
    psi = (lam1 - lam8) - 2*w2*u/s. Returns 0 where inactive.
    """
    if not active:
        return 0.0
    if s == 0.0:
        raise DomainError("multiplier_psi: active constraint requires s > 0")
    return (lam1 - lam8) - 2.0 * w2 * u_active / s


def cost(states, control, w1, w2):
    """Trapezoidal quadrature of w1*I(t) + w2*u(t)^2 over the grid."""
    if isinstance(control, Trajectory):
        if control.grid != states.grid:
            raise GridMismatchError("cost: control and states on different grids")
        u = control.values
    else:
        u = np.asarray(control, dtype=np.float64)
        if u.shape[0] != states.grid.n_steps + 1:
            raise GridMismatchError("cost: control length does not match grid")
    return _cost_arrays(states.values, u, w1, w2, states.grid.h)


def _cost_arrays(xs, u, w1, w2, h):
    f = w1 * xs[:, I] + w2 * u * u
    return float(h * (0.5 * (f[0] + f[-1]) + f[1:-1].sum()))


def _forward(problem, u):
    out = np.empty((problem.grid.n_steps + 1, 9))
    kernels.forward_sweep(problem.x0, u, problem.grid.h, problem.params.vector(), out)
    if not np.all(np.isfinite(out)):
        raise ConvergenceError("forward sweep produced non-finite states")
    return out


def _backward(problem, xs, u, shift):
    out = np.empty((problem.grid.n_steps + 1, 8))
    kernels.backward_sweep(xs, u, shift, problem.grid.h, problem.params.vector(), out)
    if not np.all(np.isfinite(out)):
        raise ConvergenceError("backward sweep produced non-finite costates")
    return out


def _candidate_array(xs, lam, shift, w2):
    return np.clip((lam[:, 0] - lam[:, 7] - shift) * xs[:, S] / (2.0 * w2), 0.0, 1.0)


def _rel_change(new, old):
    scale = max(float(np.max(np.abs(new))), 1e-8)
    return float(np.max(np.abs(new - old))) / scale


def _solution(problem, xs, lam, u, iterations, change, converged, k=None, psi=None):
    return OcpSolution(
        problem=problem,
        states=Trajectory(problem.grid, xs),
        adjoints=Trajectory(problem.grid, lam),
        control=u,
        cost=_cost_arrays(xs, u, problem.params.w1, problem.params.w2, problem.grid.h),
        iterations=iterations,
        final_change=change,
        converged=converged,
        k=k,
        psi=psi,
    )


def fbsm_solve(problem, shift=0.0, u0=None, options=None):
    """Forward-backward sweep for the unconstrained/endpoint variants.

    `shift` is the constant vaccine-counter costate (0 unless shooting on
    the endpoint constraint). The relaxed control update is safeguarded by
    a merit backtracking line search on J + shift*W(tf): the plain relaxed
    step is accepted whenever it does not increase the merit, otherwise the
    step factor is halved (large shifts make the plain iteration oscillate
    or collapse to u = 0). Mixed problems are dispatched to solve_mixed.
    """
    if problem.variant == MIXED:
        if shift != 0.0:
            raise DomainError("mixed problems take no constant shift")
        return solve_mixed(problem, options=options)
    opts = options or FbsmOptions()
    p = problem.params
    n = problem.grid.n_steps
    shift_arr = np.full(n + 1, float(shift))

    u = np.zeros(n + 1) if u0 is None else np.clip(np.asarray(u0, dtype=np.float64), 0.0, 1.0)
    if u.shape != (n + 1,):
        raise DomainError(f"u0 must have {n + 1} nodes, got shape {u.shape}")
    xs = _forward(problem, u)
    merit = _cost_arrays(xs, u, p.w1, p.w2, problem.grid.h) + shift * xs[-1, W]
    lam_prev = np.zeros((n + 1, 8))

    iterations = 0
    change = np.inf
    converged = False
    for iterations in range(1, opts.max_sweeps + 1):
        lam = _backward(problem, xs, u, shift_arr)
        raw = _candidate_array(xs, lam, shift_arr, p.w2)
        direction = raw - u
        step = opts.relax
        while True:
            u_new = u + step * direction
            xs_new = _forward(problem, u_new)
            merit_new = _cost_arrays(xs_new, u_new, p.w1, p.w2, problem.grid.h) + shift * xs_new[-1, W]
            if merit_new <= merit or step < _STEP_FLOOR:
                break
            step *= 0.5
        change = max(_rel_change(u_new, u), _rel_change(xs_new, xs), _rel_change(lam, lam_prev))
        u, xs, merit, lam_prev = u_new, xs_new, merit_new, lam
        if change <= opts.tol:
            converged = True
            break

    k_out = float(shift) if problem.variant == ENDPOINT else None
    if not converged:
        last = _solution(problem, xs, lam_prev, u, iterations, change, False, k=k_out)
        raise ConvergenceError(
            f"sweep did not converge in {opts.max_sweeps} iterations (last change {change:.3e})",
            solution=last,
            residual=change,
        )

    # Polish: one unrelaxed candidate update removes the relaxation lag.
    lam = _backward(problem, xs, u, shift_arr)
    u = _candidate_array(xs, lam, shift_arr, p.w2)
    xs = _forward(problem, u)
    lam = _backward(problem, xs, u, shift_arr)
    return _solution(problem, xs, lam, u, iterations, change, True, k=k_out)


def _shooting_eval(problem, shift, warm, inner):
    """One inner solve for the shooting loop.

    A sweep that hits the iteration cap mid-bracket still carries a usable
    iterate: W(tf) evaluated on it ranks the trial k correctly even when
    the control has not settled, so the stalled iterate is kept as a
    best-effort evaluation instead of aborting the whole search. Only the
    finally accepted k must converge.
    """
    try:
        return fbsm_solve(problem, shift=shift, u0=warm, options=inner)
    except ConvergenceError as exc:
        if exc.solution is None:
            raise
        return exc.solution


def solve_endpoint(problem, options=None):
    """Shooting on the constant costate k for W(tf) <= theta.

    Solves k = 0 first and returns it if the constraint is already slack;
    otherwise brackets [0, k_max] (doubling from 1) and bisects, warm-
    starting every inner solve from the previous control, until
    |W(tf) - theta| <= max(1, 1e-4*theta) at a converged iterate.
    """
    if problem.variant != ENDPOINT:
        raise DomainError("solve_endpoint needs an endpoint-variant problem")
    opts = options or FbsmOptions()
    theta = problem.theta

    sol = fbsm_solve(problem, shift=0.0, options=opts)
    if sol.total_vaccines <= theta:
        sol.k = 0.0
        return sol

    inner = replace(opts, tol=min(opts.tol, 1e-6))
    eps_w = max(1.0, 1e-4 * theta)
    warm = sol.control

    lo = 0.0
    hi = 1.0
    for _ in range(60):
        sol = _shooting_eval(problem, hi, warm, inner)
        warm = sol.control
        if sol.total_vaccines < theta:
            break
        lo = hi
        hi *= 2.0
    else:
        raise ConvergenceError(
            f"endpoint shooting: no k in [0, {hi}] brings W(tf) below theta = {theta}",
            solution=sol,
            residual=sol.total_vaccines - theta,
        )

    for _ in range(120):
        mid = 0.5 * (lo + hi)
        sol = _shooting_eval(problem, mid, warm, inner)
        warm = sol.control
        if abs(sol.total_vaccines - theta) <= eps_w:
            if not sol.converged:
                raise ConvergenceError(
                    f"endpoint shooting: accepted k = {mid} but the sweep "
                    f"stalled (last change {sol.final_change:.3e})",
                    solution=sol,
                    residual=sol.final_change,
                )
            return sol
        if sol.total_vaccines > theta:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"endpoint shooting: bisection stalled at k = {mid} (W residual "
        f"{sol.total_vaccines - theta:.3e}, tolerance {eps_w:.3e})",
        solution=sol,
        residual=sol.total_vaccines - theta,
    )


def _cap_supply(u_cand, s, theta):
    """Vectorized project_mixed: cap u so s*u <= theta where s > 0."""
    capped = np.array(u_cand, dtype=np.float64, copy=True)
    pos = s > 0.0
    capped[pos] = np.minimum(capped[pos], theta / s[pos])
    return np.clip(capped, 0.0, 1.0)


def _recover_psi(xs, lam, u, theta, w2):
    """Multiplier on the active set, zero elsewhere."""
    s = xs[:, S]
    active = (s > 0.0) & (np.abs(s * u - theta) <= _ACTIVE_TOL * max(1.0, theta))
    psi = np.zeros(u.shape[0])
    if np.any(active):
        psi[active] = (lam[active, 0] - lam[active, 7]) - 2.0 * w2 * u[active] / s[active]
    return psi


def solve_mixed(problem, options=None):
    """Sweep with pointwise supply projection and multiplier recovery.

    The candidate is capped to theta/S at every node; the recovered
    multiplier psi feeds the next backward pass (the S-costate equation
    carries a -psi*u term). After convergence the control is re-projected
    against the final states until S*u <= theta*(1+1e-9) everywhere.
    """
    if problem.variant != MIXED:
        raise DomainError("solve_mixed needs a mixed-variant problem")
    opts = options or FbsmOptions()
    p = problem.params
    theta = problem.theta
    n = problem.grid.n_steps

    u = np.zeros(n + 1)
    psi = np.zeros(n + 1)
    zeros = np.zeros(n + 1)
    xs = _forward(problem, u)
    lam_prev = np.zeros((n + 1, 8))

    iterations = 0
    change = np.inf
    converged = False
    for iterations in range(1, opts.max_sweeps + 1):
        lam = _backward(problem, xs, u, psi)
        raw = _candidate_array(xs, lam, zeros, p.w2)
        capped = _cap_supply(raw, xs[:, S], theta)
        u_new = u + opts.relax * (capped - u)
        xs_new = _forward(problem, u_new)
        psi = _recover_psi(xs_new, lam, u_new, theta, p.w2)
        change = max(_rel_change(u_new, u), _rel_change(xs_new, xs), _rel_change(lam, lam_prev))
        u, xs, lam_prev = u_new, xs_new, lam
        if change <= opts.tol:
            converged = True
            break

    if not converged:
        last = _solution(problem, xs, lam_prev, u, iterations, change, False, psi=psi)
        raise ConvergenceError(
            f"mixed sweep did not converge in {opts.max_sweeps} iterations "
            f"(last change {change:.3e})",
            solution=last,
            residual=change,
        )

    # Polish: unrelaxed projected update, then repair feasibility against
    # the reintegrated states.
    lam = _backward(problem, xs, u, psi)
    raw = _candidate_array(xs, lam, zeros, p.w2)
    u = _cap_supply(raw, xs[:, S], theta)
    xs = _forward(problem, u)
    for _ in range(10):
        s = xs[:, S]
        violated = (s > 0.0) & (s * u > theta * (1.0 + _FEAS_TOL))
        if not np.any(violated):
            break
        u = _cap_supply(u, s, theta)
        xs = _forward(problem, u)
    lam = _backward(problem, xs, u, psi)
    psi = _recover_psi(xs, lam, u, theta, p.w2)
    return _solution(problem, xs, lam, u, iterations, change, True, psi=psi)
