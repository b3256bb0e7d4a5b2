"""Acceptance checks against the published scenario figures.

One test per quantitative criterion; each prints a PASS/FAIL line with the
measured values next to the quoted targets. Three checks are expected to
fail against this solver's own converged results and are split into their
own tests so the rest of the suite stays green: the low elimination
threshold crossing time, strict monotonicity of the bang-arc length across
the budget sweep, and the mixed-variant peak-control bounds. Each
discrepancy is reproducible from the converged trajectories themselves;
see README.md.
"""

import numpy as np

from ebovax import Grid, Params, X0_DEFAULT, active_infected, r0_closed, rhs_vacc
from ebovax import integrate_forward, scenarios
from ebovax.model import S
from ebovax.ocp import _cost_arrays, _forward

P = Params()


def _report(criterion, ok, detail):
    print(f"[{criterion}] {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def _rel(value, target, tol):
    return abs(value - target) <= tol * abs(target)


# ------------------------------------------------------------ criteria 1-6

def test_criterion1_r0():
    r0 = r0_closed(P)
    ok = abs(r0 - 2.287) <= 1e-3
    assert _report("criterion 1: R0", ok, f"r0_closed={r0:.6f} target 2.287 +/- 0.001")


def test_criterion2_no_vaccination(preset_runs):
    _, s = preset_runs["no-vaccination"]
    dhb = s.final_d + s.final_h + s.final_b
    checks = [
        _rel(s.final_c, 86.5, 0.05),
        _rel(s.final_i, 61.7, 0.05),     # quoted active count matches I(90)
        _rel(dhb, 262.6, 0.10),
    ]
    ok = all(checks)
    assert _report(
        "criterion 2: no vaccination", ok,
        f"C(90)={s.final_c:.2f} (86.5 +/- 5%), I(90)={s.final_i:.2f} (61.7 +/- 5%), "
        f"D+H+B={dhb:.2f} (262.6 +/- 10%)")


def test_criterion3_unlimited(preset_runs):
    sol, s = preset_runs["unlimited"]
    active90 = float(active_infected(sol.states.values[-1], P))
    checks = [
        _rel(active90, 3.56, 0.10),
        abs(s.t_active_below_1 - 7.5) <= 1.0,
        _rel(s.final_c, 13468.0, 0.03),
        _rel(s.total_vaccines, 33786.0, 0.03),
        _rel(s.days_at_max_u, 1.62, 0.15),
    ]
    ok = all(checks)
    assert _report(
        "criterion 3: unlimited", ok,
        f"active(90)={active90:.3f} (3.56 +/- 10%), I<1 at {s.t_active_below_1:.2f} d "
        f"(7.5 +/- 1), C(90)={s.final_c:.1f} (13468 +/- 3%), "
        f"W(90)={s.total_vaccines:.1f} (33786 +/- 3%), "
        f"days_at_max={s.days_at_max_u:.3f} (1.62 +/- 15%)")


def test_criterion3_low_crossing(preset_runs):
    # Expected to fail: the converged infectious curve reaches 0.1 at
    # ~36.7 days, not within 32.4 +/- 2. No intermediate quantity of the
    # same run crosses 0.1 near 32.4 either.
    _, s = preset_runs["unlimited"]
    ok = abs(s.t_active_below_0p1 - 32.4) <= 2.0
    assert _report(
        "criterion 3: low crossing", ok,
        f"I<0.1 at {s.t_active_below_0p1:.2f} d, target 32.4 +/- 2")


def test_criterion4_endpoint(preset_runs):
    _, s10 = preset_runs["endpoint-10000"]
    _, s20 = preset_runs["endpoint-20000"]
    checks = [
        _rel(s10.cost, 322.74, 0.05),
        _rel(s10.final_i, 8.4, 0.15),
        _rel(s10.days_at_max_u, 0.72, 0.25),
        _rel(s20.cost, 72.35, 0.05),
        _rel(s20.final_i, 0.67, 0.25),
        _rel(s20.days_at_max_u, 2.2, 0.15),
    ]
    ok = all(checks)
    assert _report(
        "criterion 4: endpoint budgets", ok,
        f"theta=1e4: J={s10.cost:.2f} (322.74 +/- 5%), I={s10.final_i:.2f} (8.4 +/- 15%), "
        f"dm={s10.days_at_max_u:.3f} (0.72 +/- 25%); "
        f"theta=2e4: J={s20.cost:.2f} (72.35 +/- 5%), I={s20.final_i:.2f} (0.67 +/- 25%), "
        f"dm={s20.days_at_max_u:.3f} (2.2 +/- 15%)")


def test_criterion4_sweep_ordering(preset_runs):
    # Expected to fail: the bang-arc length rises through theta = 18000 but
    # drops at 20000, where the cheaper optimum no longer saturates u.
    # theta = 20000 exceeds the unconstrained optimum's own W(tf) shortfall
    # region, and its solution approaches the unconstrained one (days at
    # max ~1.6), so a strictly increasing tail is not attainable.
    dms = []
    for theta in scenarios.ENDPOINT_SWEEP_THETAS:
        _, s = preset_runs[f"endpoint-{int(theta)}"]
        dms.append(s.days_at_max_u)
    ok = all(a <= b + 1e-9 for a, b in zip(dms, dms[1:]))
    assert _report(
        "criterion 4: sweep ordering", ok,
        "days_at_max over theta sweep = " + ", ".join(f"{d:.3f}" for d in dms))


def test_criterion5_weight_sweep(preset_runs):
    _, s50 = preset_runs["endpoint-10000-w2-50"]
    _, s500 = preset_runs["endpoint-10000-w2-500"]
    checks = [
        _rel(s50.u0, 0.54, 0.10),
        _rel(s50.cost, 344.3, 0.05),
        abs(s50.t_control_zero - 3.7) <= 1.0,
        _rel(s500.u0, 0.16, 0.15),
        _rel(s500.cost, 399.62, 0.05),
        abs(s500.t_control_zero - 13.5) <= 2.0,
    ]
    ok = all(checks)
    assert _report(
        "criterion 5: weight sweep", ok,
        f"w2=50: u(0)={s50.u0:.4f} (0.54 +/- 10%), J={s50.cost:.2f} (344.3 +/- 5%), "
        f"u~0 after {s50.t_control_zero:.2f} d (3.7 +/- 1); "
        f"w2=500: u(0)={s500.u0:.4f} (0.16 +/- 15%), J={s500.cost:.2f} (399.62 +/- 5%), "
        f"u~0 after {s500.t_control_zero:.2f} d (13.5 +/- 2)")


def test_criterion6_mixed(preset_runs):
    _, s1000 = preset_runs["mixed-1000-10"]
    _, s1200 = preset_runs["mixed-1200-15"]
    _, s900 = preset_runs["mixed-900-16"]
    checks = [
        _rel(s1000.cost, 45.8879, 0.05),
        _rel(s1000.final_c, 7540.9, 0.03),
        _rel(s1200.cost, 55.079, 0.05),
        _rel(s1200.final_c, 12438.0, 0.03),
        _rel(s900.cost, 59.109, 0.05),
        _rel(s900.final_c, 10839.0, 0.03),
    ]
    ok = all(checks)
    assert _report(
        "criterion 6: mixed supply", ok,
        f"theta=1000: J={s1000.cost:.4f} (45.8879 +/- 5%), C={s1000.final_c:.1f} (7540.9 +/- 3%); "
        f"theta=1200: J={s1200.cost:.4f} (55.079 +/- 5%), C={s1200.final_c:.1f} (12438 +/- 3%); "
        f"theta=900: J={s900.cost:.4f} (59.109 +/- 5%), C={s900.final_c:.1f} (10839 +/- 3%)")


def test_criterion6_max_u_bounds(preset_runs):
    # Expected to fail: the converged controls peak at ~0.092 (theta=1000)
    # and ~0.196 (theta=1200), above the quoted ceilings 0.08 / 0.18. The
    # quoted C(tf) figures are reproduced by these same controls, while
    # forcing the control under the ceilings lowers C(tf) away from them,
    # so the ceilings contradict the other quoted figures of the same runs.
    _, s1000 = preset_runs["mixed-1000-10"]
    _, s1200 = preset_runs["mixed-1200-15"]
    _, s900 = preset_runs["mixed-900-16"]
    ok = s1000.max_u < 0.08 and s1200.max_u < 0.18 and s900.max_u < 0.18
    assert _report(
        "criterion 6: max-u bounds", ok,
        f"max u: theta=1000 {s1000.max_u:.4f} (< 0.08), theta=1200 {s1200.max_u:.4f} "
        f"(< 0.18), theta=900 {s900.max_u:.4f} (< 0.18)")


# ------------------------------------------------------- criterion 7 suite

def _controlled_runs(preset_runs):
    for name, (result, _) in preset_runs.items():
        if hasattr(result, "control"):
            yield name, result


def _all_state_arrays(preset_runs):
    for name, (result, _) in preset_runs.items():
        values = result.values if hasattr(result, "values") else result.states.values
        yield name, values


def test_criterion7_conservation(preset_runs):
    worst = 0.0
    for name, xs in _all_state_arrays(preset_runs):
        total = xs[:, :8].sum(axis=1)
        worst = max(worst, float(np.max(np.abs(total - P.n_total))))
    ok = worst <= 1e-6 * P.n_total
    assert _report("criterion 7: conservation", ok,
                   f"max |sum(S..C) - N| = {worst:.3e} (<= {1e-6 * P.n_total:.3e})")


def test_criterion7_nonnegativity(preset_runs):
    worst = 0.0
    for name, xs in _all_state_arrays(preset_runs):
        worst = min(worst, float(xs.min()))
    ok = worst >= -1e-9 * P.n_total
    assert _report("criterion 7: nonnegativity", ok,
                   f"min compartment value = {worst:.3e} (>= {-1e-9 * P.n_total:.3e})")


def test_criterion7_control_bounds(preset_runs):
    lo, hi = 0.0, 1.0
    for name, sol in _controlled_runs(preset_runs):
        lo = min(lo, float(sol.control.min()))
        hi = max(hi, float(sol.control.max()))
    ok = lo >= 0.0 and hi <= 1.0
    assert _report("criterion 7: control bounds", ok,
                   f"u range over all runs = [{lo:.3e}, {hi:.3e}]")


def test_criterion7_mixed_feasibility(preset_runs):
    worst = -np.inf
    for name, sol in _controlled_runs(preset_runs):
        if sol.psi is None:
            continue
        su = sol.states.values[:, S] * sol.control
        worst = max(worst, float(np.max(su - sol.problem.theta * (1.0 + 1e-9))))
    ok = worst <= 0.0
    assert _report("criterion 7: mixed feasibility", ok,
                   f"max S*u - theta*(1+1e-9) = {worst:.3e} (<= 0)")


def test_criterion7_complementary_slackness(preset_runs):
    worst = 0.0
    for name, sol in _controlled_runs(preset_runs):
        if sol.psi is None:
            continue
        theta = sol.problem.theta
        su = sol.states.values[:, S] * sol.control
        resid = np.abs(sol.psi * (theta - su)) / max(1.0, theta)
        worst = max(worst, float(resid.max()))
    ok = worst <= 1e-6
    assert _report("criterion 7: complementary slackness", ok,
                   f"max |psi*(theta - S*u)|/theta = {worst:.3e} (<= 1e-6)")


def test_criterion7_rk4_order():
    def f(t, y):
        return rhs_vacc(y, 0.3, P)

    ref = integrate_forward(f, X0_DEFAULT, Grid(0.0, 5.0, 2560)).values[-1]
    errs = []
    for n in (40, 80, 160):
        end = integrate_forward(f, X0_DEFAULT, Grid(0.0, 5.0, n)).values[-1]
        errs.append(np.max(np.abs(end - ref)))
    orders = [float(np.log2(errs[i] / errs[i + 1])) for i in range(2)]
    ok = all(3.7 <= o <= 4.3 for o in orders)
    assert _report("criterion 7: RK4 order", ok,
                   "observed orders = " + ", ".join(f"{o:.3f}" for o in orders))


def test_criterion7_stationarity(preset_runs):
    # no +/- 1e-4 single-node control perturbation of the converged
    # unconstrained solution may lower J by more than 1e-6
    sol, _ = preset_runs["unlimited"]
    prob = sol.problem
    u, J0 = sol.control, sol.cost
    rng = np.random.default_rng(2024)
    nodes = rng.choice(u.shape[0], size=20, replace=False)
    worst = 0.0
    for j in nodes:
        for sign in (1.0, -1.0):
            up = u.copy()
            up[j] = min(1.0, max(0.0, up[j] + sign * 1e-4))
            if up[j] == u[j]:
                continue
            xs = _forward(prob, up)
            dj = _cost_arrays(xs, up, prob.params.w1, prob.params.w2, prob.grid.h) - J0
            worst = min(worst, dj)
    ok = worst >= -1e-6
    assert _report("criterion 7: stationarity", ok,
                   f"largest J decrease over 20 seeded perturbations = {worst:.3e} (>= -1e-6)")


def test_criterion7_endpoint_residual(preset_runs):
    worst = 0.0
    lines = []
    for name, sol in _controlled_runs(preset_runs):
        if sol.k is None or sol.k == 0.0:
            continue
        theta = sol.problem.theta
        resid = abs(sol.total_vaccines - theta)
        allowed = max(1.0, 1e-4 * theta)
        worst = max(worst, resid / allowed)
        lines.append(f"{name}: {resid:.3f}/{allowed:.1f}")
    ok = worst <= 1.0
    assert _report("criterion 7: endpoint residual", ok,
                   f"|W(tf) - theta| vs eps_W -> worst ratio {worst:.3f} (<= 1)")
