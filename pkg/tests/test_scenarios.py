import numpy as np
import pytest

from ebovax import FbsmOptions, Grid, Params
from ebovax import scenarios
from ebovax.errors import ConvergenceError, DomainError
from ebovax.model import B, D, H, W
from ebovax.scenarios import (
    days_at_max,
    first_crossing_below,
    get_preset,
    preset_names,
    run_scenario,
    simulate_uncontrolled,
    time_control_zero,
)


def test_preset_catalogue():
    names = preset_names()
    assert len(names) == 16
    assert "no-vaccination" in names
    assert "unlimited" in names
    for theta in (10000, 11000, 13000, 15000, 16000, 18000, 20000):
        assert f"endpoint-{theta}" in names
    for name in ("endpoint-10000-w2-50", "endpoint-10000-w2-500",
                 "endpoint-20000-w2-50", "endpoint-20000-w2-500",
                 "mixed-1000-10", "mixed-1200-15", "mixed-900-16"):
        assert name in names


def test_get_preset_rejects_unknown():
    with pytest.raises(DomainError, match="unlimited"):
        get_preset("nope")


def test_preset_grid_resolution():
    assert get_preset("unlimited").n_steps == 1800
    assert get_preset("mixed-1000-10").n_steps == 200
    assert get_preset("mixed-1200-15").grid().h == pytest.approx(0.05)
    assert get_preset("endpoint-10000-w2-50").params().w2 == 50.0
    assert get_preset("unlimited").params().w1 == 1.0


def test_days_at_max_synthetic():
    g = Grid(0.0, 1.0, 10)
    u = np.zeros(11)
    u[:3] = 1.0
    # full plateau on [0, 0.2] plus the sliver up to the 1 - 1e-6 crossing
    assert days_at_max(g, u) == pytest.approx(0.2, abs=1e-6)
    assert days_at_max(g, np.ones(11)) == pytest.approx(1.0, rel=1e-12)
    assert days_at_max(g, np.zeros(11)) == 0.0


def test_first_crossing_below_synthetic():
    g = Grid(0.0, 0.2, 2)
    assert first_crossing_below(g, np.array([2.0, 1.5, 0.5]), 1.0) == pytest.approx(0.15)
    assert first_crossing_below(g, np.array([0.5, 0.4, 0.3]), 1.0) == 0.0
    assert np.isnan(first_crossing_below(g, np.array([2.0, 2.0, 2.0]), 1.0))


def test_time_control_zero_synthetic():
    g = Grid(0.0, 0.4, 4)
    u = np.array([0.5, 0.2, 0.0, 0.0, 0.0])
    assert time_control_zero(g, u) == pytest.approx(0.2, abs=1e-5)
    assert time_control_zero(g, np.zeros(5)) == 0.0
    assert np.isnan(time_control_zero(g, np.full(5, 0.3)))


def test_simulate_uncontrolled_basics():
    g = Grid(0.0, 30.0, 600)
    traj = simulate_uncontrolled(g, Params())
    assert traj.values.shape == (601, 9)
    assert traj.values[0, 0] == 18000.0
    assert np.all(np.isfinite(traj.values))
    np.testing.assert_array_equal(traj.values[:, W], 0.0)


def test_run_scenario_accepts_preset_object_and_name(preset_runs):
    from dataclasses import astuple

    _, summary_by_name = preset_runs["no-vaccination"]
    _, summary_by_obj = run_scenario(get_preset("no-vaccination"))
    for a, b in zip(astuple(summary_by_obj), astuple(summary_by_name)):
        assert a == b or (np.isnan(a) and np.isnan(b))


def test_reruns_are_bitwise_identical(preset_runs):
    sol_a, summ_a = preset_runs["unlimited"]
    sol_b, summ_b = run_scenario("unlimited")
    assert summ_a == summ_b
    np.testing.assert_array_equal(sol_a.control, sol_b.control)
    np.testing.assert_array_equal(sol_a.states.values, sol_b.states.values)


def test_tighter_budget_costs_more(preset_runs):
    _, s10 = preset_runs["endpoint-10000"]
    _, s20 = preset_runs["endpoint-20000"]
    assert s10.cost > s20.cost
    assert s10.total_vaccines < s20.total_vaccines


def test_vaccination_collapses_deaths_and_burials(preset_runs):
    _, none = preset_runs["no-vaccination"]
    _, best = preset_runs["unlimited"]
    aggregate_none = none.final_d + none.final_h + none.final_b
    aggregate_best = best.final_d + best.final_h + best.final_b
    assert aggregate_none > 250.0
    assert aggregate_best < 0.05 * aggregate_none


def test_run_scenario_custom_steps():
    sol, summary = run_scenario("mixed-1000-10", n_steps=100)
    assert sol.problem.grid.n_steps == 100
    assert summary.cost == pytest.approx(45.86, abs=0.2)


def test_run_scenario_wraps_convergence_failure():
    opts = FbsmOptions(tol=1e-14, max_sweeps=2)
    with pytest.raises(ConvergenceError, match="scenario 'unlimited'") as err:
        run_scenario("unlimited", options=opts)
    assert err.value.solution is not None
