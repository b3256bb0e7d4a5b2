import numpy as np
import pytest

from ebovax import Grid, Params, Trajectory, X0_DEFAULT
from ebovax import integrate_backward, integrate_forward, interpolate, rk4_step, rhs_vacc
from ebovax.errors import DomainError, GridMismatchError, IntegrationError

P = Params()


def test_grid_nodes():
    g = Grid(0.0, 90.0, 1800)
    assert g.h == pytest.approx(0.05, abs=1e-15)
    assert g.times.shape == (1801,)
    assert g.times[0] == 0.0
    assert g.times[-1] == pytest.approx(90.0, abs=1e-12)
    assert np.all(np.diff(g.times) > 0)


def test_grid_rejects_degenerate():
    with pytest.raises(DomainError):
        Grid(0.0, 0.0, 10)
    with pytest.raises(DomainError):
        Grid(0.0, 10.0, 0)
    with pytest.raises(DomainError):
        Grid(0.0, np.inf, 10)


def test_trajectory_shape_checks():
    g = Grid(0.0, 1.0, 4)
    Trajectory(g, np.zeros((5, 3)))
    Trajectory(g, np.zeros(5))
    with pytest.raises(DomainError):
        Trajectory(g, np.zeros((4, 3)))
    with pytest.raises(DomainError):
        Trajectory(g, np.full((5, 3), np.nan))


def test_rk4_step_scalar_exponential():
    # one classic step of y' = y from 1 over h = 0.1: the degree-4 Taylor
    # polynomial 1 + h + h^2/2 + h^3/6 + h^4/24 evaluated exactly
    h = 0.1
    expected = 1.0 + h + h**2 / 2 + h**3 / 6 + h**4 / 24
    got = rk4_step(lambda t, y: y, 0.0, np.array([1.0]), h)
    assert got[0] == pytest.approx(expected, rel=1e-15)


def test_rk4_step_zero_field_is_identity():
    y = np.array([3.0, -2.0])
    got = rk4_step(lambda t, y: np.zeros_like(y), 0.0, y, 0.5)
    np.testing.assert_array_equal(got, y)


def test_rk4_fourth_order_on_model():
    # global error vs a fine reference falls ~16x when h is halved
    def f(t, y):
        return rhs_vacc(y, 0.3, P)

    ref = integrate_forward(f, X0_DEFAULT, Grid(0.0, 5.0, 2560)).values[-1]
    errs = []
    for n in (40, 80, 160):
        end = integrate_forward(f, X0_DEFAULT, Grid(0.0, 5.0, n)).values[-1]
        errs.append(np.max(np.abs(end - ref)))
    orders = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
    for order in orders:
        assert 3.7 <= order <= 4.3


def test_integrate_forward_rejects_blowup():
    with np.errstate(over="ignore"), pytest.raises(IntegrationError):
        integrate_forward(lambda t, y: y * y, np.array([1.0]), Grid(0.0, 20.0, 20))


def test_integrate_backward_reverses_exponential():
    # lam' = lam integrated from lam(tf)=e^1 back to t=0 recovers 1
    g = Grid(0.0, 1.0, 200)
    stored = Trajectory(g, np.zeros((201, 1)))
    lam = integrate_backward(lambda x, l, u: l, np.array([np.e]), g, stored)
    assert lam.values[0, 0] == pytest.approx(1.0, rel=1e-9)
    assert lam.values[-1, 0] == np.e


def test_integrate_backward_sees_stored_states():
    # lam' = x(t) with x(t) = t stored on the mesh: lam(0) = lam(1) - 1/2
    g = Grid(0.0, 1.0, 100)
    stored = Trajectory(g, g.times.reshape(-1, 1))
    lam = integrate_backward(lambda x, l, u: x[:1], np.array([2.0]), g, stored)
    assert lam.values[0, 0] == pytest.approx(1.5, rel=1e-10)


def test_integrate_backward_grid_mismatch():
    g = Grid(0.0, 1.0, 10)
    stored = Trajectory(Grid(0.0, 1.0, 20), np.zeros((21, 1)))
    with pytest.raises(GridMismatchError):
        integrate_backward(lambda x, l, u: l, np.array([1.0]), g, stored)


def test_interpolate_exact_and_linear():
    g = Grid(0.0, 1.0, 4)
    traj = Trajectory(g, np.array([0.0, 1.0, 4.0, 9.0, 16.0]).reshape(-1, 1))
    assert interpolate(traj, 0.5)[0] == 4.0
    assert interpolate(traj, 0.0)[0] == 0.0
    assert interpolate(traj, 1.0)[0] == 16.0
    assert interpolate(traj, 0.375)[0] == pytest.approx(2.5, abs=1e-12)


def test_interpolate_out_of_range():
    g = Grid(0.0, 1.0, 4)
    traj = Trajectory(g, np.zeros((5, 1)))
    with pytest.raises(DomainError):
        interpolate(traj, -0.01)
    with pytest.raises(DomainError):
        interpolate(traj, 1.01)
