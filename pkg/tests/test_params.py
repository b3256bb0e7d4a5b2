import numpy as np
import pytest

from ebovax import Params
from ebovax.errors import DomainError
from ebovax.params import VECTOR_FIELDS


def test_baseline_values():
    p = Params()
    assert p.sigma == 1.0 / 11.4
    assert p.mu == 0.014
    assert p.xi == 0.014
    assert p.beta_i == 0.14
    assert p.beta_d == 0.40
    assert p.beta_h == 0.29
    assert p.beta_r == 0.185
    assert p.gamma1 == 0.1
    assert p.gamma2 == 0.2
    assert p.gamma3 == 1.0 / 30.0
    assert p.epsilon == 1.0 / 9.6
    assert p.tau == 0.2
    assert p.delta1 == 0.5
    assert p.delta2 == 1.0 / 4.6
    assert p.n_total == 18015.0
    assert p.w1 == 1.0
    assert p.w2 == 1.0


def test_outflow_aggregates():
    p = Params()
    assert p.a1 == p.gamma2 + p.delta2 + p.mu
    assert p.a2 == p.gamma3 + p.mu
    assert p.a3 == p.delta1 + p.xi
    assert p.a4 == p.sigma + p.mu
    assert p.a5 == p.gamma1 + p.epsilon + p.tau + p.mu


def test_validate_accepts_baseline():
    assert Params().validate() is not None


@pytest.mark.parametrize("field", ["sigma", "mu", "beta_i", "gamma3", "delta2"])
def test_validate_rejects_negative_rate(field):
    p = Params(**{field: -0.1})
    with pytest.raises(DomainError, match=field):
        p.validate()


def test_validate_allows_zero_rate():
    Params(sigma=0.0).validate()


def test_validate_rejects_bad_weights_and_population():
    with pytest.raises(DomainError, match="w2"):
        Params(w2=0.0).validate()
    with pytest.raises(DomainError, match="w1"):
        Params(w1=-1.0).validate()
    with pytest.raises(DomainError, match="n_total"):
        Params(n_total=0.0).validate()
    with pytest.raises(DomainError, match="tau"):
        Params(tau=float("nan")).validate()


def test_with_updates_returns_validated_copy():
    p = Params().with_updates(beta_i=0.2, w2=50.0)
    assert p.beta_i == 0.2
    assert p.w2 == 50.0
    assert Params().beta_i == 0.14
    with pytest.raises(DomainError, match="epsilon"):
        Params().with_updates(epsilon=-1.0)


def test_vector_layout():
    p = Params()
    v = p.vector()
    assert v.dtype == np.float64
    assert v.shape == (len(VECTOR_FIELDS),)
    for i, name in enumerate(VECTOR_FIELDS):
        assert v[i] == getattr(p, name)
