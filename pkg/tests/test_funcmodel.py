import numpy as np
import pytest

from freeqsg import funcmodel
from freeqsg.algebra import AlgebraError, OwnerMismatch, make_cn
from freeqsg.corpus import make_rng, random_element, random_zero_element
from freeqsg.qsg import c2star2_generators


def test_sample_projections():
    for t in (0.0, 0.17, 0.5, 1.0):
        for m in (funcmodel.sample_p(t), funcmodel.sample_q(t)):
            assert np.abs(m @ m - m).max() <= 1e-14
            assert np.abs(m.conj().T - m).max() <= 1e-14
    with pytest.raises(AlgebraError):
        funcmodel.sample_p(1.2)


def test_endpoints_diagonal():
    for t in (0.0, 1.0):
        q = funcmodel.sample_q(t)
        assert abs(q[0, 1]) <= 1e-15 and abs(q[1, 0]) <= 1e-15


def test_sample_points():
    ts = funcmodel.sample_points(40)
    assert ts[0] == 0.0 and ts[-1] == 1.0
    assert len(ts) >= 30 and len(np.unique(ts)) == len(ts)
    with pytest.raises(AlgebraError):
        funcmodel.sample_points(1)


def test_evaluate_element():
    C = funcmodel.model_algebra()
    p, q = c2star2_generators(C)
    t = 0.3
    P, Q = funcmodel.sample_p(t), funcmodel.sample_q(t)
    got = funcmodel.evaluate_element(p * q * p, t)
    assert np.abs(got - P @ Q @ P).max() <= 1e-14
    assert np.abs(funcmodel.evaluate_element(C.unit(), t) - np.eye(2)).max() == 0
    with pytest.raises(OwnerMismatch):
        funcmodel.evaluate_element(make_cn(2).unit(), t)


def test_oracle_soundness():
    C = funcmodel.model_algebra()
    rng = make_rng(31)
    for _ in range(100):
        z = random_zero_element(rng, C)
        assert funcmodel.oracle_is_zero(z, samples=60)


def test_oracle_effectiveness():
    C = funcmodel.model_algebra()
    rng = make_rng(32)
    missed = 0
    for _ in range(100):
        x = random_element(rng, C)
        if x.coords and funcmodel.oracle_is_zero(x, samples=200):
            missed += 1
    assert missed == 0


def test_verify_model_report():
    rep = funcmodel.verify_model(samples=200, pairs=36)
    assert rep["p_idempotent"] <= 1e-12
    assert rep["q_idempotent"] <= 1e-12
    assert rep["endpoint_offdiagonal"] <= 1e-15
    assert rep["delta_image_idempotent"] <= 1e-12
    assert rep["delta_image_selfadjoint"] <= 1e-12
    assert rep["composition_image_idempotent"] <= 1e-12
    assert rep["composition_image_selfadjoint"] <= 1e-12
