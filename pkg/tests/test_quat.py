import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from traceless import quat
from traceless.errors import NotPureUnit
from traceless.quat import I, J, K, ONE, Quaternion

angles = st.floats(-10.0, 10.0, allow_nan=False)
coords = st.floats(-3.0, 3.0, allow_nan=False)


def close(p, q, tol=1e-12):
    return quat.distance(p, q) <= tol


@st.composite
def pure_units(draw):
    v = np.array([draw(coords), draw(coords), draw(coords)])
    if np.linalg.norm(v) < 1e-3:
        v = np.array([1.0, 0.0, 0.0])
    v = v / np.linalg.norm(v)
    return Quaternion(0.0, *v)


@st.composite
def units(draw):
    v = np.array([draw(coords) for _ in range(4)])
    if np.linalg.norm(v) < 1e-3:
        v = np.array([1.0, 0.0, 0.0, 0.0])
    return Quaternion.from_array(v / np.linalg.norm(v))


def test_defining_relations():
    assert close(quat.mul(I, J), K)
    assert close(quat.mul(J, K), I)
    assert close(quat.mul(K, I), J)
    for q in (I, J, K):
        assert close(quat.mul(q, q), -ONE)


def test_conjugate_identity():
    q = Quaternion(1.0, 2.0, 0.0, -1.0)
    assert close(quat.mul(q, q.conj()), Quaternion(6.0, 0.0, 0.0, 0.0))


def test_same_axis_exponentials_add():
    got = quat.mul(quat.exp_axis(math.pi / 3, I), quat.exp_axis(math.pi / 6, I))
    assert close(got, I)


@pytest.mark.parametrize(
    "t, axis, expected",
    [
        (math.pi / 2, I, I),
        (0.0, J, ONE),
        (math.pi / 4, K, Quaternion(math.sqrt(0.5), 0.0, 0.0, math.sqrt(0.5))),
    ],
)
def test_exp_axis(t, axis, expected):
    assert close(quat.exp_axis(t, axis), expected)


def test_exp_axis_rejects_non_pure():
    with pytest.raises(NotPureUnit):
        quat.exp_axis(1.0, Quaternion(1.0, 1.0, 0.0, 0.0))


def test_re_product_examples():
    assert abs(quat.re_product(math.pi / 2, I, math.pi / 2, J)) < 1e-15
    assert abs(quat.re_product(math.pi / 4, I, math.pi / 4, I)) < 1e-15


def test_conjugate_by_examples():
    assert close(quat.conjugate_by(quat.exp_k(math.pi / 4), I), J)
    g = quat.normalize(Quaternion(0.3, -1.0, 2.0, 0.5))
    assert close(quat.conjugate_by(g, ONE), ONE)
    assert close(quat.conjugate_by(quat.exp_axis(0.7, J), J), J)


def test_power_matches_exponential():
    q = quat.exp_axis(0.37, quat.normalize(Quaternion(0.0, 1.0, -2.0, 0.5)))
    assert close(quat.power(q, 7), quat.exp_axis(7 * 0.37, quat.normalize(Quaternion(0.0, 1.0, -2.0, 0.5))), 1e-12)
    assert close(quat.power(q, -3), quat.power(q.conj(), 3), 1e-12)
    assert close(quat.power(q, 0), ONE)


@given(angles, pure_units(), angles, pure_units())
def test_re_product_matches_multiplication(t1, q1, t2, q2):
    brute = quat.mul(quat.exp_axis(t1, q1), quat.exp_axis(t2, q2)).a
    assert abs(quat.re_product(t1, q1, t2, q2) - brute) <= 1e-12


@given(units(), st.tuples(coords, coords, coords, coords))
def test_conjugation_preserves_norm_and_real_part(g, v):
    q = Quaternion(*v)
    c = quat.conjugate_by(g, q)
    assert abs(c.norm() - q.norm()) <= 1e-12
    assert abs(c.a - q.a) <= 1e-12


@given(pure_units())
def test_pure_units_square_to_minus_one(q):
    assert close(quat.mul(q, q), -ONE)


@given(pure_units(), pure_units())
def test_anticonjugating_element_is_pure_and_orthogonal(axis, other):
    # a unit orthogonal to Q conjugates Q to -Q
    w = np.cross(np.array(axis.vector), np.array(other.vector))
    if np.linalg.norm(w) < 1e-6:
        w = np.cross(np.array(axis.vector), np.array([1.0, 0.0, 0.0]))
        if np.linalg.norm(w) < 1e-6:
            w = np.cross(np.array(axis.vector), np.array([0.0, 1.0, 0.0]))
    q = Quaternion(0.0, *(w / np.linalg.norm(w)))
    assert close(quat.conjugate_by(q, axis), -axis, 1e-12)
    assert abs(q.a) <= 1e-12
    assert abs(quat.mul(q, axis).a) <= 1e-12


def test_array_helpers_match_scalar_ops():
    rng = np.random.default_rng(3)
    p = rng.normal(size=(20, 4))
    q = rng.normal(size=(20, 4))
    prod = quat.mul_arr(p, q)
    for i in range(20):
        want = quat.mul(Quaternion.from_array(p[i]), Quaternion.from_array(q[i])).to_array()
        assert np.allclose(prod[i], want, atol=1e-12)
    assert np.allclose(quat.conj_arr(p)[:, 1:], -p[:, 1:])


def test_membership_predicates():
    assert quat.is_pure_unit(I)
    assert not quat.is_pure_unit(ONE)
    assert quat.is_unit(quat.normalize(Quaternion(1.0, 1.0, 1.0, 1.0)))
    with pytest.raises(NotPureUnit):
        quat.require_pure_unit(Quaternion(0.0, 2.0, 0.0, 0.0))
