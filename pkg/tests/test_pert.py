import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from traceless import quat
from traceless.errors import InvalidPerturbation, PerturbationTooLarge, UnsupportedPerturbationFunction
from traceless.intersect import self_intersections
from traceless.pert import (
    PerturbationData,
    PerturbedRep,
    rho,
    rho_image,
    rho_unreduced,
    rho_unreduced_image,
    tau_branch,
    verify_relations,
)
from traceless.pillowcase import TAU_PT, corner_distance, orbit_distance, project, psi

PI = math.pi
betas = st.floats(0.0, 2 * PI, allow_nan=False)
epsilons = st.floats(0.0, 0.45, allow_nan=False)


def qclose(p, q, tol=1e-12):
    return quat.distance(p, q) <= tol


def test_rho_at_zero():
    rep = rho(0.0, PerturbationData(0.2))
    want = (quat.I, quat.J, quat.J, quat.I, -quat.J, quat.ONE, -quat.ONE)
    for name, q in zip("abcdhpw", want):
        assert qclose(getattr(rep, name), q)
    # [a p', h] with p = 1 is [i, -j]
    a, h = rep.a, rep.h
    comm = quat.mul(quat.mul(a, h), quat.mul(a.conj(), h.conj()))
    assert qclose(comm, -quat.ONE)


def test_unperturbed_rho_lies_over_the_diagonal():
    for beta in np.linspace(0, 2 * PI, 17):
        rep = rho(float(beta), PerturbationData(0.0))
        for got, want in zip((rep.a, rep.b, rep.c, rep.d), psi(beta + PI / 2, beta + PI / 2)):
            assert qclose(got, want)


def test_relation_residuals():
    assert verify_relations(rho(0.0, PerturbationData(0.2))) < 1e-12
    assert verify_relations(rho(1.2345, PerturbationData(0.3))) < 1e-9


def test_corrupted_rep_fails_relations():
    rep = rho(0.7, PerturbationData(0.2))
    images = dict(rep.images)
    images["b"] = -images["b"]
    bad = PerturbedRep(rep.beta, rep.which, rep.epsilon, images)
    assert verify_relations(bad) > 0.1


def test_rho_image_examples():
    path = rho_image(PerturbationData(0.2))
    pts = path.curve(np.array([0.0, PI / 2]))
    assert np.allclose(pts[0], (PI / 2, PI / 2))
    assert np.allclose(pts[1], (PI + 0.2, PI - 0.2))


@pytest.mark.parametrize("eps", [0.05, 0.2, 0.4])
def test_rho_image_has_one_double_point(eps):
    path = rho_image(PerturbationData(eps))
    doubles = self_intersections(path)
    assert len(doubles) == 1
    ts = sorted(doubles[0].params)
    assert abs(ts[0]) < 1e-6 or abs(ts[0] - 2 * PI) < 1e-6
    assert abs(ts[1] - PI) < 1e-6


@pytest.mark.parametrize("eps", [0.01, 0.1, 0.4])
def test_branch_points_avoided(eps):
    path = rho_image(PerturbationData(eps), samples=8192)
    assert float(np.min(corner_distance(path.lift[:, 0], path.lift[:, 1]))) > TAU_PT
    # the closest approach is at least eps / sqrt(2) away from every corner
    assert float(np.min(corner_distance(path.lift[:, 0], path.lift[:, 1]))) > 0.5 * eps


@given(epsilons)
def test_reduced_lift_is_monotone(eps):
    path = rho_image(PerturbationData(eps), samples=512)
    steps = np.diff(path.lift, axis=0)
    assert np.all(steps[:, 0] > 0) and np.all(steps[:, 1] > 0)


@pytest.mark.parametrize("beta, branch, expected", [(0.0, 1, 0.0), (PI / 2, 1, -PI / 6), (0.0, 2, PI)])
def test_tau_branch(beta, branch, expected):
    assert abs(tau_branch(beta, branch) - expected) < 1e-15


@given(betas, st.sampled_from([1, 2]))
def test_tau_branch_solves_defining_equation(beta, branch):
    assert abs(math.sin(beta) + 2 * math.sin(tau_branch(beta, branch))) < 1e-12


def test_unreduced_images_at_zero():
    pert = PerturbationData(0.2)
    one = rho_unreduced(0.0, 1, pert).restriction()
    two = rho_unreduced(0.0, 2, pert).restriction()
    assert np.allclose(one, (PI / 2, PI / 2))
    assert np.allclose(two, (-PI / 2, -PI / 2))
    assert project(*one) == project(*two)


@given(betas, epsilons, st.sampled_from(["reduced", 1, 2]))
def test_relations_hold_on_all_circles(beta, eps, which):
    pert = PerturbationData(eps)
    rep = rho(beta, pert) if which == "reduced" else rho_unreduced(beta, which, pert)
    assert verify_relations(rep) <= 1e-9


def test_relation_sweep_thousand_samples():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(1000):
        beta = float(rng.uniform(0, 2 * PI))
        eps = float(rng.uniform(0, 0.45))
        which = int(rng.integers(0, 3))
        pert = PerturbationData(eps)
        rep = rho(beta, pert) if which == 0 else rho_unreduced(beta, which, pert)
        worst = max(worst, verify_relations(rep))
    assert worst <= 1e-9


@given(betas, epsilons)
def test_branch_one_stays_near_diagonal(beta, eps):
    g, t = rho_unreduced(beta, 1, PerturbationData(eps)).restriction()
    assert abs(g - t) <= 2 * eps + 1e-12


@given(betas, epsilons)
def test_branch_two_is_a_diagonal_shift_of_branch_one(beta, eps):
    pert = PerturbationData(eps)
    one = np.array(rho_unreduced(beta, 1, pert).restriction())
    two = np.array(rho_unreduced(beta, 2, pert).restriction())
    shift = 2 * tau_branch(beta, 1) - PI
    assert np.allclose(two - one, (shift, shift), atol=1e-12)


def test_unreduced_branch_one_double_point():
    path = rho_unreduced_image(1, PerturbationData(0.4))
    assert len(self_intersections(path)) == 1


def test_reduced_map_is_injective_off_the_double_point():
    path = rho_image(PerturbationData(0.15), samples=1024)
    pts = path.projected()
    n = len(pts) - 1
    for i in range(0, n, 37):
        d = orbit_distance(pts[i], pts[:n])
        d[max(0, i - 2):i + 3] = np.inf
        j = int(np.argmin(d))
        if d[j] < 1e-6:
            pair = sorted((path.t[i] % PI, path.t[j] % PI))
            assert pair[0] < 1e-3 or pair[1] > PI - 1e-3


def test_validation_errors():
    with pytest.raises(PerturbationTooLarge):
        rho_image(PerturbationData(1.6))
    with pytest.raises(InvalidPerturbation):
        PerturbationData(0.1, f=np.cos, name="cos").validate()
    with pytest.raises(InvalidPerturbation):
        PerturbationData(-0.1)
    with pytest.raises(UnsupportedPerturbationFunction):
        rho_unreduced_image(1, PerturbationData(0.1, f=lambda b: np.sin(b) + 0.1 * np.sin(3 * b), name="mix"))


def test_other_odd_functions_are_allowed():
    pert = PerturbationData(0.1, f=lambda b: np.sin(b) * (1 + 0.2 * np.cos(b) ** 2), name="skew")
    pert.validate()
    path = rho_image(pert)
    assert path.closed and len(self_intersections(path)) == 1
