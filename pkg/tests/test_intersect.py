import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from traceless.errors import CornerCrossing, NonTransverse
from traceless.intersect import count_generators, intersections, transverse
from traceless.pert import PerturbationData, rho_image
from traceless.pillowcase import diagonal_arc, is_corner, orbit_distance, sample_curve
from traceless.twobridge import TwoBridgeKnot, restriction_curve

PI = math.pi
TREFOIL = TwoBridgeKnot(-3, 1)


def same_sets(a, b, tol=1e-7):
    if len(a) != len(b):
        return False
    return all(min(float(orbit_distance(p.location.as_tuple(), q.location.as_tuple())) for q in b) <= tol
               for p in a)


def test_trefoil_meets_diagonal_at_corner_and_one_point():
    pts = intersections(restriction_curve(TREFOIL), diagonal_arc())
    assert len(pts) == 2
    corners = [p for p in pts if p.corner]
    inner = transverse(pts)
    assert len(corners) == 1 and is_corner(corners[0].location)
    assert float(orbit_distance(inner[0].location.as_tuple(), (2 * PI / 3, 2 * PI / 3))) < 1e-9


def test_strict_corners_raise():
    with pytest.raises(CornerCrossing):
        intersections(restriction_curve(TREFOIL), diagonal_arc(), strict_corners=True)


def test_trefoil_meets_circle_three_times():
    pts = intersections(restriction_curve(TREFOIL), rho_image(PerturbationData(0.2)))
    assert len(transverse(pts)) == 3 and not any(p.corner for p in pts)
    assert min(p.transversality_margin for p in pts) > 1e-4


def test_overlap_is_rejected():
    path = restriction_curve(TREFOIL, samples=256)
    with pytest.raises(NonTransverse):
        intersections(path, path.transformed(1, 1, 1))


def test_tangency_is_rejected():
    a = sample_curve(lambda t: np.stack([t, 1.0 + 0.0 * t], axis=-1), 0.5, 2.5, 64)
    b = sample_curve(lambda t: np.stack([t, 1.0 + (t - 1.5) ** 2], axis=-1), 0.5, 2.5, 64)
    with pytest.raises(NonTransverse):
        intersections(a, b)


@pytest.mark.parametrize("p, q", [(-3, 1), (-5, 3), (-11, 5)])
def test_intersections_are_symmetric(p, q):
    curve = restriction_curve(TwoBridgeKnot(p, q))
    circle = rho_image(PerturbationData(0.1))
    assert same_sets(intersections(curve, circle), intersections(circle, curve))


@settings(max_examples=12)
@given(st.sampled_from([1, -1]), st.integers(-3, 3), st.integers(-3, 3))
def test_lift_choice_does_not_matter(sign, m, n):
    curve = restriction_curve(TwoBridgeKnot(-5, 3), samples=1024)
    circle = rho_image(PerturbationData(0.1), samples=1024)
    base = intersections(curve, circle)
    moved = intersections(curve.transformed(sign, m, n), circle)
    assert same_sets(base, moved)


def test_counts_reduced_and_unreduced():
    curve = restriction_curve(TREFOIL)
    pert = PerturbationData(0.2)
    assert count_generators(curve, pert, "reduced").total == 3
    assert count_generators(curve, pert, "unreduced").total == 6
    with pytest.raises(ValueError):
        count_generators(curve, pert, "both")


@pytest.mark.parametrize("p, q", [(-3, 1), (-5, 1), (-5, 3), (-7, 2), (-11, 5), (-13, 8)])
def test_unreduced_doubles_reduced(p, q):
    curve = restriction_curve(TwoBridgeKnot(p, q))
    pert = PerturbationData(0.1)
    red = count_generators(curve, pert, "reduced")
    unred = count_generators(curve, pert, "unreduced")
    assert unred.total == 2 * red.total == 2 * abs(p)
    assert unred.flags["pairs_resolved"]


@pytest.mark.parametrize("p, q", [(-3, 1), (-5, 3), (-11, 5)])
def test_count_is_stable_in_epsilon(p, q):
    curve = restriction_curve(TwoBridgeKnot(p, q))
    counts = {count_generators(curve, PerturbationData(e)).total for e in np.linspace(0.02, 0.3, 8)}
    assert counts == {abs(p)}


def test_generator_sources_label_pairs():
    rep = count_generators(restriction_curve(TwoBridgeKnot(-11, 5)), PerturbationData(0.1))
    assert rep.alpha_prime is not None
    assert len(rep.pairs) == 5 and all(len(pair) == 2 for pair in rep.pairs)
