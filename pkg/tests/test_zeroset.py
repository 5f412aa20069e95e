import math

import numpy as np
import pytest

from traceless.bipoly import BivariatePoly
from traceless.zeroset import trace

X, Y = BivariatePoly.x(), BivariatePoly.y()


def residual(poly, curve):
    return float(np.max(np.abs(poly(curve.points[:, 0], curve.points[:, 1]))))


def test_circle_is_one_closed_curve():
    poly = 4 * X * X + 4 * Y * Y - 2
    res = trace(poly, 256)
    assert len(res.curves) == 1 and res.curves[0].closed
    assert residual(poly, res.curves[0]) < 1e-9
    r = np.hypot(res.curves[0].points[:, 0], res.curves[0].points[:, 1])
    assert np.allclose(r, math.sqrt(0.5), atol=1e-9)


def test_line_reaches_the_boundary_exactly():
    res = trace(Y, 128)
    assert len(res.curves) == 1 and not res.curves[0].closed
    pts = res.curves[0].points
    assert abs(abs(pts[0, 0]) - 1.0) < 1e-12 and abs(abs(pts[-1, 0]) - 1.0) < 1e-12
    assert np.max(np.abs(pts[:, 1])) < 1e-12


def test_crossing_lines_run_straight_through_the_node():
    poly = X * X - Y * Y
    res = trace(poly, 256)
    assert len(res.curves) == 2
    for c in res.curves:
        assert not c.closed
        # each strand is one of the diagonals, so |x| = |y| along it
        assert np.max(np.abs(np.abs(c.points[:, 0]) - np.abs(c.points[:, 1]))) < 1e-6
        slope = np.sign(c.points[-1] - c.points[0])
        assert slope[0] != 0 and slope[1] != 0
    # the factors are the two diagonals, so the node is a crossing between factors
    assert len(res.factors) == 2
    assert len(res.junctions) == 1
    assert max(abs(v) for v in res.junctions[0].point) < 1e-8
    assert sorted(res.junctions[0].curves) == [0, 1]


def test_separate_factors_meet_at_junctions():
    poly = Y * (4 * X * X + 4 * Y * Y - 3)
    res = trace(poly, 256)
    assert len(res.factors) == 2
    pts = sorted(j.point for j in res.junctions)
    assert len(pts) == 2
    assert np.allclose(pts, [(-math.sqrt(3) / 2, 0.0), (math.sqrt(3) / 2, 0.0)], atol=1e-9)
    for c in res.curves:
        assert residual(res.factors[c.factor], c) < 1e-9


def test_curve_outside_the_square_is_empty():
    res = trace(X * X + Y * Y - 9, 64)
    assert res.curves == []


@pytest.mark.parametrize("grid", [96, 256, 512])
def test_figure_eight_is_one_closed_curve(grid):
    poly = -8 * Y * Y * Y * Y + 6 * Y * Y - 2 * X * X
    res = trace(poly, grid)
    assert len(res.curves) == 1 and res.curves[0].closed
    assert residual(poly, res.curves[0]) < 1e-8
    assert any(j.singular for j in res.junctions)
