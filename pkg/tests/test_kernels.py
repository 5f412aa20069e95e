import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from traceless import kernels

BACKENDS = kernels.backends()
coords = st.floats(-4, 4, allow_nan=False, width=64)


def test_compiled_backend_is_built():
    assert set(BACKENDS) == {"python", "compiled"}
    assert kernels.BACKEND in BACKENDS


@given(arrays(np.float64, st.tuples(st.integers(2, 12), st.just(2)), elements=coords),
       arrays(np.float64, st.tuples(st.integers(2, 12), st.just(2)), elements=coords))
@settings(max_examples=80)
def test_segment_crossings_agree(a, b):
    outs = [BACKENDS[name].segment_crossings(a, b) for name in sorted(BACKENDS)]
    for x, y in zip(outs[0], outs[1]):
        np.testing.assert_allclose(np.asarray(x), np.asarray(y), rtol=0, atol=1e-12)


def test_segment_crossings_example():
    for mod in BACKENDS.values():
        ia, ib, sa, sb, kind = mod.segment_crossings(np.array([[0.0, 0.0], [2.0, 2.0]]),
                                                    np.array([[0.0, 2.0], [2.0, 0.0]]))
        assert list(ia) == [0] and list(ib) == [0]
        assert sa[0] == pytest.approx(0.5) and sb[0] == pytest.approx(0.5)
        assert kind[0] == kernels.PROPER


@given(arrays(np.int64, st.tuples(st.integers(1, 5), st.integers(1, 5)), elements=st.integers(-9, 9)),
       arrays(np.float64, 7, elements=st.floats(-1, 1)), arrays(np.float64, 7, elements=st.floats(-1, 1)))
def test_poly2_eval_agrees(c, x, y):
    coeffs = c.astype(float)
    ref = np.polynomial.polynomial.polyval2d(x, y, coeffs)
    for mod in BACKENDS.values():
        np.testing.assert_allclose(mod.poly2_eval(coeffs, x, y), ref, atol=1e-9)


def test_bisect_edges_agree():
    coeffs = np.zeros((3, 3))
    coeffs[2, 0], coeffs[0, 2], coeffs[0, 0] = 1.0, 1.0, -0.5
    p0 = np.array([[0.0, 0.0], [0.0, -0.1], [-1.0, 0.3]])
    p1 = np.array([[1.0, 0.0], [0.0, -1.0], [0.0, 0.3]])
    roots = [mod.bisect_edges(coeffs, p0, p1, 60) for mod in BACKENDS.values()]
    np.testing.assert_allclose(roots[0], roots[1], atol=1e-14)
    np.testing.assert_allclose(np.hypot(roots[0][:, 0], roots[0][:, 1]), np.sqrt(0.5), atol=1e-12)
