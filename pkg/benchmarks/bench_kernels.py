"""Compare the compiled kernels with the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on the same inputs under every available backend; the
table reports the best wall time and the speedup over the fallback.
"""

from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from traceless import kernels
from traceless.pert import rho_image
from traceless.torus import TorusKnot, cutout_poly
from traceless.twobridge import TwoBridgeKnot, restriction_curve


def _cases():
    curve = restriction_curve(TwoBridgeKnot(-11, 5), 4096).lift
    circle = rho_image(samples=4096).lift
    poly = cutout_poly(TorusKnot(5, 7))
    coeffs = np.ascontiguousarray(poly.float_coeffs())
    rng = np.random.default_rng(0)
    x = rng.uniform(-1, 1, 200_000)
    y = rng.uniform(-1, 1, 200_000)
    t = np.linspace(0.0, 2 * math.pi, 20_001)
    p0 = np.stack([0.9 * np.cos(t), 0.9 * np.sin(t)], axis=1)
    p1 = np.zeros_like(p0)
    circ = np.zeros((3, 3))
    circ[2, 0], circ[0, 2], circ[0, 0] = 1.0, 1.0, -0.25
    return {
        "segment_crossings": lambda m: m.segment_crossings(curve, circle),
        "poly2_eval": lambda m: m.poly2_eval(coeffs, x, y),
        "bisect_edges": lambda m: m.bisect_edges(circ, p0, p1, 60),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    found = kernels.backends()
    names = sorted(found, key=lambda n: n != "python")
    print(f"{'kernel':<20}" + "".join(f"{n + ' (ms)':>16}" for n in names) + f"{'speedup':>10}")
    for label, fn in _cases().items():
        times = {n: min(timeit.repeat(lambda: fn(found[n]), number=1, repeat=args.repeat)) for n in names}
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{label:<20}" + "".join(f"{1e3 * times[n]:>16.2f}" for n in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
