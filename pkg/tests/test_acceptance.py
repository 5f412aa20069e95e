"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS or FAIL line; the lines are printed in the pytest
terminal summary and when the module is run directly.
"""

import math
import time

import numpy as np
import pytest

from traceless.intersect import intersections
from traceless.pert import PerturbationData, rho, rho_image, rho_unreduced, verify_relations
from traceless.pillowcase import TAU_PT, corner_distance, diagonal_arc, hausdorff, orbit_distance
from traceless.table_data import TORUS_TABLE
from traceless.torus import (
    TorusKnot,
    abs_alexander_sum,
    alexander_at,
    alexander_poly,
    chi_arc_data,
    cutout_poly,
    junction_images,
    lattice_signature,
    signature,
    signature_count,
    torus_generators,
    trace_zero_set,
    variety_paths,
)
from traceless.bipoly import BivariatePoly
from traceless.twobridge import (
    TwoBridgeKnot,
    matrix_product_vector,
    odd_cfe,
    perturbed_generators,
    restriction_curve,
    unperturbed_intersections,
)

RESULTS: list[str] = []
TWO_BRIDGE = [(-3, 1), (-5, 3), (-5, 1), (-11, 5)]
X, Y = BivariatePoly.x(), BivariatePoly.y()


def record(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_matrix_product():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    knots = []
    while len(knots) < 200:
        p = int(rng.integers(-199, 200))
        q = int(rng.integers(-199, 200))
        if p % 2 and abs(p) >= 3 and q != 0 and math.gcd(p, q) == 1:
            knots.append((p, q))
    bad = []
    for p, q in knots:
        v = matrix_product_vector(odd_cfe(TwoBridgeKnot(p, q)))
        if v not in ((q, q - p, -p), (-q, p - q, p)):
            bad.append((p, q, v))
    elapsed = time.perf_counter() - start
    record(1, not bad and elapsed < 1.0, f"200 knots, {len(bad)} mismatches, {elapsed:.3f} s (limit 1 s)")


def test_criterion_2_two_bridge_counts():
    start = time.perf_counter()
    rows = []
    ok = True
    for p, q in TWO_BRIDGE:
        for eps in (0.05, 0.1, 0.2):
            rep = perturbed_generators(TwoBridgeKnot(p, q), PerturbationData(eps))
            margin = min(g.margin for g in rep.generators)
            ok &= rep.total == abs(p) and margin > 1e-4 and rep.flags["pairs_resolved"]
            rows.append(margin)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5.0
    record(2, ok, f"counts 3,5,5,11 at eps 0.05/0.1/0.2, min margin {min(rows):.3g} > 1e-4, "
                  f"{elapsed:.2f} s (limit 5 s)")


def test_criterion_3_unperturbed_limit():
    worst = 0.0
    ok = True
    for p, q in TWO_BRIDGE:
        k = TwoBridgeKnot(p, q)
        expected = unperturbed_intersections(k)
        found = intersections(restriction_curve(k), diagonal_arc())
        ok &= len(found) == len(expected)
        for e in expected:
            d = min(float(orbit_distance(e.as_tuple(), f.location.as_tuple())) for f in found)
            worst = max(worst, d)
    ok &= worst < 1e-6
    record(3, ok, f"diagonal intersections match the closed form, max distance {worst:.2e} (tol 1e-6)")


CUTOUTS = [
    ((2, 3, 2, -1), X),
    ((3, 4, 3, -2), Y * (4 * X * X + 4 * Y * Y - 3)),
    ((3, 5, 2, -1), -8 * Y * Y * Y * Y + 6 * Y * Y - 2 * X * X),
    ((4, 5, 4, -3), X * (16 * Y * Y * Y * Y + 16 * X * X * Y * Y - 20 * Y * Y - 4 * X * X + 3)),
]


def test_criterion_4_cutout_polynomials():
    bad = [args for args, expected in CUTOUTS if not cutout_poly(TorusKnot(*args)).proportional(expected)]
    record(4, not bad, f"4 cut-out polynomials proportional to the reference, exact; mismatches {bad}")


CHI = {
    (2, 3): {(1, 5)},
    (3, 5): {(1, 11), (7, 13), (2, 8), (4, 14)},
    (3, 7): {(1, 13), (11, 17), (5, 19), (2, 16), (4, 10), (8, 20)},
    (4, 9): {(1, 17), (15, 33), (23, 31), (7, 25), (2, 34), (14, 22), (6, 30), (10, 26), (19, 35), (3, 21),
             (5, 13), (11, 29)},
}


def test_criterion_5_chi_data():
    ok = True
    worst = 0.0
    for pq, pairs in CHI.items():
        k = TorusKnot(*pq)
        data = chi_arc_data(k)
        ok &= set(data.pairs) == pairs
        for c in data.endpoints():
            worst = max(worst, float(abs(alexander_at(k, np.exp(2j * math.pi * c / (k.p * k.q))))))
    ok &= worst < 1e-8
    ok &= alexander_poly(TorusKnot(3, 5)) == (1, -1, 0, 1, -1, 1, 0, -1, 1)
    record(5, ok, f"arc data for (2,3) (3,5) (3,7) (4,9), max |Delta| at endpoints {worst:.1e} (tol 1e-8), "
                  "(3,5) Alexander polynomial exact")


def test_criterion_6_signature_table():
    start = time.perf_counter()
    bad = []
    for row in TORUS_TABLE:
        k = TorusKnot(row.p, row.q)
        half, count = signature_count(k)
        sigma = signature(k)
        if (sigma, abs_alexander_sum(k), abs(sigma) + 1) != (row.sigma, row.abs_delta, abs(row.sigma) + 1) \
                or abs(lattice_signature(k)) != 2 * count:
            bad.append((row.p, row.q))
    elapsed = time.perf_counter() - start
    record(6, not bad and elapsed < 30.0, f"30 table rows, mismatches {bad}, {elapsed:.2f} s (limit 30 s)")


def _fit(path):
    a, b = np.polyfit(path.lift[:, 0], path.lift[:, 1], 1)
    return a, b, float(np.max(np.abs(path.lift[:, 1] - (a * path.lift[:, 0] + b))))


def _mod_2pi(v):
    return abs((v + math.pi) % (2 * math.pi) - math.pi)


def test_criterion_7_three_four_geometry():
    k = TorusKnot(3, 4, 3, -2)
    zs = trace_zero_set(k)
    paths = variety_paths(k, zero_set=zs)
    kinds = sorted(c.kind for c in zs.components)
    gammas = sorted(g for g, _ in junction_images(k, zs))
    meet = (len(gammas) == 2 and abs(gammas[0] - math.pi / 6) < 1e-4 and abs(gammas[1] - 5 * math.pi / 6) < 1e-4)
    fits = {c.kind: _fit(p) for c, p in zip(zs.components, paths)}
    arc_ok = abs(fits["arc"][0] + 2) < 1e-6 and _mod_2pi(fits["arc"][1]) < 1e-6 and fits["arc"][2] < 1e-6
    loop_ok = (abs(fits["loop"][0] - 4) < 1e-6 and _mod_2pi(fits["loop"][1] - math.pi) < 1e-6
               and fits["loop"][2] < 1e-6)
    total = torus_generators(k, paths=paths).total
    res = max(fits["arc"][2], fits["loop"][2])
    record(7, kinds == ["arc", "loop"] and meet and arc_ok and loop_ok and total == 7,
           f"arc + loop meeting at gamma {[round(g, 6) for g in gammas]}, line fits residual {res:.1e} "
           f"(tol 1e-6), {total} generators")


def test_criterion_8_perturbed_circles():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(1000):
        beta = float(rng.uniform(0, 2 * math.pi))
        pert = PerturbationData(float(rng.uniform(0.0, 0.45)))
        worst = max(worst, verify_relations(rho(beta, pert)),
                    verify_relations(rho_unreduced(beta, 1, pert)),
                    verify_relations(rho_unreduced(beta, 2, pert)))
    closest = min(float(np.min(corner_distance(*rho_image(PerturbationData(e), 8192).lift.T)))
                  for e in (0.01, 0.1, 0.4))
    doubled = all(
        perturbed_generators(TwoBridgeKnot(p, q), mode="unreduced").total
        == 2 * perturbed_generators(TwoBridgeKnot(p, q)).total
        for p, q in TWO_BRIDGE
    )
    record(8, worst <= 1e-9 and closest > TAU_PT and doubled,
           f"relation residual {worst:.1e} (tol 1e-9) on 1000 samples of each circle, "
           f"corner clearance {closest:.3g}, unreduced = 2 x reduced: {doubled}")


def test_criterion_9_cross_module():
    k = TorusKnot(2, 3, 2, -1)
    paths = variety_paths(k)
    tb = TwoBridgeKnot(-3, 1)
    d = hausdorff(paths[0], restriction_curve(tb))
    n_torus = torus_generators(k, paths=paths).total
    n_tb = perturbed_generators(tb).total
    record(9, len(paths) == 1 and d < 1e-6 and n_torus == n_tb,
           f"T(2,3) and K(-3/1) curves at Hausdorff distance {d:.1e} (tol 1e-6), counts {n_torus} and {n_tb}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
