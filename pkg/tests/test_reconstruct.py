"""Vertex-by-vertex reconstruction, the planar section and sampling."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from polyspace import polygon as pg, polytope as pt, reconstruct as rec
from polyspace.errors import (EmptyPolytope, NotInHypersimplex,
                              TriangleViolation)
from polyspace.reconstruct import LDPoint


def test_square_round_trip():
    ld = LDPoint((1, 1, 1, 1), (math.sqrt(2),))
    p = rec.reconstruct(ld, 2)
    assert p.dim == 2
    assert np.abs(pg.side_lengths(p) - 1.0).max() < 1e-12
    assert abs(pg.diagonals(p)[1] - math.sqrt(2)) < 1e-12
    # it really is a square: consecutive edges orthogonal
    assert abs(np.dot(p.edges[0], p.edges[1])) < 1e-12


def test_right_triangle():
    ld = LDPoint((3, 4, 5), ())
    p = rec.reconstruct(ld, 2)
    assert np.allclose(pg.diagonals(p), [3, 5, 0])
    assert abs(np.dot(p.edges[0], p.edges[1])) < 1e-12


def test_three_dimensional_output():
    ld = LDPoint((1, 1, 1, 1, 1), (1.3, 1.1))
    p = rec.reconstruct(ld, 3)
    assert p.dim == 3
    assert np.abs(p.edges[:, 2]).max() == 0.0
    assert pg.closure_defect(p) < 1e-12


def test_boundary_collinear_step():
    # d3 = d2 + alpha3: the two circles touch instead of crossing
    ld = LDPoint((1, 1, 1, 1, 2), (2.0, 3.0))
    p = rec.reconstruct(ld, 2)
    assert np.abs(pg.diagonals(p)[:4] - [1, 2, 3, 2]).max() < 1e-9


def test_degenerate_zero_diagonal():
    # d2 = 0 is allowed on the boundary: the next vertex restarts anywhere
    ld = LDPoint((1, 1, 1, 1), (0.0,))
    p = rec.reconstruct(ld, 2)
    assert np.abs(pg.side_lengths(p) - 1.0).max() < 1e-12


def test_violations_report_first_index():
    with pytest.raises(TriangleViolation) as err:
        rec.reconstruct(LDPoint((1, 1, 3), ()), 2)
    assert (err.value.index, err.value.inequality) == (1, "C")
    with pytest.raises(TriangleViolation) as err:
        rec.reconstruct(LDPoint((1, 1, 1, 1), (3.0,)), 2)
    assert (err.value.index, err.value.inequality) == (1, "C")
    with pytest.raises(TriangleViolation) as err:
        rec.reconstruct(LDPoint((1, 5, 1, 1), (1.0,)), 2)
    assert (err.value.index, err.value.inequality) == (1, "A")


def test_round_trip_random(rng):
    for _ in range(50):
        m = int(rng.integers(4, 8))
        alpha = tuple(F(int(n), 7) for n in rng.integers(1, 20, size=m))
        try:
            ld = rec.sample_ld(alpha, rng)
        except EmptyPolytope:
            continue
        for k in (2, 3):
            p = rec.reconstruct(ld, k)
            assert np.abs(pg.side_lengths(p) - ld.alpha).max() < 1e-9
            d = pg.diagonals(p)
            assert np.abs(d[1:m - 2] - ld.delta).max() < 1e-9


def test_fiber_sample():
    ld = LDPoint((1, 1, 1, 1, 1), (1.2, 1.2))
    base = rec.fiber_sample(ld, (0.0, 0.0))
    assert np.array_equal(base.edges, rec.reconstruct(ld, 3).edges)
    periodic = rec.fiber_sample(ld, (2 * math.pi, 2 * math.pi))
    assert np.abs(periodic.edges - base.edges).max() < 1e-9
    twisted = rec.fiber_sample(ld, (0.9, -0.4))
    assert np.abs(pg.side_lengths(twisted) - 1.0).max() < 1e-10
    assert np.abs(pg.diagonals(twisted) - pg.diagonals(base)).max() < 1e-10


def test_fiber_points_differ_beyond_rotation():
    ld = LDPoint((1, 1, 1, 1, 1), (1.2, 1.2))
    a = rec.fiber_sample(ld, (0.0, 0.0))
    b = rec.fiber_sample(ld, (1.0, 0.5))
    # rotation-invariant signature: the Gram matrix of the edge vectors
    ga = a.edges @ a.edges.T
    gb = b.edges @ b.edges.T
    assert np.abs(ga - gb).max() > 1e-3


def test_section_sigma_equilateral():
    p = rec.section_sigma((F(2, 3), F(2, 3), F(2, 3)))
    assert np.abs(pg.side_lengths(p) - 2.0 / 3.0).max() < 1e-12
    assert pg.closure_defect(p) < 1e-12


def test_section_sigma_boundary():
    p = rec.section_sigma((1, 1, 0, 0))
    assert np.abs(pg.side_lengths(p) - [1, 1, 0, 0]).max() < 1e-12
    assert pg.is_lined(p)


def test_section_sigma_random(rng):
    for _ in range(100):
        m = int(rng.integers(3, 9))
        nums = [int(n) for n in rng.integers(1, 30, size=m)]
        total = sum(nums)
        alpha = tuple(F(2 * n, total) for n in nums)
        if any(a > 1 for a in alpha):
            continue
        p = rec.section_sigma(alpha)
        assert np.abs(pg.side_lengths(p)
                      - [float(a) for a in alpha]).max() < 1e-12
        assert pg.closure_defect(p) < 1e-11


def test_section_sigma_rejects_outside():
    with pytest.raises(NotInHypersimplex):
        rec.section_sigma((1, 1, 1))
    with pytest.raises(NotInHypersimplex):
        rec.section_sigma((F(3, 2), F(1, 4), F(1, 4)))


def test_sample_moduli_deterministic():
    a = rec.sample_moduli((1, 1, 1, 1, 1), 3, 5, seed=42)
    b = rec.sample_moduli((1, 1, 1, 1, 1), 3, 5, seed=42)
    for p, q in zip(a, b):
        assert np.array_equal(p.edges, q.edges)


def test_sample_moduli_pass_membership():
    for k in (2, 3):
        for p in rec.sample_moduli((2, 1, 3, 1, 2), k, 20, seed=1):
            assert np.abs(pg.side_lengths(p) - [2, 1, 3, 1, 2]).max() < 1e-9
            slacks = pt.triangle_slacks(
                tuple(F(x) for x in (2, 1, 3, 1, 2)),
                [F(round(float(d) * 10**9), 10**9)
                 for d in pg.diagonals(p)])
            assert min(s for _, _, s in slacks) > -F(1, 10**6)


def test_sample_moduli_planar_flips_change_shape():
    polys = rec.sample_moduli((1, 1, 1, 1, 1), 2, 30, seed=3)
    assert all(p.dim == 2 for p in polys)
    ys = {round(float(p.edges[0, 1]), 6) for p in polys}
    assert len(ys) > 1


def test_sample_moduli_empty():
    with pytest.raises(EmptyPolytope):
        rec.sample_moduli((1, 1, 10, 1), 2, 5, seed=0)


def test_quad_sampling_covers_interval():
    alpha = (1, 2, 3, 4)
    lo, hi = pt.quad_interval(alpha).interval
    samples = rec.sample_moduli(alpha, 2, 2000, seed=9)
    d2 = [pg.diagonals(p)[1] for p in samples]
    assert min(d2) < float(lo) + 1e-2
    assert max(d2) > float(hi) - 1e-2
