"""Bending flows on polygon edges and the sphere-product symplectic data.

Bending rotates a consecutive block of edges about the chord closing it.
The same motion arises as the Hamiltonian flow of the chord length for
the product symplectic form on spheres, which we verify by integrating
that flow numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import quat
from .errors import (DegeneratePair, LeftProdigalRegion, NotTangent,
                     ZeroDiagonal)
from .polygon import Polygon, perimeter, side_lengths

_TANGENT_TOL = 1e-9
_FD_STEP = 1e-6
STEPS_PER_TURN = 2000


def rodrigues(axis: np.ndarray, theta: float) -> np.ndarray:
    """Rotation matrix about the unit vector ``axis`` by ``theta`` radians."""
    x, y, z = axis
    K = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    return np.eye(3) + math.sin(theta) * K + (1.0 - math.cos(theta)) * (K @ K)


@dataclass(frozen=True)
class DiagonalRange:
    """A consecutive block of edges p..q (1-based, inclusive)."""

    p: int
    q: int

    def __post_init__(self):
        if not 1 <= self.p <= self.q:
            raise ValueError("need 1 <= p <= q")


def bend_range(poly: Polygon, r: DiagonalRange, theta: float) -> Polygon:
    """Rotate edges p..q about their sum, right-hand rule."""
    if r.q > poly.m or (r.p == 1 and r.q == poly.m):
        raise ValueError("block must be a proper subset of the edges")
    lo, hi = r.p - 1, r.q
    axis = poly.edges[lo:hi].sum(axis=0)
    norm = np.linalg.norm(axis)
    if norm <= 1e-9 * perimeter(poly):
        raise ZeroDiagonal((r.p, r.q))
    rot = rodrigues(axis / norm, theta)
    edges = poly.edges.copy()
    edges[lo:hi] = edges[lo:hi] @ rot.T
    return Polygon(3, edges)


def bend(poly: Polygon, i: int, theta: float) -> Polygon:
    """Rotate the first i edges about the i-th diagonal."""
    if not 1 <= i <= poly.m - 1:
        raise ValueError(f"diagonal index must be in 1..{poly.m - 1}")
    try:
        return bend_range(poly, DiagonalRange(1, i), theta)
    except ZeroDiagonal:
        raise ZeroDiagonal(i) from None


def commute_defect(poly: Polygon, r1: DiagonalRange, r2: DiagonalRange,
                   t1: float, t2: float) -> float:
    """Max edge deviation between the two orders of applying the bends."""
    first = bend_range(bend_range(poly, r1, t1), r2, t2)
    second = bend_range(bend_range(poly, r2, t2), r1, t1)
    return float(np.abs(first.edges - second.edges).max())


def _check_tangent(x: np.ndarray, *vecs) -> float:
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise NotTangent("base point is the origin")
    for v in vecs:
        if abs(float(np.dot(x, v))) > _TANGENT_TOL * max(1.0, r * np.linalg.norm(v)):
            raise NotTangent("vector is not tangent to the sphere at x")
    return r


def km_form(x, u, v) -> float:
    """Symplectic pairing <x/r^2, u x v> on the radius-r sphere."""
    x, u, v = (np.asarray(w, dtype=float) for w in (x, u, v))
    r = _check_tangent(x, u, v)
    return float(np.dot(x, np.cross(u, v))) / (r * r)


def km_complex(x, v) -> np.ndarray:
    """Rotation by a quarter turn in the tangent plane: v -> (x x v)/r."""
    x, v = np.asarray(x, dtype=float), np.asarray(v, dtype=float)
    r = _check_tangent(x, v)
    return np.cross(x, v) / r


def km_metric(x, u, v) -> complex:
    """Hermitian metric (1/r)<u,v> - (i/r^2)<x, u x v>."""
    x, u, v = (np.asarray(w, dtype=float) for w in (x, u, v))
    r = _check_tangent(x, u, v)
    return complex(np.dot(u, v) / r, -np.dot(x, np.cross(u, v)) / (r * r))


@dataclass(frozen=True)
class SphereProductPoint:
    """A tuple of points x_i on spheres of radii alpha_i."""

    points: np.ndarray = field(repr=False)
    radii: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        radii = np.asarray(self.radii, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or radii.shape != (pts.shape[0],):
            raise ValueError("need (m, 3) points and m radii")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def from_polygon(cls, p: Polygon) -> "SphereProductPoint":
        if p.dim != 3:
            p = p.embedded(3)
        return cls(p.edges.copy(), side_lengths(p))

    def to_polygon(self) -> Polygon:
        return Polygon(3, self.points.copy())

    def radial_defect(self) -> float:
        return float(np.abs(np.linalg.norm(self.points, axis=1)
                            - self.radii).max())


def so3_moment(w: SphereProductPoint) -> np.ndarray:
    """Sum of the factor points; zero exactly on closed polygons."""
    return w.points.sum(axis=0)


def diagonal_hamiltonian(i: int):
    """H(w) = |x_1 + ... + x_i| as a fast plain-float callable.

    Accepts a nested sequence of rows; the explicit loop keeps the
    central-difference gradient cheap.
    """

    def H(points) -> float:
        s0 = s1 = s2 = 0.0
        for r in range(i):
            row = points[r]
            s0 += row[0]
            s1 += row[1]
            s2 += row[2]
        return math.sqrt(s0 * s0 + s1 * s1 + s2 * s2)

    return H


def _grad(H, points: np.ndarray) -> np.ndarray:
    """Central-difference Euclidean gradient of H at the given tuple.

    H is evaluated on plain nested lists: the flow spends nearly all its
    time here and python-float access is several times cheaper.
    """
    pts = points.tolist()
    g = np.zeros_like(points)
    inv = 1.0 / (2.0 * _FD_STEP)
    for r, row in enumerate(pts):
        for c in range(3):
            saved = row[c]
            row[c] = saved + _FD_STEP
            hp = H(pts)
            row[c] = saved - _FD_STEP
            hm = H(pts)
            row[c] = saved
            g[r, c] = (hp - hm) * inv
    return g


def _field(H, points: np.ndarray) -> np.ndarray:
    # For the form <x/r^2, u x v> the Hamiltonian field of H is
    # X = -r n x grad H per factor, with n = x/|x|, i.e. -x x grad H.
    return -np.cross(points, _grad(H, points))


def hamiltonian_flow(w: SphereProductPoint, H, t: float,
                     steps: int | None = None) -> SphereProductPoint:
    """Fixed-step RK4 for the Hamiltonian field of H, staying on the spheres."""
    if steps is None:
        steps = max(1, math.ceil(STEPS_PER_TURN * abs(t) / (2.0 * math.pi)))
    points = w.points.copy()
    radii = w.radii
    h = t / steps
    for _ in range(steps):
        k1 = _field(H, points)
        k2 = _field(H, points + 0.5 * h * k1)
        k3 = _field(H, points + 0.5 * h * k2)
        k4 = _field(H, points + h * k3)
        points = points + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(points)):
            raise LeftProdigalRegion("flow left the domain of definition")
        norms = np.linalg.norm(points, axis=1)
        if np.any(norms < 1e-12):
            raise LeftProdigalRegion("a factor point collapsed to the origin")
        points = points * (radii / norms)[:, None]
    return SphereProductPoint(points, radii.copy())


@lru_cache(maxsize=1)
def bending_flow_sign() -> int:
    """Measured once: the sign s with flow of d_i = bend(+s*t)."""
    edges = np.array([
        [1.0, 0.0, 0.0],
        [0.3, 0.9, 0.1],
        [-0.5, 0.2, 0.6],
        [-0.4, -0.8, -0.3],
    ])
    edges = np.vstack([edges, -edges.sum(axis=0)])
    p = Polygon(3, edges)
    w = SphereProductPoint.from_polygon(p)
    t = 0.5
    flowed = hamiltonian_flow(w, diagonal_hamiltonian(2), t).to_polygon()
    dev_plus = np.abs(bend(p, 2, t).edges - flowed.edges).max()
    dev_minus = np.abs(bend(p, 2, -t).edges - flowed.edges).max()
    return 1 if dev_plus < dev_minus else -1


def horizontal_tangent(u: complex, v: complex, z: complex) -> np.ndarray:
    """Tangent z * (-conj(v), conj(u)) at row (u, v), orthogonal to i(u, v)."""
    w = np.array([-np.conj(v), np.conj(u)]) * z
    return w


def _hopf_differential(row: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    plus = quat.hopf_complex(row[0] + _FD_STEP * tangent[0],
                             row[1] + _FD_STEP * tangent[1])
    minus = quat.hopf_complex(row[0] - _FD_STEP * tangent[0],
                              row[1] - _FD_STEP * tangent[1])
    return (plus - minus) / (2.0 * _FD_STEP)


def _flat_form(u: np.ndarray, v: np.ndarray) -> float:
    # Flat Kaehler form on C^2: -Im<u, v> with <u, v> = sum u_i conj(v_i).
    return float(-np.imag(np.sum(u * v.conj())))


def kahler_probe_terms(row: np.ndarray, u: np.ndarray,
                       v: np.ndarray) -> tuple[float, float]:
    """(numerator, denominator) of the pushforward/flat form ratio."""
    row = np.asarray(row, dtype=complex)
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    den = _flat_form(u, v)
    if abs(den) < 1e-9:
        raise DegeneratePair("flat form vanishes on the probe pair")
    x = quat.hopf_complex(row[0], row[1])
    tu = _hopf_differential(row, u)
    tv = _hopf_differential(row, v)
    num = km_form(x, tu - np.dot(tu, x) * x / (x @ x),
                  tv - np.dot(tv, x) * x / (x @ x))
    return num, den


def kahler_factor_probe(row, u, v) -> float:
    num, den = kahler_probe_terms(np.asarray(row, dtype=complex),
                                  np.asarray(u, dtype=complex),
                                  np.asarray(v, dtype=complex))
    return num / den
