"""Polygon data model: closure, lengths, diagonals, strata and predicates.

A polygon is an ordered list of edge vectors in R^k summing to zero; all
moduli-space functionals (side lengths, diagonal lengths, strata, the
even-step map) live here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionOne, TooManySides, ZeroPolygon

MAX_BRUTE_FORCE_SIDES = 24


def as_fraction(value) -> Fraction:
    """Exact conversion accepting int, Fraction and decimal/fraction strings.

    Floats are rejected: wall membership is a codimension-one exact
    condition and a float cannot certify it.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational expected, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def exact_lengths(alpha) -> tuple[Fraction, ...]:
    if isinstance(alpha, SideLengths):
        return alpha.entries
    return tuple(as_fraction(a) for a in alpha)


@dataclass(frozen=True)
class SideLengths:
    """Exact side-length vector, optionally normalized to perimeter 2."""

    entries: tuple[Fraction, ...]
    normalized: bool = False

    def __post_init__(self):
        entries = tuple(as_fraction(a) for a in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(a < 0 for a in entries):
            raise ValueError("side lengths must be nonnegative")
        if self.normalized and sum(entries) != 2:
            raise ValueError("normalized side lengths must sum to 2 exactly")

    @classmethod
    def parse(cls, values, normalize: bool = False) -> "SideLengths":
        entries = tuple(as_fraction(v) for v in values)
        if normalize:
            total = sum(entries)
            if total == 0:
                raise ZeroPolygon("cannot normalize zero side lengths")
            entries = tuple(2 * a / total for a in entries)
        return cls(entries, normalized=normalize)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class Polygon:
    """Closed polygonal path: ``edges`` is an (m, dim) array of edge vectors."""

    dim: int
    edges: np.ndarray = field(repr=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if edges.ndim != 2 or edges.shape[1] != self.dim:
            raise ValueError(f"edges must have shape (m, {self.dim})")
        if edges.shape[0] < 2:
            raise ValueError("a polygon needs at least 2 edges")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return self.edges.shape[0]

    def vertices(self) -> np.ndarray:
        """Partial sums v_0 = 0, v_1, ..., v_m (shape (m+1, dim))."""
        return np.vstack([np.zeros(self.dim), np.cumsum(self.edges, axis=0)])

    def embedded(self, dim: int = 3) -> "Polygon":
        """The same polygon with zero-padded coordinates in R^dim."""
        if dim < self.dim:
            raise ValueError("cannot embed into fewer dimensions")
        padded = np.zeros((self.m, dim))
        padded[:, : self.dim] = self.edges
        return Polygon(dim, padded)


def closure_defect(p: Polygon) -> float:
    return float(np.linalg.norm(p.edges.sum(axis=0)))


def perimeter(p: Polygon) -> float:
    return float(np.linalg.norm(p.edges, axis=1).sum())


def normalize(p: Polygon) -> Polygon:
    """Scale to the perimeter-2 representative on the sphere S(F)."""
    per = perimeter(p)
    if per == 0.0:
        raise ZeroPolygon("the zero polygon has no normalized representative")
    return Polygon(p.dim, p.edges * (2.0 / per))


def side_lengths(p: Polygon) -> np.ndarray:
    return np.linalg.norm(p.edges, axis=1)


def diagonals(p: Polygon) -> np.ndarray:
    """d_i = |rho(1) + ... + rho(i)| for i = 1..m; d_m is the closure defect."""
    return np.linalg.norm(np.cumsum(p.edges, axis=0), axis=1)


def _zero_edge_tol(p: Polygon) -> float:
    return max(1e-12, 1e-9 * perimeter(p))


def stratum_index(p: Polygon) -> int:
    """m minus the number of zero edges: the smallest j with p in E_j."""
    tol = _zero_edge_tol(p)
    return int(p.m - np.count_nonzero(side_lengths(p) < tol))


def is_proper(p: Polygon) -> bool:
    return stratum_index(p) == p.m


def is_lined(p: Polygon) -> bool:
    """True if all edges span a line (or less)."""
    sv = np.linalg.svd(p.edges.T, compute_uv=False)
    if len(sv) < 2:
        return True
    return bool(sv[1] < 1e-9 * max(perimeter(p), 1e-300))


def is_prodigal(p: Polygon) -> bool:
    """No diagonal returns to the origin prematurely."""
    d = diagonals(p)[: p.m - 1]
    return bool(np.all(d > 1e-9 * perimeter(p)))


def reflect(p: Polygon, axis: int = -1) -> Polygon:
    """Orthogonal reflection negating one coordinate (the last by default)."""
    if p.dim < 2:
        raise DimensionOne("reflection is the identity on P(m,1); refusing")
    edges = p.edges.copy()
    edges[:, axis] = -edges[:, axis]
    return Polygon(p.dim, edges)


def even_step(p: Polygon) -> Polygon:
    """Replace consecutive edge pairs by their sums, halving the polygon.

    For odd m the last new edge is rho(m) itself.
    """
    if p.m < 4:
        raise ValueError("even_step needs at least 4 edges")
    pairs = [p.edges[2 * i] + p.edges[2 * i + 1] for i in range(p.m // 2)]
    if p.m % 2 == 1:
        pairs.append(p.edges[-1].copy())
    return Polygon(p.dim, np.array(pairs))


def even_diagonals(p: Polygon) -> np.ndarray:
    return side_lengths(even_step(p))


def _signed_sums(alpha: tuple[Fraction, ...]):
    """All sign vectors with first sign +1 (one representative per +- pair)."""
    m = len(alpha)
    if m > MAX_BRUTE_FORCE_SIDES:
        raise TooManySides(f"brute force limited to m <= {MAX_BRUTE_FORCE_SIDES}")
    for rest in itertools.product((1, -1), repeat=m - 1):
        eps = (1,) + rest
        yield eps, sum(e * a for e, a in zip(eps, alpha))


def is_generic_lengths(alpha) -> bool:
    """True iff no signed combination of the side lengths vanishes."""
    alpha = exact_lengths(alpha)
    return all(total != 0 for _, total in _signed_sums(alpha))


def enumerate_lined(alpha) -> list[tuple[int, ...]]:
    """Sign vectors with vanishing signed sum, one per antipodal pair."""
    alpha = exact_lengths(alpha)
    return [eps for eps, total in _signed_sums(alpha) if total == 0]


def wall_distance(alpha) -> Fraction:
    """Exact distance min |sum eps_i alpha_i| to the nearest inner wall."""
    alpha = exact_lengths(alpha)
    return min(abs(total) for _, total in _signed_sums(alpha))


def random_rotation(rng, dim: int = 3) -> np.ndarray:
    """Haar-ish random rotation matrix, for invariance tests."""
    a = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def rotated(p: Polygon, rot: np.ndarray) -> Polygon:
    return Polygon(p.dim, p.edges @ np.asarray(rot).T)
