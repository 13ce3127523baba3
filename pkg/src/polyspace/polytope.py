"""Exact rational polytopes for length and diagonal data.

Everything here runs in fractions.Fraction arithmetic: side and facet
counts jump at walls, and floats cannot certify which side of a wall a
given length vector sits on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Degenerate, EmptyPolytope, NonGeneric
from .polygon import as_fraction, exact_lengths, wall_distance

__all__ = [
    "Halfspace", "RationalPolytope", "GCReport", "ClassificationReport",
    "QuadReport", "hypersimplex", "in_hypersimplex", "gc_membership",
    "diag_slice", "pentagon_polytope", "pentagon_generic", "count_sides",
    "classify_pentagon", "quad_interval", "dh_interval_equality",
    "hexagon_even_polytope", "even_step_polytope", "wall_distance",
    "PENTAGON_TABLE",
]

ZERO = Fraction(0)


@dataclass(frozen=True)
class Halfspace:
    """The inequality normal . x <= offset with rational coefficients."""

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        normal = tuple(as_fraction(c) for c in self.normal)
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", as_fraction(self.offset))

    def slack(self, point) -> Fraction:
        return self.offset - sum(n * x for n, x in zip(self.normal, point))

    def holds(self, point) -> bool:
        return self.slack(point) >= 0

    def canonical_boundary(self):
        """Scale-invariant key for the hyperplane normal . x = offset."""
        lead = next((c for c in self.normal if c != 0), None)
        if lead is None:
            return None
        return (tuple(c / lead for c in self.normal), self.offset / lead)


def _solve_square(rows, rhs):
    """Exact Gaussian elimination; returns None for singular systems."""
    n = len(rhs)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [c / inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [c - factor * d for c, d in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))


def _affinely_independent_count(points, dim):
    """Size of a largest affinely independent subset, capped at dim + 1."""
    if not points:
        return 0
    base = points[0]
    basis = []
    for p in points[1:]:
        vec = [x - y for x, y in zip(p, base)]
        # reduce against the current basis
        for b in basis:
            lead = next((i for i, c in enumerate(b) if c != 0))
            if vec[lead] != 0:
                f = vec[lead] / b[lead]
                vec = [c - f * d for c, d in zip(vec, b)]
        if any(c != 0 for c in vec):
            basis.append(vec)
            if len(basis) == dim:
                break
    return len(basis) + 1


@dataclass
class RationalPolytope:
    """An intersection of rational halfspaces with exact vertex data.

    Vertex enumeration is brute force over dim-subsets of the boundary
    hyperplanes and is only attempted for dim <= 3; membership testing
    works in any dimension.
    """

    variables: tuple[str, ...]
    halfspaces: tuple[Halfspace, ...]
    equalities: tuple[Halfspace, ...] = ()
    generic: bool | None = None
    _vertices: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        self.halfspaces = tuple(self.halfspaces)
        self.equalities = tuple(self.equalities)

    @property
    def dim(self) -> int:
        return len(self.variables)

    def contains(self, point) -> bool:
        point = tuple(as_fraction(x) for x in point)
        if len(point) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        return (all(h.holds(point) for h in self.halfspaces)
                and all(h.slack(point) == 0 for h in self.equalities))

    def min_slack(self, point) -> Fraction:
        point = tuple(as_fraction(x) for x in point)
        slacks = [h.slack(point) for h in self.halfspaces]
        slacks += [-abs(h.slack(point)) for h in self.equalities]
        return min(slacks) if slacks else ZERO

    def vertices(self) -> tuple:
        if self._vertices is not None:
            return self._vertices
        if self.equalities:
            raise ValueError("vertex enumeration expects substituted equalities")
        n = self.dim
        if n > 3:
            raise ValueError("vertex enumeration limited to dimension <= 3")
        if n == 0:
            ok = all(h.offset >= 0 for h in self.halfspaces)
            self._vertices = ((),) if ok else ()
            return self._vertices
        found = set()
        for combo in itertools.combinations(self.halfspaces, n):
            point = _solve_square([h.normal for h in combo],
                                  [h.offset for h in combo])
            if point is None:
                continue
            if all(h.holds(point) for h in self.halfspaces):
                found.add(point)
        self._vertices = tuple(sorted(found))
        return self._vertices

    def is_empty(self) -> bool:
        return len(self.vertices()) == 0

    def is_full_dimensional(self) -> bool:
        return _affinely_independent_count(self.vertices(), self.dim) == self.dim + 1

    def facet_count(self) -> int:
        """Number of (dim-1)-faces; collinear boundary pieces merge."""
        verts = self.vertices()
        if not verts:
            raise EmptyPolytope("no vertices")
        n = self.dim
        if n == 0:
            return 0
        faces = set()
        for h in self.halfspaces:
            on = [v for v in verts if h.slack(v) == 0]
            if _affinely_independent_count(on, n) >= n:
                faces.add(h.canonical_boundary())
        return len(faces)

    def interval(self) -> tuple[Fraction, Fraction]:
        if self.dim != 1:
            raise ValueError("interval() needs a 1-dimensional polytope")
        verts = [v[0] for v in self.vertices()]
        if not verts:
            raise EmptyPolytope("empty interval")
        return min(verts), max(verts)

    def to_json_dict(self) -> dict:
        doc = {
            "variables": list(self.variables),
            "halfspaces": [
                {"normal": [str(c) for c in h.normal], "offset": str(h.offset)}
                for h in self.halfspaces
            ],
        }
        if self.equalities:
            doc["equalities"] = [
                {"normal": [str(c) for c in h.normal], "offset": str(h.offset)}
                for h in self.equalities
            ]
        if self.dim <= 3 and not self.equalities:
            verts = self.vertices()
            doc["vertices"] = [[str(c) for c in v] for v in verts]
            doc["facets"] = self.facet_count() if verts else 0
        doc["generic"] = self.generic
        return doc


def hypersimplex(m: int) -> RationalPolytope:
    """{x in R^m : 0 <= x_i <= 1, sum x_i = 2}, in membership form."""
    if m < 3:
        raise ValueError("need m >= 3")
    halfspaces = []
    for i in range(m):
        e = [ZERO] * m
        e[i] = Fraction(1)
        halfspaces.append(Halfspace(tuple(-c for c in e), ZERO))
        halfspaces.append(Halfspace(tuple(e), Fraction(1)))
    total = Halfspace((Fraction(1),) * m, Fraction(2))
    return RationalPolytope(tuple(f"x{i+1}" for i in range(m)),
                            tuple(halfspaces), equalities=(total,))


def in_hypersimplex(alpha) -> bool:
    alpha = exact_lengths(alpha)
    return hypersimplex(len(alpha)).contains(alpha)


@dataclass(frozen=True)
class GCReport:
    """Outcome of the triangle-inequality membership test for (l, d)."""

    ok: bool
    slacks: tuple
    failures: tuple
    min_slack: Fraction
    perimeter_ok: bool | None = None


_TRIANGLE_NAMES = ("A", "B", "C")


def triangle_slacks(alpha, diag):
    """All 3m slacks at steps i = 0..m-1, with d_0 = d_m = 0 implied.

    At step i the three inequalities relate l_{i+1}, d_i and d_{i+1}:
      A: l_{i+1} <= d_i + d_{i+1}
      B: d_i <= l_{i+1} + d_{i+1}
      C: d_{i+1} <= l_{i+1} + d_i
    """
    m = len(alpha)
    if len(diag) != m:
        raise ValueError("need one diagonal entry per side (the last is 0)")
    d = (ZERO,) + tuple(diag)
    out = []
    for i in range(m):
        out.append((i, "A", d[i] + d[i + 1] - alpha[i]))
        out.append((i, "B", alpha[i] + d[i + 1] - d[i]))
        out.append((i, "C", alpha[i] + d[i] - d[i + 1]))
    return tuple(out)


def gc_membership(alpha, diag, require_perimeter: bool = True) -> GCReport:
    """Exact test that (l, d) satisfies every triangle inequality.

    ``diag`` has m entries d_1..d_m with d_m expected to be 0.  With
    ``require_perimeter`` the perimeter must equal 2 exactly.
    """
    alpha = exact_lengths(alpha)
    diag = tuple(as_fraction(x) for x in diag)
    slacks = triangle_slacks(alpha, diag)
    failures = tuple(s for s in slacks if s[2] < 0)
    if diag[-1] != 0:
        failures += ((len(alpha) - 1, "closure", -abs(diag[-1])),)
    per_ok = None
    if require_perimeter:
        per_ok = sum(alpha) == 2
    ok = not failures and per_ok is not False
    min_slack = min(s[2] for s in slacks)
    return GCReport(ok, slacks, failures, min_slack, per_ok)


def diag_slice(alpha) -> RationalPolytope:
    """Feasible region of the free diagonals d_2..d_{m-2} at fixed lengths.

    Scale-free: the lengths need not sum to 2.  Raises EmptyPolytope when
    the fixed data already violates a triangle inequality.
    """
    alpha = exact_lengths(alpha)
    m = len(alpha)
    if m < 3:
        raise ValueError("need m >= 3")
    n = m - 3
    # d_1 = alpha_1, d_{m-1} = alpha_m, d_0 = d_m = 0 are substituted;
    # d_{1+k} for k = 1..n are the free coordinates.
    fixed = {0: ZERO, 1: alpha[0], m - 1: alpha[m - 1], m: ZERO}

    def coord(j):
        """(coefficient row, constant) decomposition of d_j."""
        row = [ZERO] * n
        if j in fixed:
            return row, fixed[j]
        row[j - 2] = Fraction(1)
        return row, ZERO

    halfspaces = []
    constants_ok = True
    for i in range(m):
        ri, ci = coord(i)
        rj, cj = coord(i + 1)
        # rows written as normal . x <= offset
        rows = [
            ([-a - b for a, b in zip(ri, rj)], ci + cj - alpha[i]),  # A
            ([a - b for a, b in zip(ri, rj)], alpha[i] - ci + cj),   # B
            ([b - a for a, b in zip(ri, rj)], alpha[i] + ci - cj),   # C
        ]
        for normal, offset in rows:
            if any(c != 0 for c in normal):
                halfspaces.append(Halfspace(tuple(normal), offset))
            elif offset < 0:
                constants_ok = False
    if not constants_ok:
        raise EmptyPolytope("fixed length data violates a triangle inequality")
    names = tuple(f"d{k}" for k in range(2, m - 1))
    poly = RationalPolytope(names, tuple(halfspaces))
    if n <= 3 and poly.is_empty():
        raise EmptyPolytope("no diagonal data is compatible with these lengths")
    return poly


def _interval_pair(a, b) -> tuple[Fraction, Fraction]:
    return abs(a - b), a + b


def pentagon_polytope(alpha) -> RationalPolytope:
    """The planar region for (d_2, d_3): a box cut by a three-line wedge."""
    alpha = exact_lengths(alpha)
    if len(alpha) != 5:
        raise ValueError("need exactly 5 lengths")
    a1, a2, a3, a4, a5 = alpha
    one = Fraction(1)
    x_lo, x_hi = _interval_pair(a1, a2)
    y_lo, y_hi = _interval_pair(a5, a4)
    halfspaces = (
        Halfspace((-one, ZERO), -x_lo),
        Halfspace((one, ZERO), x_hi),
        Halfspace((ZERO, -one), -y_lo),
        Halfspace((ZERO, one), y_hi),
        Halfspace((-one, -one), -a3),   # x + y >= a3
        Halfspace((one, -one), a3),     # x - y <= a3
        Halfspace((-one, one), a3),     # y - x <= a3
        Halfspace((-one, ZERO), ZERO),  # x >= 0
        Halfspace((ZERO, -one), ZERO),  # y >= 0
    )
    poly = RationalPolytope(("d2", "d3"), halfspaces,
                            generic=pentagon_generic(alpha))
    if poly.is_empty():
        raise EmptyPolytope("no pentagon has these side lengths")
    return poly


def pentagon_generic(alpha) -> bool:
    """No corner of the (d_2, d_3) box lies on the three wedge lines."""
    alpha = exact_lengths(alpha)
    if len(alpha) != 5:
        raise ValueError("need exactly 5 lengths")
    a1, a2, a3, a4, a5 = alpha
    xs = _interval_pair(a1, a2)
    ys = _interval_pair(a5, a4)
    for x in xs:
        for y in ys:
            if x + y == a3 or y - x == a3 or x - y == a3:
                return False
    return True


def count_sides(poly: RationalPolytope) -> int:
    """Number of maximal edges of a full-dimensional planar polytope."""
    if poly.dim != 2:
        raise ValueError("count_sides needs a planar polytope")
    if not poly.vertices():
        raise EmptyPolytope("no vertices")
    if not poly.is_full_dimensional():
        raise Degenerate("polytope has zero area")
    return poly.facet_count()


# sides -> (key, 4-manifold, planar quotient, planar rotation quotient)
PENTAGON_TABLE = {
    3: ("3", "CP^2", "RP^2", "S^2"),
    5: ("5", "(S^2 x S^2) # CP^2-bar", "T^2 # RP^2", "Sigma_2"),
    6: ("6", "(S^2 x S^2) # 2 CP^2-bar", "T^2 # 2 RP^2", "Sigma_3"),
    7: ("7", "(S^2 x S^2) # 3 CP^2-bar", "T^2 # 3 RP^2", "Sigma_4"),
}
PENTAGON_TABLE_4A = ("4a", "CP^2 # CP^2-bar", "Klein bottle", "T^2")
PENTAGON_TABLE_4B = ("4b", "S^2 x S^2", "T^2", "T^2 u T^2")


@dataclass(frozen=True)
class ClassificationReport:
    m: int
    generic: bool
    sides: int
    row: str
    orientable: bool
    label_space: str
    label_planar: str
    label_planar_rotation: str
    euler_planar: int

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "generic": self.generic,
            "sides": self.sides,
            "row": self.row,
            "orientable": self.orientable,
            "labels": {
                "spatial_rotation": self.label_space,
                "planar": self.label_planar,
                "planar_rotation": self.label_planar_rotation,
            },
            "euler_planar": self.euler_planar,
        }


def _box_in_wedge(alpha) -> bool:
    """All four box corners satisfy the wedge inequalities."""
    a1, a2, a3, a4, a5 = alpha
    for x in _interval_pair(a1, a2):
        for y in _interval_pair(a5, a4):
            if x + y < a3 or y - x > a3 or x - y > a3:
                return False
    return True


def classify_pentagon(alpha) -> ClassificationReport:
    alpha = exact_lengths(alpha)
    if not pentagon_generic(alpha):
        raise NonGeneric("a box corner lies on a wedge line")
    poly = pentagon_polytope(alpha)
    sides = count_sides(poly)
    orientable = _box_in_wedge(alpha)
    if sides == 4:
        row = PENTAGON_TABLE_4B if orientable else PENTAGON_TABLE_4A
    else:
        row = PENTAGON_TABLE[sides]
    key, space, planar, planar_rot = row
    return ClassificationReport(
        m=5, generic=True, sides=sides, row=key,
        orientable=orientable if sides == 4 else False,
        label_space=space, label_planar=planar,
        label_planar_rotation=planar_rot, euler_planar=4 - sides,
    )


@dataclass(frozen=True)
class QuadReport:
    """Diagonal range of a quadrilateral with its planar-moduli label."""

    interval: tuple[Fraction, Fraction]
    i1: tuple[Fraction, Fraction]
    i2: tuple[Fraction, Fraction]
    label_planar: str
    generic: bool
    diagonal_can_vanish: bool

    def to_json_dict(self) -> dict:
        return {
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "i1": [str(c) for c in self.i1],
            "i2": [str(c) for c in self.i2],
            "label_planar": self.label_planar,
            "generic": self.generic,
            "diagonal_can_vanish": self.diagonal_can_vanish,
        }


def quad_interval(alpha) -> QuadReport:
    """Range of the middle diagonal of a quadrilateral: I_1 meet I_2."""
    alpha = exact_lengths(alpha)
    if len(alpha) != 4:
        raise ValueError("need exactly 4 lengths")
    a1, a2, a3, a4 = alpha
    i1 = _interval_pair(a1, a2)
    i2 = _interval_pair(a4, a3)
    lo, hi = max(i1[0], i2[0]), min(i1[1], i2[1])
    if lo > hi:
        raise EmptyPolytope("no quadrilateral has these side lengths")
    nested = ((i1[0] >= i2[0] and i1[1] <= i2[1])
              or (i2[0] >= i1[0] and i2[1] <= i1[1]))
    label = "S^1 u S^1" if nested else "S^1"
    generic = not ({i1[0], i1[1]} & {i2[0], i2[1]})
    return QuadReport((lo, hi), i1, i2, label, generic,
                      diagonal_can_vanish=(lo == 0))


def dh_interval_equality(alpha) -> tuple[Fraction, Fraction]:
    """Lengths of the variation intervals of the two diagonals; equal."""
    alpha = exact_lengths(alpha)
    if len(alpha) != 4:
        raise ValueError("need exactly 4 lengths")
    a1, a2, a3, a4 = alpha

    def overlap(p, q):
        lo, hi = max(p[0], q[0]), min(p[1], q[1])
        if lo > hi:
            raise EmptyPolytope("empty variation interval")
        return hi - lo

    len1 = overlap(_interval_pair(a1, a2), _interval_pair(a3, a4))
    len2 = overlap(_interval_pair(a2, a3), _interval_pair(a4, a1))
    return len1, len2


def _cone_halfspaces(n: int) -> list[Halfspace]:
    """x_i <= sum of the others, x >= 0, in n variables."""
    out = []
    one = Fraction(1)
    for i in range(n):
        normal = [-one] * n
        normal[i] = one
        out.append(Halfspace(tuple(normal), ZERO))
        axis = [ZERO] * n
        axis[i] = -one
        out.append(Halfspace(tuple(axis), ZERO))
    return out


def _even_box(alpha) -> list[tuple[Fraction, Fraction]]:
    return [_interval_pair(alpha[2 * i], alpha[2 * i + 1])
            for i in range(len(alpha) // 2)]


def hexagon_even_polytope(alpha) -> RationalPolytope:
    """Even-step image of a hexagon: a box cut by the triangle cone."""
    alpha = exact_lengths(alpha)
    if len(alpha) != 6:
        raise ValueError("need exactly 6 lengths")
    return even_step_polytope(alpha)


def _box_corner_generic(box) -> bool:
    """No box corner satisfies a cone equality x_i = sum of the others."""
    n = len(box)
    for corner in itertools.product(*box):
        total = sum(corner)
        for i in range(n):
            if corner[i] == total - corner[i]:
                return False
    return True


def even_step_polytope(alpha) -> RationalPolytope:
    """Feasible even-step side lengths: a box cut by the simplex cone.

    For odd m the last coordinate is pinned to alpha_m and substituted;
    for m = 4 the cone degenerates to an equality and the result is the
    one-dimensional diagonal interval.
    """
    alpha = exact_lengths(alpha)
    m = len(alpha)
    if not 4 <= m <= 6:
        raise ValueError("vertex enumeration supported for 4 <= m <= 6")
    box = _even_box(alpha)
    if m == 4:
        # the cone forces x1 = x2; the polytope is the diagonal interval
        rep = quad_interval(alpha)
        lo, hi = rep.interval
        one = Fraction(1)
        poly = RationalPolytope(
            ("x1",),
            (Halfspace((-one,), -lo), Halfspace((one,), hi)),
            generic=rep.generic,
        )
        return poly
    n = (m + 1) // 2
    fixed_last = alpha[-1] if m % 2 == 1 else None
    free = n - 1 if fixed_last is not None else n
    halfspaces = []
    one = Fraction(1)
    for i, (lo, hi) in enumerate(box):
        axis = [ZERO] * free
        axis[i] = one
        halfspaces.append(Halfspace(tuple(-c for c in axis), -lo))
        halfspaces.append(Halfspace(tuple(axis), hi))
    for h in _cone_halfspaces(n):
        if fixed_last is None:
            halfspaces.append(h)
        else:
            normal = h.normal[:free]
            offset = h.offset - h.normal[-1] * fixed_last
            if any(c != 0 for c in normal):
                halfspaces.append(Halfspace(normal, offset))
            elif offset < 0:
                raise EmptyPolytope("fixed last coordinate violates the cone")
    corner_box = box + ([(fixed_last, fixed_last)] if fixed_last is not None
                        else [])
    generic = _box_corner_generic(corner_box)
    names = tuple(f"x{i+1}" for i in range(free))
    poly = RationalPolytope(names, tuple(halfspaces), generic=generic)
    if poly.is_empty():
        raise EmptyPolytope("no polygon has these even-step lengths")
    return poly
