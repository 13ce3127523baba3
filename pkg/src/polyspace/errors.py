"""Exception types shared across the package."""


class PolyspaceError(Exception):
    """Base class for all polyspace errors."""


class ZeroPolygon(PolyspaceError):
    pass


class DimensionOne(PolyspaceError):
    pass


class TooManySides(PolyspaceError):
    pass


class NonUnitary(PolyspaceError):
    pass


class DependentColumns(PolyspaceError):
    pass


class NotNormalized(PolyspaceError):
    pass


class NotClosed(PolyspaceError):
    pass


class NotHermitian(PolyspaceError):
    pass


class NotTangent(PolyspaceError):
    pass


class LeftProdigalRegion(PolyspaceError):
    pass


class DegeneratePair(PolyspaceError):
    pass


class EmptyPolytope(PolyspaceError):
    pass


class NonGeneric(PolyspaceError):
    pass


class Degenerate(PolyspaceError):
    pass


class NotInHypersimplex(PolyspaceError):
    pass


class ZeroDiagonal(PolyspaceError):
    """Raised when a bending axis has (numerically) zero length."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"diagonal {index} has zero length; no bending axis")


class TriangleViolation(PolyspaceError):
    """A length/diagonal pair violates one of the triangle inequalities.

    ``index`` is the step i (0-based over i = 0..m-1) of the first violated
    inequality; ``inequality`` names which of the three it is.
    """

    def __init__(self, index, inequality, slack):
        self.index = index
        self.inequality = inequality
        self.slack = slack
        super().__init__(
            f"triangle inequality {inequality!r} violated at step {index} "
            f"(slack {slack})"
        )
