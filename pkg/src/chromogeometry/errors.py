"""Exception hierarchy for geometric constructions.

Field-level errors (FieldMismatch, DivisionByZero, ...) live in
:mod:`chromogeometry.field`.
"""


class GeometryError(Exception):
    """A construction has no answer for the given input."""


class CoincidentPoints(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class NullLine(GeometryError):
    """The line is null in the given color, so altitudes from it degenerate."""

    def __init__(self, color, line, message: str | None = None):
        super().__init__(message or f"{line} is null in {color.value} geometry")
        self.color = color
        self.line = line


class NullDirectrix(NullLine):
    pass


class NullAltitude(NullLine):
    pass


class NullTangent(NullLine):
    pass


class UndefinedSpread(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class ZeroQuadrance(GeometryError):
    pass


class DegenerateConic(GeometryError):
    pass


class NotAConic(GeometryError):
    """All quadratic coefficients vanish."""


class PolarUndefined(GeometryError):
    pass


class NotOnConic(GeometryError):
    pass


class SingularPoint(GeometryError):
    pass


class LineOnConic(GeometryError):
    pass


class FocusOnDirectrix(GeometryError):
    pass


class CoincidentFoci(GeometryError):
    pass


class NoSuchTangent(GeometryError):
    pass


class NoDiagonals(GeometryError):
    pass


class NotAParabola(GeometryError):
    pass


class InconsistentPair(GeometryError):
    pass


class VerificationFailed(GeometryError):
    """An internal self-check of a construction did not hold."""


class ParseError(ValueError):
    """Input (a scene or a serialized configuration) does not follow its schema."""


class UnknownReference(ParseError):
    pass
