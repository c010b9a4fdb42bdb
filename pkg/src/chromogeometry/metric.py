"""The blue, red and green metrics on the affine plane over a field.

For a vector v = (a, b):

=======  ============  ===================  =================
color    quadrance     perpendicular map    dot product
=======  ============  ===================  =================
blue     a^2 + b^2     (a, b) -> (-b, a)    a1 a2 + b1 b2
red      a^2 - b^2     (a, b) -> (b, a)     a1 a2 - b1 b2
green    2ab           (a, b) -> (-a, b)    a1 b2 + a2 b1
=======  ============  ===================  =================

Spreads are defined between lines, never between vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import CoincidentPoints, NullLine, ParallelLines, UndefinedSpread
from .field import Field, FieldElement, common_field


class Color(Enum):
    BLUE = "blue"
    RED = "red"
    GREEN = "green"

    @property
    def sigma(self) -> int:
        """Sign in front of the spread formula (and of 16*area^2 in Archimedes)."""
        return 1 if self is Color.BLUE else -1

    @property
    def others(self) -> tuple[Color, Color]:
        i = COLORS.index(self)
        return COLORS[(i + 1) % 3], COLORS[(i + 2) % 3]

    @classmethod
    def parse(cls, text: str | Color) -> Color:
        if isinstance(text, Color):
            return text
        t = text.strip().lower()
        for c in cls:
            if c.value == t or c.value[0] == t:
                return c
        raise ValueError(f"unknown color {text!r}")


BLUE, RED, GREEN = Color.BLUE, Color.RED, Color.GREEN
COLORS = (BLUE, RED, GREEN)


@dataclass(frozen=True)
class Vec2:
    a: FieldElement
    b: FieldElement

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.a + other.a, self.b + other.b)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.a - other.a, self.b - other.b)

    def __neg__(self) -> Vec2:
        return Vec2(-self.a, -self.b)

    def __mul__(self, k) -> Vec2:
        return Vec2(self.a * k, self.b * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    @property
    def field(self) -> Field:
        return common_field(self.a, self.b)

    def __str__(self):
        return f"({self.a}, {self.b})"


@dataclass(frozen=True)
class Point:
    x: FieldElement
    y: FieldElement

    def __sub__(self, other: Point) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __add__(self, v: Vec2) -> Point:
        return Point(self.x + v.a, self.y + v.b)

    @property
    def field(self) -> Field:
        return common_field(self.x, self.y)

    def __str__(self):
        return f"[{self.x}, {self.y}]"


@dataclass(frozen=True, init=False)
class Line:
    """The line a*x + b*y + c = 0, scaled so the first nonzero of (a, b) is 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement

    def __init__(self, a: FieldElement, b: FieldElement, c: FieldElement):
        f = common_field(a, b, c)
        a, b, c = f(a), f(b), f(c)
        if a.is_zero():
            if b.is_zero():
                raise ValueError("a line needs (a, b) != (0, 0)")
            k = b.inverse()
        else:
            k = a.inverse()
        object.__setattr__(self, "a", a * k)
        object.__setattr__(self, "b", b * k)
        object.__setattr__(self, "c", c * k)

    @property
    def field(self) -> Field:
        return self.a.field

    def direction(self) -> Vec2:
        return Vec2(-self.b, self.a)

    def normal(self) -> Vec2:
        return Vec2(self.a, self.b)

    def value_at(self, p: Point) -> FieldElement:
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p: Point) -> bool:
        return self.value_at(p).is_zero()

    def __str__(self):
        return f"({self.a})x + ({self.b})y + ({self.c}) = 0"


def point(field: Field, x, y) -> Point:
    return Point(field(x), field(y))


def vec(field: Field, a, b) -> Vec2:
    return Vec2(field(a), field(b))


def line(field: Field, a, b, c) -> Line:
    return Line(field(a), field(b), field(c))


def perp_map(c: Color, v: Vec2) -> Vec2:
    if c is BLUE:
        return Vec2(-v.b, v.a)
    if c is RED:
        return Vec2(v.b, v.a)
    return Vec2(-v.a, v.b)


def quadrance_vec(c: Color, v: Vec2) -> FieldElement:
    a, b = v.a, v.b
    if c is BLUE:
        return a * a + b * b
    if c is RED:
        return a * a - b * b
    return 2 * a * b


def quadrance(c: Color, p1: Point, p2: Point) -> FieldElement:
    return quadrance_vec(c, p2 - p1)


def dot(c: Color, v1: Vec2, v2: Vec2) -> FieldElement:
    if c is BLUE:
        return v1.a * v2.a + v1.b * v2.b
    if c is RED:
        return v1.a * v2.a - v1.b * v2.b
    return v1.a * v2.b + v2.a * v1.b


def cross(v1: Vec2, v2: Vec2) -> FieldElement:
    return v1.a * v2.b - v2.a * v1.b


def is_parallel(v1: Vec2, v2: Vec2) -> bool:
    """True iff a1*b2 - a2*b1 = 0; the zero vector is parallel to everything."""
    return cross(v1, v2).is_zero()


def is_perpendicular_vec(c: Color, v1: Vec2, v2: Vec2) -> bool:
    return dot(c, v1, v2).is_zero()


def is_perpendicular_lines(c: Color, l1: Line, l2: Line) -> bool:
    return dot(c, l1.direction(), l2.direction()).is_zero()


def normal_quadrance(c: Color, l: Line) -> FieldElement:
    """N_c(l): the c-quadrance of the coefficient vector (a, b)."""
    return quadrance_vec(c, l.normal())


def line_null_in_color(c: Color, l: Line) -> bool:
    return quadrance_vec(c, l.direction()).is_zero()


def spread(c: Color, l1: Line, l2: Line) -> FieldElement | None:
    """The c-spread between two lines, or None where a denominator vanishes."""
    n1, n2 = normal_quadrance(c, l1), normal_quadrance(c, l2)
    if n1.is_zero() or n2.is_zero():
        return None
    num = cross(l1.normal(), l2.normal())
    return c.sigma * num * num / (n1 * n2)


def line_through(p1: Point, p2: Point) -> Line:
    if p1 == p2:
        raise CoincidentPoints(f"{p1} and {p2} coincide")
    return line_through_direction(p1, p2 - p1)


def line_through_direction(p: Point, v: Vec2) -> Line:
    """The line through p parallel to v."""
    if v.is_zero():
        raise ValueError("direction vector is zero")
    return Line(v.b, -v.a, v.a * p.y - v.b * p.x)


def meet(l1: Line, l2: Line) -> Point:
    det = l1.a * l2.b - l2.a * l1.b
    if det.is_zero():
        raise ParallelLines(f"{l1} and {l2} are parallel")
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return Point(x, y)


def collinear(p1: Point, p2: Point, p3: Point) -> bool:
    return cross(p2 - p1, p3 - p1).is_zero()


def altitude_and_foot(c: Color, p: Point, l: Line) -> tuple[Line, Point]:
    """The c-altitude from p to l and its foot on l."""
    if line_null_in_color(c, l):
        raise NullLine(c, l)
    alt = line_through_direction(p, perp_map(c, l.direction()))
    return alt, meet(alt, l)


def quadrance_point_line(c: Color, p: Point, l: Line) -> FieldElement:
    """Q_c(p, l) = (a x + b y + c)^2 / N_c(l); equal to the quadrance to the altitude foot."""
    n = normal_quadrance(c, l)
    if n.is_zero():
        raise NullLine(c, l)
    v = l.value_at(p)
    return v * v / n


@dataclass(frozen=True)
class QuadranceSquares:
    blue_squared: FieldElement
    red_plus_green_squared: FieldElement

    @property
    def holds(self) -> bool:
        return self.blue_squared == self.red_plus_green_squared


def cross_color_checks(p1: Point, p2: Point) -> QuadranceSquares:
    """Both sides of Q_b^2 = Q_r^2 + Q_g^2 for the segment p1 p2."""
    qb, qr, qg = (quadrance(c, p1, p2) for c in COLORS)
    return QuadranceSquares(qb * qb, qr * qr + qg * qg)


def spread_harmonic(l1: Line, l2: Line) -> FieldElement | None:
    """1/s_b + 1/s_r + 1/s_g, or None when any spread is undefined or zero."""
    total = None
    for c in COLORS:
        s = spread(c, l1, l2)
        if s is None or s.is_zero():
            return None
        total = s.inverse() if total is None else total + s.inverse()
    return total


def require_spread(c: Color, l1: Line, l2: Line) -> FieldElement:
    s = spread(c, l1, l2)
    if s is None:
        raise UndefinedSpread(f"{c.value} spread between {l1} and {l2} is undefined")
    return s
