"""Triangle-level rational trigonometry in each of the three colors."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateTriangle, UndefinedSpread, ZeroQuadrance
from .field import FieldElement
from .metric import Color, Point, collinear, cross, line_through, quadrance, spread


def archimedes(q1, q2, q3) -> FieldElement:
    """A(Q1, Q2, Q3) = (Q1 + Q2 + Q3)^2 - 2(Q1^2 + Q2^2 + Q3^2)."""
    s = q1 + q2 + q3
    return s * s - 2 * (q1 * q1 + q2 * q2 + q3 * q3)


@dataclass(frozen=True)
class Triangle:
    A1: Point
    A2: Point
    A3: Point

    def __post_init__(self):
        a1, a2, a3 = self.A1, self.A2, self.A3
        if a1 == a2 or a2 == a3 or a1 == a3:
            raise DegenerateTriangle("triangle vertices must be pairwise distinct")

    @property
    def is_degenerate(self) -> bool:
        return collinear(self.A1, self.A2, self.A3)

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return self.A1, self.A2, self.A3


def signed_area(t: Triangle) -> FieldElement:
    """Half of det(A2 - A1, A3 - A1); positive for counterclockwise order over QQ."""
    return cross(t.A2 - t.A1, t.A3 - t.A1) / 2


@dataclass(frozen=True)
class TriangleProfile:
    """Quadrances Q_i opposite A_i, spreads s_i at A_i, and 16*area^2."""

    color: Color
    Q1: FieldElement
    Q2: FieldElement
    Q3: FieldElement
    s1: FieldElement | None
    s2: FieldElement | None
    s3: FieldElement | None
    area2_16: FieldElement

    @property
    def quadrances(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return self.Q1, self.Q2, self.Q3

    @property
    def spreads(self) -> tuple[FieldElement | None, FieldElement | None, FieldElement | None]:
        return self.s1, self.s2, self.s3

    @property
    def archimedes(self) -> FieldElement:
        return archimedes(self.Q1, self.Q2, self.Q3)

    @property
    def area_squared(self) -> FieldElement:
        return self.area2_16 / 16


def profile(t: Triangle, c: Color) -> TriangleProfile:
    a1, a2, a3 = t.vertices
    l12, l13, l23 = line_through(a1, a2), line_through(a1, a3), line_through(a2, a3)
    area = signed_area(t)
    return TriangleProfile(
        color=c,
        Q1=quadrance(c, a2, a3),
        Q2=quadrance(c, a1, a3),
        Q3=quadrance(c, a1, a2),
        s1=spread(c, l12, l13),
        s2=spread(c, l12, l23),
        s3=spread(c, l13, l23),
        area2_16=16 * area * area,
    )


def check_spread_law(p: TriangleProfile) -> tuple[FieldElement, FieldElement, FieldElement]:
    """The ratios s_i / Q_i; the Spread law says they coincide."""
    if any(s is None for s in p.spreads):
        raise UndefinedSpread(f"a {p.color.value} spread of the triangle is undefined")
    if any(q.is_zero() for q in p.quadrances):
        raise ZeroQuadrance(f"a {p.color.value} quadrance of the triangle is zero")
    return tuple(s / q for s, q in zip(p.spreads, p.quadrances))


def spread_law_ratio(p: TriangleProfile) -> FieldElement:
    """Closed form of the common Spread-law ratio, A(Q1, Q2, Q3) / (4 Q1 Q2 Q3)."""
    if any(q.is_zero() for q in p.quadrances):
        raise ZeroQuadrance(f"a {p.color.value} quadrance of the triangle is zero")
    return p.archimedes / (4 * p.Q1 * p.Q2 * p.Q3)


def check_cross_law(p: TriangleProfile) -> tuple[FieldElement, FieldElement]:
    """Both sides of (Q1 + Q2 - Q3)^2 = 4 Q1 Q2 (1 - s3)."""
    if p.s3 is None:
        raise UndefinedSpread(f"{p.color.value} spread s3 is undefined")
    d = p.Q1 + p.Q2 - p.Q3
    return d * d, 4 * p.Q1 * p.Q2 * (1 - p.s3)


def check_triple_spread(s1, s2, s3) -> tuple[FieldElement, FieldElement]:
    """Both sides of (s1 + s2 + s3)^2 = 2(s1^2 + s2^2 + s3^2) + 4 s1 s2 s3."""
    total = s1 + s2 + s3
    return total * total, 2 * (s1 * s1 + s2 * s2 + s3 * s3) + 4 * s1 * s2 * s3
