"""Conics and their chromatic characterizations.

A :class:`Conic` is the curve A x^2 + B xy + C y^2 + D x + E y + F = 0 scaled so
its first nonzero coefficient is 1. Besides the usual projective machinery
(polars, tangents, meets with lines) this module analyses a conic as

* a *conic section* in color c: constant ratio e^2 = Q_c(X, F) / Q_c(X, l);
* a *grammola*: constant sum of c-quadrances to two diagonal lines;
* a *quadrola*: A(Q_c(F1, X), Q_c(F2, X), K) = 0 for a focal pair;
* a *parabola* carrying one focus/directrix pair in each color.

Whenever a construction needs a square root that the current field lacks,
a quadratic extension is adjoined and reported alongside the result. Over
ordered fields (QQ and real towers over it) a negative radicand means the
configuration has no real points, and the construction reports that instead
of passing to a non-real extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    CoincidentFoci,
    DegenerateConic,
    FocusOnDirectrix,
    InconsistentPair,
    LineOnConic,
    NoDiagonals,
    NoSuchTangent,
    NotAConic,
    NotAParabola,
    NotOnConic,
    NullAltitude,
    NullDirectrix,
    NullLine,
    NullTangent,
    ParallelLines,
    PolarUndefined,
    SingularPoint,
    VerificationFailed,
)
from .field import Field, FieldElement, common_field, extend_by_sqrt, sqrt_in_field
from .metric import (
    BLUE,
    COLORS,
    GREEN,
    RED,
    Color,
    Line,
    Point,
    Vec2,
    altitude_and_foot,
    collinear,
    cross,
    dot,
    is_parallel,
    is_perpendicular_lines,
    line_null_in_color,
    line_through_direction,
    meet,
    normal_quadrance,
    perp_map,
    quadrance,
    quadrance_point_line,
    quadrance_vec,
    spread,
)
from .poly import QUADRATIC_MONOMIALS, Poly2
from .trig import archimedes


@dataclass(frozen=True, init=False)
class Conic:
    A: FieldElement
    B: FieldElement
    C: FieldElement
    D: FieldElement
    E: FieldElement
    F: FieldElement

    def __init__(self, A, B, C, D, E, F):
        f = common_field(A, B, C, D, E, F)
        cs = [f(v) for v in (A, B, C, D, E, F)]
        if all(v.is_zero() for v in cs[:3]):
            raise NotAConic("quadratic coefficients A, B, C all vanish")
        lead = next(v for v in cs if not v.is_zero())
        k = lead.inverse()
        for name, v in zip("ABCDEF", cs):
            object.__setattr__(self, name, v * k)

    @classmethod
    def from_poly(cls, p: Poly2) -> Conic:
        return cls(*p.quadratic_coeffs())

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    @property
    def field(self) -> Field:
        return self.A.field

    def poly(self) -> Poly2:
        f = self.field
        x, y = Poly2.x(f), Poly2.y(f)
        return self.A * x * x + self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F

    def matrix3(self) -> tuple[tuple[FieldElement, ...], ...]:
        A, B, C, D, E, F = self.coeffs
        return ((A, B / 2, D / 2), (B / 2, C, E / 2), (D / 2, E / 2, F))

    def quad_matrix(self) -> tuple[tuple[FieldElement, FieldElement], tuple[FieldElement, FieldElement]]:
        return ((self.A, self.B / 2), (self.B / 2, self.C))

    def quad_form(self, v: Vec2) -> FieldElement:
        return self.A * v.a * v.a + self.B * v.a * v.b + self.C * v.b * v.b

    def gradient(self, p: Point) -> Vec2:
        return Vec2(2 * self.A * p.x + self.B * p.y + self.D, self.B * p.x + 2 * self.C * p.y + self.E)

    def quad_det(self) -> FieldElement:
        return self.A * self.C - self.B * self.B / 4

    def det3(self) -> FieldElement:
        return _det3(self.matrix3())

    @property
    def is_degenerate(self) -> bool:
        return self.det3().is_zero()

    @property
    def is_parabola(self) -> bool:
        return self.quad_det().is_zero() and not self.is_degenerate

    def __str__(self):
        return f"({self.A})x^2 + ({self.B})xy + ({self.C})y^2 + ({self.D})x + ({self.E})y + ({self.F}) = 0"


def conic(field: Field, *coeffs) -> Conic:
    return Conic(*(field(c) for c in coeffs))


def _det3(m) -> FieldElement:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _adj3(m):
    def minor(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

    return tuple(tuple((-1) ** (i + j) * minor(j, i) for j in range(3)) for i in range(3))


def _apply3(m, v):
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))


# ---------------------------------------------------------------------------
# basic incidence


def evaluate(K: Conic, X: Point) -> FieldElement:
    return (
        K.A * X.x * X.x + K.B * X.x * X.y + K.C * X.y * X.y + K.D * X.x + K.E * X.y + K.F
    )


def contains(K: Conic, X: Point) -> bool:
    return evaluate(K, X).is_zero()


def polar_line(K: Conic, P: Point) -> Line:
    a, b, c = _apply3(K.matrix3(), (P.x, P.y, P.x.field.one))
    if a.is_zero() and b.is_zero():
        raise PolarUndefined(f"the polar of {P} has no x, y part")
    return Line(a, b, c)


def pole(K: Conic, l: Line) -> Point:
    m = K.matrix3()
    if _det3(m).is_zero():
        raise DegenerateConic("conic matrix is singular")
    x, y, w = _apply3(_adj3(m), (l.a, l.b, l.c))
    if w.is_zero():
        raise PolarUndefined(f"the pole of {l} is at infinity")
    return Point(x / w, y / w)


def tangent_at(K: Conic, X: Point) -> Line:
    if not contains(K, X):
        raise NotOnConic(f"{X} is not on the conic")
    if K.gradient(X).is_zero():
        raise SingularPoint(f"{X} is a singular point of the conic")
    return polar_line(K, X)


@dataclass(frozen=True)
class MeetResult:
    points: tuple[Point, ...]
    field: Field

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _point_on_line(l: Line) -> Point:
    f = l.field
    if not l.b.is_zero():
        return Point(f.zero, -l.c / l.b)
    return Point(-l.c / l.a, f.zero)


def _solve_quadratic(alpha, beta, gamma, field: Field) -> tuple[list[FieldElement], Field]:
    """Roots of alpha t^2 + beta t + gamma, adjoining a square root if needed."""
    if alpha.is_zero():
        if beta.is_zero():
            return [], field
        return [-gamma / beta], field
    disc = beta * beta - 4 * alpha * gamma
    if disc.is_zero():
        return [-beta / (2 * alpha)], field
    big = common_field(disc, field.zero)
    if big.ordered and disc.sign() < 0:
        return [], field
    ext = extend_by_sqrt(big, disc)
    r = ext.root
    two_a = 2 * alpha
    return [(-beta + r) / two_a, (-beta - r) / two_a], ext.field


def line_conic_meet(K: Conic, l: Line, field: Field | None = None) -> MeetResult:
    """Points common to K and l, over an extension of the working field if necessary.

    ``field`` lets callers continue in a tower they already built.
    """
    work = common_field(K.A, l.a, *(() if field is None else (field.zero,)))
    p0 = _point_on_line(l)
    d = l.direction()
    alpha = K.quad_form(d)
    g = K.gradient(p0)
    beta = g.a * d.a + g.b * d.b
    gamma = evaluate(K, p0)
    if alpha.is_zero() and beta.is_zero() and gamma.is_zero():
        raise LineOnConic(f"{l} lies on the conic")
    ts, work = _solve_quadratic(alpha, beta, gamma, work)
    return MeetResult(tuple(p0 + d * t for t in ts), work)


def center(K: Conic) -> Point | None:
    det = K.quad_det()
    if det.is_zero():
        return None
    # [[A, B/2], [B/2, C]] (x, y) = (-D/2, -E/2)
    A, B, C, D, E = K.A, K.B / 2, K.C, -K.D / 2, -K.E / 2
    return Point((D * C - B * E) / det, (A * E - B * D) / det)


def sample_points(K: Conic, count: int, field: Field | None = None, start: Point | None = None) -> list[Point]:
    """Distinct points of K, found by rational parameterization through one point.

    The seed point comes from sweeping horizontal then vertical lines when
    ``start`` is not given; it may force a quadratic extension.
    """
    work = common_field(K.A, *(() if field is None else (field.zero,)))
    if start is None:
        start = _find_point(K, work)
        if start is None:
            return []
    f = common_field(start.x, start.y, work.zero)
    pts: list[Point] = [start]
    g = K.gradient(start)
    for m in _slopes():
        if len(pts) >= count:
            break
        d = Vec2(f.one, f(m)) if m is not None else Vec2(f.zero, f.one)
        alpha = K.quad_form(d)
        beta = g.a * d.a + g.b * d.b
        if alpha.is_zero() or beta.is_zero():
            continue
        q = start + d * (-beta / alpha)
        if q not in pts:
            pts.append(q)
    return pts


def _slopes() -> Iterable[int | None]:
    yield 0
    yield None
    for k in range(1, 200):
        yield k
        yield -k


def _find_point(K: Conic, work: Field) -> Point | None:
    # sweep horizontal and vertical lines around the centre (or the origin)
    ctr = center(K)
    cx, cy = (work.zero, work.zero) if ctr is None else (ctr.x, ctr.y)
    for k in [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5]:
        for l in (Line(work.zero, work.one, -(cy + k)), Line(work.one, work.zero, -(cx + k))):
            try:
                res = line_conic_meet(K, l, work)
            except LineOnConic:
                continue
            for p in res.points:
                if not K.gradient(p).is_zero():
                    return p
    return None


# ---------------------------------------------------------------------------
# locus constructions


def _quadrance_poly(c: Color, F: Point) -> Poly2:
    f = common_field(F.x, F.y)
    dx = Poly2.x(f) - F.x
    dy = Poly2.y(f) - F.y
    if c is BLUE:
        return dx * dx + dy * dy
    if c is RED:
        return dx * dx - dy * dy
    return 2 * dx * dy


def _linear_poly(l: Line) -> Poly2:
    return Poly2.linear(l.field, l.a, l.b, l.c)


def _focus_directrix_poly(c: Color, F: Point, l: Line, ecc2) -> Poly2:
    n = normal_quadrance(c, l)
    if n.is_zero():
        raise NullDirectrix(c, l)
    if l.contains(F):
        raise FocusOnDirectrix(f"{F} lies on {l}")
    lin = _linear_poly(l)
    return _quadrance_poly(c, F) * n - lin * lin * ecc2


def conic_from_focus_directrix(c: Color, F: Point, l: Line, ecc2) -> Conic:
    """The locus Q_c(X, F) = ecc2 * Q_c(X, l), cleared of the denominator N_c(l)."""
    return Conic.from_poly(_focus_directrix_poly(c, F, l, ecc2))


@dataclass(frozen=True)
class FocusDirectrixPair:
    color: Color
    focus: Point
    directrix: Line
    ecc2: FieldElement

    def conic(self) -> Conic:
        return conic_from_focus_directrix(self.color, self.focus, self.directrix, self.ecc2)


def parabola_conic(c: Color, F: Point, l: Line) -> Conic:
    K = conic_from_focus_directrix(c, F, l, F.x.field.one)
    if not K.quad_det().is_zero():
        raise VerificationFailed("parabola quadratic part is not degenerate")
    return K


def quadrola_poly(c: Color, F1: Point, F2: Point, K) -> Poly2:
    if F1 == F2:
        raise CoincidentFoci(f"{F1} and {F2} coincide")
    q1, q2 = _quadrance_poly(c, F1), _quadrance_poly(c, F2)
    return archimedes(q1, q2, Poly2.const(q1.field, K))


def quadrola_conic(c: Color, F1: Point, F2: Point, K) -> Conic:
    """The locus A(Q_c(F1, X), Q_c(F2, X), K) = 0."""
    p = quadrola_poly(c, F1, F2, K)
    if p.degree() > 2:
        raise VerificationFailed("quadrola expansion has degree above 2")
    return Conic.from_poly(p)


def _proportional(p: Sequence[FieldElement], q: Sequence[FieldElement]) -> bool:
    """True when the coefficient vectors p and q are nonzero multiples of each other."""
    i = next((k for k, v in enumerate(q) if not v.is_zero()), None)
    if i is None or p[i].is_zero():
        return False
    lam = p[i] / q[i]
    return all(a == lam * b for a, b in zip(p, q))


def _match_affine(p0, p1, target, idx: Sequence[int]) -> FieldElement | None:
    """Find x with p0 + x*p1 proportional to target on the coordinates idx."""
    for i, j in combinations(idx, 2):
        # p0_i + x p1_i = lam t_i  and  p0_j + x p1_j = lam t_j
        det = -p1[i] * target[j] + p1[j] * target[i]
        if det.is_zero():
            continue
        x = (p0[i] * target[j] - p0[j] * target[i]) / det
        vals = [p0[k] + x * p1[k] for k in idx]
        ts = [target[k] for k in idx]
        if _proportional(vals, ts):
            return x
    return None


def _coeffs(p: Poly2):
    return [p.coeff(i, j) for i, j in QUADRATIC_MONOMIALS]


def focus_ecc2(c: Color, K: Conic, F: Point, l: Line) -> FieldElement:
    """The e^2 making (F, l) a c-focus/directrix pair of K, or VerificationFailed."""
    n = normal_quadrance(c, l)
    if n.is_zero():
        raise NullDirectrix(c, l)
    lin = _linear_poly(l)
    p0 = _coeffs(_quadrance_poly(c, F) * n)
    p1 = _coeffs(-(lin * lin))
    e2 = _match_affine(p0, p1, K.coeffs, range(6))
    if e2 is None:
        raise VerificationFailed(f"({F}, {l}) is not a {c.value} focus/directrix pair of the conic")
    return e2


def quadrola_constant(c: Color, K: Conic, F1: Point, F2: Point) -> FieldElement:
    """Solve for the K-value making A(Q1, Q2, K) = 0 a multiple of the conic."""
    q1, q2 = _quadrance_poly(c, F1), _quadrance_poly(c, F2)
    diff = q1 - q2
    p0 = _coeffs(-(diff * diff))
    p1 = _coeffs(2 * (q1 + q2))
    k = _match_affine(p0, p1, K.coeffs, (0, 1, 2))
    if k is None or not _proportional(_coeffs(quadrola_poly(c, F1, F2, k)), K.coeffs):
        raise VerificationFailed(f"{F1}, {F2} are not {c.value} quadrola foci of the conic")
    return k


# ---------------------------------------------------------------------------
# quadrola foci from directrix points


NULL_DIRECTIONS = {
    RED: ((1, 1), (1, -1)),
    GREEN: ((1, 0), (0, 1)),
}


@dataclass(frozen=True)
class QuadrolaData:
    color: Color
    foci_pairs: tuple[tuple[Point, Point], ...]
    K: tuple[FieldElement, ...]
    directrices: tuple[tuple[Line, Line], ...]
    pairs: tuple[FocusDirectrixPair, ...]
    directrix_points: tuple[Point, ...]
    tower: Field


def _conjugate_diameter(K: Conic, n: tuple[int, int]) -> Line:
    """Locus of points where the tangent is parallel to n: the polar of n at infinity."""
    f = K.field
    m = K.matrix3()
    a, b, c = _apply3(m, (f(n[0]), f(n[1]), f.zero))
    if a.is_zero() and b.is_zero():
        raise NoSuchTangent(f"direction {n} is asymptotic to the conic")
    return Line(a, b, c)


def quadrola_foci(c: Color, K: Conic) -> QuadrolaData:
    if c not in NULL_DIRECTIONS:
        raise ValueError("quadrola foci are constructed for red or green only")
    if center(K) is None or K.is_degenerate:
        raise DegenerateConic("quadrola analysis needs a central non-degenerate conic")
    work = K.field
    tangents: list[tuple[Line, Line]] = []
    dpoints: list[Point] = []
    for n in NULL_DIRECTIONS[c]:
        diam = _conjugate_diameter(K, n)
        res = line_conic_meet(K, diam, work)
        if len(res) < 2:
            raise NoSuchTangent(f"no tangents of the conic are parallel to {n}")
        work = res.field
        t1, t2 = (tangent_at(K, p) for p in res.points)
        nv = Vec2(work(n[0]), work(n[1]))
        if not (is_parallel(t1.direction(), nv) and is_parallel(t2.direction(), nv)):
            raise VerificationFailed("directrix-point tangent is not parallel to the null direction")
        tangents.append((t1, t2))
        dpoints.extend(res.points)
    (s1, s2), (u1, u2) = tangents
    foci_pairs = ((meet(s1, u1), meet(s2, u2)), (meet(s1, u2), meet(s2, u1)))

    # the foci parallelogram is a rectangle in the two other colors
    F1, F2 = foci_pairs[0]
    G1, G2 = foci_pairs[1]
    for other in c.others:
        if not dot(other, G1 - F1, G2 - F1).is_zero():
            raise VerificationFailed(f"foci parallelogram is not a {other.value} rectangle")

    Ks, dirs, pairs = [], [], []
    for P, Q in foci_pairs:
        Ks.append(quadrola_constant(c, K, P, Q))
        dP, dQ = polar_line(K, P), polar_line(K, Q)
        dirs.append((dP, dQ))
        for foc, dl in ((P, dP), (Q, dQ)):
            pairs.append(FocusDirectrixPair(c, foc, dl, focus_ecc2(c, K, foc, dl)))
    d_all = [d for pr in dirs for d in pr]
    for d1, d2 in combinations(d_all, 2):
        if not (is_parallel(d1.direction(), d2.direction()) or is_perpendicular_lines(c, d1, d2)):
            raise VerificationFailed("quadrola directrices are neither parallel nor perpendicular")
        if not is_parallel(d1.direction(), d2.direction()) and not contains(K, meet(d1, d2)):
            raise VerificationFailed("directrices do not meet on the conic")
    return QuadrolaData(
        color=c,
        foci_pairs=foci_pairs,
        K=tuple(Ks),
        directrices=tuple(dirs),
        pairs=tuple(pairs),
        directrix_points=tuple(dpoints),
        tower=work,
    )


# ---------------------------------------------------------------------------
# grammolas


GRAM = {
    BLUE: ((1, 0), (0, 1)),
    RED: ((1, 0), (0, -1)),
    GREEN: ((0, 1), (1, 0)),
}


def _matmul2(a, b):
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2)
    )


@dataclass(frozen=True)
class GrammolaData:
    color: Color
    center: Point
    diagonals: tuple[Line, Line]
    constant: FieldElement
    corner_quadrances: tuple[FieldElement, FieldElement] | None
    corners: tuple[Point, ...] | None
    diagonal_spread: FieldElement
    tower: Field
    corner_product: FieldElement | None = None
    samples_checked: int = dc_field(default=0, compare=False)


def grammola_analyze(c: Color, K: Conic, samples: int = 5, corners: bool = True) -> GrammolaData:
    """Find the c-diagonals of K: lines l1, l2 with Q_c(X, l1) + Q_c(X, l2) constant on K.

    With M the quadratic-part matrix, XᵀMX = k0 the centred equation and G the
    Gram matrix of color c, the diagonals have normals u, v with
    u uᵀ/N(u) + v vᵀ/N(v) = mu M. Taking traces against G forces
    mu = 2 / tr(GM); the normal u must then make mu M - u uᵀ/N(u) singular,
    which is the binary quadratic uᵀ(det(P) G - adj(P))u = 0 with P = mu M.
    Its two root directions are the two diagonals, the constant sum is
    mu k0 and the spread between the diagonals is det(G P).

    Corners are centre + t_i d_i with t_i^2 = k0 / d_iᵀ M d_i, so the product
    of the two corner quadrances needs only t_1^2 and t_2^2 and stays in the
    diagonals' field. ``corners=False`` skips the corner points themselves
    (and the deeper tower they need).
    """
    ctr = center(K)
    if ctr is None or K.is_degenerate:
        raise NoDiagonals("grammola analysis needs a central non-degenerate conic")
    f0 = K.field
    k0 = -evaluate(K, ctr)
    M = K.quad_matrix()
    G = tuple(tuple(f0(v) for v in row) for row in GRAM[c])
    GM = _matmul2(G, M)
    tr = GM[0][0] + GM[1][1]
    if tr.is_zero():
        raise NoDiagonals(f"tr(GM) vanishes; no {c.value} diagonals")
    mu = 2 / tr
    P = tuple(tuple(mu * v for v in row) for row in M)
    detP = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    adjP = ((P[1][1], -P[0][1]), (-P[1][0], P[0][0]))
    W = tuple(tuple(detP * G[i][j] - adjP[i][j] for j in range(2)) for i in range(2))
    w11, w12, w22 = W[0][0], W[0][1], W[1][1]
    if w11.is_zero() and w12.is_zero() and w22.is_zero():
        raise NoDiagonals(f"conic is a {c.value} circle; its diagonals are not unique")
    qdisc = w12 * w12 - w11 * w22
    if qdisc.is_zero():
        raise NoDiagonals("the two diagonals coincide")
    if f0.ordered and qdisc.sign() < 0:
        raise NoDiagonals(f"no real {c.value} diagonals")
    ext = extend_by_sqrt(f0, qdisc)
    work, r = ext.field, ext.root
    one, zero = work.one, work.zero
    if w11.is_zero():
        normals = [Vec2(one, zero), Vec2(-w22 / (2 * w12), one)]
    else:
        normals = [Vec2((-w12 + r) / w11, one), Vec2((-w12 - r) / w11, one)]
    ns = [quadrance_vec(c, u) for u in normals]
    if any(n.is_zero() for n in ns):
        raise NoDiagonals(f"a {c.value} diagonal would be a null line")
    # exact decomposition check: u uᵀ/N(u) + v vᵀ/N(v) == P
    for i in range(2):
        for j in range(2):
            s = sum(((u.a, u.b)[i] * (u.a, u.b)[j] / n for u, n in zip(normals, ns)), zero)
            if s != P[i][j]:
                raise VerificationFailed("diagonal decomposition does not reproduce the quadratic form")
    diags = tuple(Line(u.a, u.b, -(u.a * ctr.x + u.b * ctr.y)) for u in normals)
    sp = spread(c, *diags)
    if sp is None or sp == 1:
        raise NoDiagonals(f"{c.value} diagonals are perpendicular or null")
    GP = _matmul2(G, P)
    if sp != GP[0][0] * GP[1][1] - GP[0][1] * GP[1][0]:
        raise VerificationFailed("diagonal spread disagrees with det(GP)")
    constant = mu * k0

    product = None
    dirs = [l.direction() for l in diags]
    dens = [K.quad_form(d) for d in dirs]
    if not any(d.is_zero() for d in dens):
        t2 = [k0 / d for d in dens]
        if not work.ordered or all(t.sign() > 0 for t in t2):
            q1, q2 = (quadrance_vec(c, d) for d in dirs)
            e = dot(c, dirs[0], dirs[1])
            s_ = t2[0] * q1 + t2[1] * q2
            product = s_ * s_ - 4 * t2[0] * t2[1] * e * e

    corner_pts = None
    cq = None
    if corners:
        m1 = line_conic_meet(K, diags[0], work)
        m2 = line_conic_meet(K, diags[1], m1.field)
        if len(m1) == 2 and len(m2) == 2:
            work = m2.field
            c1 = m1.points[0] - ctr
            c2 = m2.points[0] - ctr
            corner_pts = (m1.points[0], m2.points[0], m1.points[1], m2.points[1])
            cq = (quadrance_vec(c, c1 - c2), quadrance_vec(c, c1 + c2))
            if product is None or cq[0] * cq[1] != product:
                raise VerificationFailed("corner quadrance product disagrees with its closed form")

    start = corner_pts[0] if corner_pts else None
    pts = sample_points(K, samples, work, start=start)
    for X in pts:
        total = quadrance_point_line(c, X, diags[0]) + quadrance_point_line(c, X, diags[1])
        if total != constant:
            raise VerificationFailed(f"quadrance sum {total} != {constant} at {X}")
    if len(pts) < samples:
        raise VerificationFailed(f"only {len(pts)} sample points found on the conic")
    return GrammolaData(
        color=c,
        center=ctr,
        diagonals=diags,
        constant=constant,
        corner_quadrances=cq,
        corners=corner_pts,
        diagonal_spread=sp,
        tower=work,
        corner_product=product,
        samples_checked=len(pts),
    )


def grammola_spread_identity(K: Conic) -> FieldElement:
    """1/s_b + 1/s_r + 1/s_g over the three diagonal spreads of K."""
    total = None
    for c in COLORS:
        s = grammola_analyze(c, K).diagonal_spread
        total = s.inverse() if total is None else total + s.inverse()
    return total


# ---------------------------------------------------------------------------
# parabolas


def axis_direction(K: Conic) -> Vec2:
    """Kernel of the (rank one) quadratic part of a parabola."""
    A, B, C = K.A, K.B / 2, K.C
    v = Vec2(B, -A)
    if v.is_zero():
        v = Vec2(C, -B)
    return v


@dataclass(frozen=True)
class ParabolaChromatics:
    pairs: dict[Color, FocusDirectrixPair]
    axis_direction: Vec2
    vertices: dict[Color, Point]
    bases: dict[Color, Point]
    tangent_meets: dict[Color, Point | None]

    def named_points(self) -> dict[str, Point]:
        out = {}
        for c in COLORS:
            k = c.value[0]
            out[f"V_{k}"] = self.vertices[c]
            out[f"X_{k}"] = self.bases[c]
            if self.tangent_meets[c] is not None:
                out[f"Y_{k}"] = self.tangent_meets[c]
        return out

    def collinear_triples(self) -> list[tuple[str, str, str]]:
        """All triples of distinct named points V, X, Y (any colors) that are collinear."""
        pts = self.named_points()
        found = []
        for a, b, c in combinations(sorted(pts), 3):
            p, q, r = pts[a], pts[b], pts[c]
            if p == q or q == r or p == r:
                continue
            if collinear(p, q, r):
                found.append((a, b, c))
        return found


def parabola_chromatics(K: Conic, known: FocusDirectrixPair) -> ParabolaChromatics:
    """Recover all three focus/directrix pairs of a parabola from one of them.

    For the known color c0 and the others ci, cj: the directrix l_ci is the
    cj-altitude from the known focus to l_c0, and its foot is the focus F_cj.
    """
    if not K.is_parabola:
        raise NotAParabola("conic is not a non-degenerate parabola")
    c0 = known.color
    if known.ecc2 != 1 or parabola_conic(c0, known.focus, known.directrix) != K:
        raise InconsistentPair(f"{c0.value} pair does not generate the conic")
    F0, L0 = known.focus, known.directrix
    foci = {c0: F0}
    dirs = {c0: L0}
    ci, cj = c0.others
    for a, b in ((ci, cj), (cj, ci)):
        try:
            alt, foot = altitude_and_foot(b, F0, L0)
        except NullLine as exc:
            raise NullAltitude(b, L0) from exc
        dirs[a] = alt
        foci[b] = foot

    # incidence and perpendicularity structure
    for c in COLORS:
        o1, o2 = c.others
        if meet(dirs[o1], dirs[o2]) != foci[c]:
            raise VerificationFailed(f"F_{c.value} is not the meet of the other two directrices")
        if not is_perpendicular_lines(c, dirs[o1], dirs[o2]):
            raise VerificationFailed(f"directrices of {o1.value}, {o2.value} are not {c.value} perpendicular")

    pairs = {}
    for c in COLORS:
        if line_null_in_color(c, dirs[c]):
            raise NullAltitude(c, dirs[c])
        if parabola_conic(c, foci[c], dirs[c]) != K:
            raise VerificationFailed(f"{c.value} pair does not regenerate the parabola")
        pairs[c] = FocusDirectrixPair(c, foci[c], dirs[c], foci[c].x.field.one)

    axis = axis_direction(K)
    for c in COLORS:
        if not is_parallel(perp_map(c, dirs[c].direction()), axis):
            raise VerificationFailed(f"{c.value} axis disagrees with the common axis direction")

    vertices, bases, tangents = {}, {}, {}
    for c in COLORS:
        ax = line_through_direction(foci[c], axis)
        (v,) = line_conic_meet(K, ax).points
        vertices[c] = v
        bases[c] = meet(ax, dirs[c])
        tangents[c] = tangent_at(K, v)
    meets: dict[Color, Point | None] = {}
    for c in COLORS:
        o1, o2 = c.others
        try:
            meets[c] = meet(tangents[o1], tangents[o2])
        except ParallelLines:
            meets[c] = None
    return ParabolaChromatics(pairs, axis, vertices, bases, meets)


def reflect_direction(c: Color, tangent: Line, incoming: Vec2) -> Vec2:
    """Reflect a direction in a line: keep the tangential part, negate the c-normal part."""
    t = tangent.direction()
    n = perp_map(c, t)
    det = cross(t, n)  # equals Q_c(t)
    if det.is_zero():
        raise NullTangent(c, tangent)
    alpha = cross(incoming, n) / det
    beta = cross(t, incoming) / det
    return t * alpha - n * beta


@dataclass(frozen=True)
class ParabolaFamily:
    focus: Point
    directrix: Line
    parabolas: dict[Color, Conic]
    feet: dict[Color, Point]
    focal_triangles: dict[Color, tuple[Point, Point, Point]]


def common_focus_directrix_family(F: Point, l: Line) -> ParabolaFamily:
    """The blue, red and green parabolas sharing focus F and directrix l."""
    if l.contains(F):
        raise FocusOnDirectrix(f"{F} lies on {l}")
    feet = {}
    for c in COLORS:
        try:
            feet[c] = altitude_and_foot(c, F, l)[1]
        except NullLine as exc:
            raise NullAltitude(c, l) from exc
    parabolas = {c: parabola_conic(c, F, l) for c in COLORS}
    triangles = {c: (F, feet[c.others[0]], feet[c.others[1]]) for c in COLORS}
    return ParabolaFamily(F, l, parabolas, feet, triangles)


__all__ = [
    "Conic",
    "conic",
    "evaluate",
    "contains",
    "polar_line",
    "pole",
    "tangent_at",
    "MeetResult",
    "line_conic_meet",
    "center",
    "sample_points",
    "conic_from_focus_directrix",
    "FocusDirectrixPair",
    "parabola_conic",
    "quadrola_poly",
    "quadrola_conic",
    "focus_ecc2",
    "quadrola_constant",
    "QuadrolaData",
    "quadrola_foci",
    "GrammolaData",
    "grammola_analyze",
    "grammola_spread_identity",
    "axis_direction",
    "ParabolaChromatics",
    "parabola_chromatics",
    "reflect_direction",
    "ParabolaFamily",
    "common_focus_directrix_family",
]
