"""Sparse polynomials in x and y over a field, used to expand locus equations."""

from __future__ import annotations

from .field import Field, FieldElement

# monomial order used when converting to conic coefficients
QUADRATIC_MONOMIALS = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))


class Poly2:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict[tuple[int, int], FieldElement] | None = None):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def const(cls, field: Field, c) -> Poly2:
        return cls(field, {(0, 0): field(c)})

    @classmethod
    def x(cls, field: Field) -> Poly2:
        return cls(field, {(1, 0): field.one})

    @classmethod
    def y(cls, field: Field) -> Poly2:
        return cls(field, {(0, 1): field.one})

    @classmethod
    def linear(cls, field: Field, a, b, c) -> Poly2:
        """The polynomial a*x + b*y + c."""
        return cls(field, {(1, 0): field(a), (0, 1): field(b), (0, 0): field(c)})

    def _lift(self, other) -> Poly2:
        if isinstance(other, Poly2):
            return other
        return Poly2.const(self.field, other)

    def __add__(self, other) -> Poly2:
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly2(self.field, out)

    __radd__ = __add__

    def __neg__(self) -> Poly2:
        return Poly2(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly2:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Poly2:
        return self._lift(other) - self

    def __mul__(self, other) -> Poly2:
        if not isinstance(other, Poly2):
            k = self.field(other)
            return Poly2(self.field, {m: c * k for m, c in self.terms.items()})
        out: dict[tuple[int, int], FieldElement] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                m = (i + k, j + l)
                out[m] = out[m] + c * d if m in out else c * d
        return Poly2(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly2:
        out = Poly2.const(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly2):
            return NotImplemented
        return (self - other).terms == {}

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> FieldElement:
        return self.terms.get((i, j), self.field.zero)

    def __call__(self, x, y) -> FieldElement:
        total = self.field.zero
        for (i, j), c in self.terms.items():
            total = total + c * x**i * y**j
        return total

    def quadratic_coeffs(self) -> tuple[FieldElement, ...]:
        """Coefficients (A, B, C, D, E, F) of Ax^2 + Bxy + Cy^2 + Dx + Ey + F."""
        if self.degree() > 2:
            raise ValueError(f"polynomial has degree {self.degree()}, expected at most 2")
        return tuple(self.coeff(i, j) for i, j in QUADRATIC_MONOMIALS)

    def __repr__(self) -> str:
        parts = [f"({c})*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items(), reverse=True)]
        return " + ".join(parts) or "0"
