"""Exact scalar fields: the rationals, prime fields and towers of quadratic extensions.

Every geometric object in this package is generic over a :class:`Field`.
Elements are immutable :class:`FieldElement` values that carry their field
and a canonical raw representation, so equality is structural:

* rationals hold a ``gmpy2.mpq`` (reduced, positive denominator);
* prime fields hold an ``int`` residue in ``[0, p)``;
* a quadratic extension ``K(sqrt d)`` holds a pair ``(a, b)`` of raw base
  values meaning ``a + b*sqrt(d)``.

Elements of a subfield of a tower are lifted automatically when they meet
elements of the larger field; any other mixture raises :class:`FieldMismatch`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, NamedTuple

import gmpy2
from gmpy2 import mpq


class FieldMismatch(TypeError):
    """Operands live in fields that do not embed into one another."""


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroRadicand(ValueError):
    pass


class SquareRadicand(ValueError):
    """Raised when building K(sqrt d) for a d that already has a root in K."""

    def __init__(self, d: FieldElement, root: FieldElement):
        super().__init__(f"{d} is already a square in its field: ({root})^2 = {d}")
        self.d = d
        self.root = root


class CharacteristicTwo(ValueError):
    pass


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def tonelli_shanks(a: int, p: int) -> int | None:
    """Return some r with r*r == a (mod p), or None when a is a non-residue.

    The non-residue used for the 2-power part is the smallest one, so the
    result is a deterministic function of (a, p).
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


_SMALL_PRIMES = [q for q in range(2, 1000) if all(q % k for k in range(2, math.isqrt(q) + 1))]


def _strip_square_factors(n: int) -> tuple[int, int]:
    """Write n = core * k**2 by removing square factors of small primes."""
    k = 1
    for q in _SMALL_PRIMES:
        qq = q * q
        if qq > abs(n):
            break
        while n % qq == 0:
            n //= qq
            k *= q
    r = math.isqrt(abs(n))
    if r > 1 and r * r == abs(n):
        n //= r * r
        k *= r
    return n, k


class Field:
    """Base class for the supported fields.

    Subclasses implement the raw operations on canonical representations;
    user code works with :class:`FieldElement` values produced by calling the
    field, e.g. ``QQ(3)`` or ``QQ("5/6")``.
    """

    ordered: bool = False
    depth: int = 0

    # raw-level protocol -------------------------------------------------
    def _coerce(self, value: Any) -> Any:
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _sub(self, x, y):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _inv(self, x):
        raise NotImplementedError

    def _is_zero(self, x) -> bool:
        raise NotImplementedError

    def _sqrt(self, x):
        raise NotImplementedError

    def _leading_positive(self, x) -> bool:
        raise NotImplementedError

    def _hash(self, x) -> int:
        raise NotImplementedError

    def _encode(self, x) -> Any:
        raise NotImplementedError

    def _decode(self, obj: Any) -> Any:
        raise NotImplementedError

    def _text(self, x) -> str:
        raise NotImplementedError

    # public API --------------------------------------------------------
    def __call__(self, value: Any) -> FieldElement:
        if isinstance(value, FieldElement):
            return self.embed(value)
        return FieldElement(self, self._coerce(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, self._coerce(0))

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, self._coerce(1))

    def chain(self) -> list[Field]:
        """This field followed by each base field down to the prime field."""
        out: list[Field] = [self]
        f: Field = self
        while isinstance(f, QuadraticField):
            f = f.base
            out.append(f)
        return out

    def contains_field(self, other: Field) -> bool:
        return any(f == other for f in self.chain())

    def embed(self, x: FieldElement) -> FieldElement:
        """Lift an element of a subfield of this tower into this field."""
        if x.field == self:
            return x if x.field is self else FieldElement(self, x.raw)
        if isinstance(self, QuadraticField) and self.base.contains_field(x.field):
            inner = self.base.embed(x)
            return FieldElement(self, (inner.raw, self.base._coerce(0)))
        low = x.simplify()
        if low.field != x.field and self.contains_field(low.field):
            return self.embed(low)
        raise FieldMismatch(f"cannot embed an element of {x.field} into {self}")

    def parse(self, obj: Any) -> FieldElement:
        """Decode the text/record serialization of an element of this tower.

        Records nested less deeply than this field's depth denote elements
        of the corresponding subfield and are embedded.
        """
        level = _encoding_depth(obj)
        chain = self.chain()
        if level > self.depth:
            raise ValueError(f"encoding {obj!r} is deeper than {self}")
        sub = chain[self.depth - level]
        return self.embed(FieldElement(sub, sub._decode(obj)))

    def sqrt(self, x: FieldElement) -> FieldElement | None:
        return sqrt_in_field(self(x))

    def is_square(self, x: FieldElement) -> bool:
        return self.sqrt(x) is not None

    def to_json(self) -> dict:
        raise NotImplementedError

    @property
    def prime_field(self) -> Field:
        return self.chain()[-1]


def _encoding_depth(obj: Any) -> int:
    d = 0
    while isinstance(obj, dict):
        obj = obj["a"]
        d += 1
    return d


@dataclass(frozen=True)
class RationalField(Field):
    ordered = True

    def __repr__(self) -> str:
        return "QQ"

    def _coerce(self, value):
        if isinstance(value, str):
            return mpq(value.strip())
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return mpq(value)
        if type(value) is type(_MPQ_ZERO):
            return value
        if type(value) is type(gmpy2.mpz(0)):
            return mpq(value)
        raise TypeError(f"cannot coerce {value!r} to a rational")

    def _add(self, x, y):
        return x + y

    def _sub(self, x, y):
        return x - y

    def _mul(self, x, y):
        return x * y

    def _neg(self, x):
        return -x

    def _inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return 1 / x

    def _is_zero(self, x):
        return x == 0

    def _sqrt(self, x):
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        if gmpy2.is_square(n) and gmpy2.is_square(d):
            return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
        return None

    def _leading_positive(self, x):
        return x > 0

    def _sign(self, x) -> int:
        return (x > 0) - (x < 0)

    def _hash(self, x):
        return hash(x)

    def _encode(self, x):
        return str(x)

    def _decode(self, obj):
        if not isinstance(obj, str):
            raise ValueError(f"rational must be encoded as text, got {obj!r}")
        try:
            return mpq(Fraction(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {obj!r}") from exc

    def _text(self, x):
        return str(x)

    def _float(self, x) -> float:
        return float(x)

    def to_json(self) -> dict:
        return {"kind": "rational"}


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if self.p == 2:
            raise CharacteristicTwo("prime field F_2 has characteristic two; division by 2 is required")
        if self.p < 3 or not _is_probable_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def _coerce(self, value):
        p = self.p
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction) or type(value) is type(_MPQ_ZERO):
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {p}")
            return int(value.numerator) * pow(int(value.denominator), -1, p) % p
        if isinstance(value, int) and not isinstance(value, bool):
            return value % p
        raise TypeError(f"cannot coerce {value!r} into GF({p})")

    def _add(self, x, y):
        return (x + y) % self.p

    def _sub(self, x, y):
        return (x - y) % self.p

    def _mul(self, x, y):
        return x * y % self.p

    def _neg(self, x):
        return -x % self.p

    def _inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return pow(x, -1, self.p)

    def _is_zero(self, x):
        return x == 0

    def _sqrt(self, x):
        r = tonelli_shanks(x, self.p)
        if r is None:
            return None
        return min(r, self.p - r)

    def _leading_positive(self, x):
        return 0 < x <= (self.p - 1) // 2

    def _hash(self, x):
        return hash(x)

    def _encode(self, x):
        return str(x)

    def _decode(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, (str, int)):
            raise ValueError(f"residue must be decimal text, got {obj!r}")
        return int(obj) % self.p

    def _text(self, x):
        return str(x)

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def smallest_nonresidue(self) -> int:
        z = 2
        while pow(z, (self.p - 1) // 2, self.p) != self.p - 1:
            z += 1
        return z


@dataclass(frozen=True)
class QuadraticField(Field):
    """The extension ``base(sqrt d)``; ``d`` is a raw value of ``base``."""

    base: Field
    d: Any
    _hash_cache: int = dc_field(default=0, compare=False, repr=False)

    def __post_init__(self):
        b = self.base
        if b._is_zero(self.d):
            raise ZeroRadicand("cannot adjoin the square root of 0")
        r = b._sqrt(self.d)
        if r is not None:
            raise SquareRadicand(FieldElement(b, self.d), FieldElement(b, r))
        object.__setattr__(self, "_hash_cache", hash((b, b._hash(self.d))))
        object.__setattr__(self, "depth", b.depth + 1)
        ordered = b.ordered and b._sign(self.d) > 0
        object.__setattr__(self, "ordered", ordered)

    def __hash__(self):
        return self._hash_cache

    def __repr__(self) -> str:
        return f"{self.base!r}(sqrt {self.base._text(self.d)})"

    @property
    def radicand(self) -> FieldElement:
        return FieldElement(self.base, self.d)

    @property
    def root(self) -> FieldElement:
        """The adjoined square root, ``(0, 1)``."""
        return FieldElement(self, (self.base._coerce(0), self.base._coerce(1)))

    def _coerce(self, value):
        if isinstance(value, tuple) and len(value) == 2:
            a, b = value
            return (self.base(a).raw, self.base(b).raw)
        return (self.base._coerce(value), self.base._coerce(0))

    def _add(self, x, y):
        b = self.base
        return (b._add(x[0], y[0]), b._add(x[1], y[1]))

    def _sub(self, x, y):
        b = self.base
        return (b._sub(x[0], y[0]), b._sub(x[1], y[1]))

    def _mul(self, x, y):
        b = self.base
        a1, b1 = x
        a2, b2 = y
        re = b._add(b._mul(a1, a2), b._mul(self.d, b._mul(b1, b2)))
        im = b._add(b._mul(a1, b2), b._mul(b1, a2))
        return (re, im)

    def _neg(self, x):
        return (self.base._neg(x[0]), self.base._neg(x[1]))

    def _norm(self, x):
        b = self.base
        return b._sub(b._mul(x[0], x[0]), b._mul(self.d, b._mul(x[1], x[1])))

    def _inv(self, x):
        b = self.base
        n = self._norm(x)
        if b._is_zero(n):
            raise DivisionByZero("inverse of 0")
        ni = b._inv(n)
        return (b._mul(x[0], ni), b._neg(b._mul(x[1], ni)))

    def _is_zero(self, x):
        return self.base._is_zero(x[0]) and self.base._is_zero(x[1])

    def _sqrt(self, x):
        b = self.base
        zero = b._coerce(0)
        a, c = x
        if b._is_zero(c):
            r = b._sqrt(a)
            if r is not None:
                return (r, zero)
            t = b._sqrt(b._mul(a, b._inv(self.d)))
            if t is not None:
                return (zero, t)
            return None
        n = b._sqrt(self._norm(x))
        if n is None:
            return None
        half = b._inv(b._coerce(2))
        for cand in (b._add(a, n), b._sub(a, n)):
            u = b._sqrt(b._mul(cand, half))
            if u is not None and not b._is_zero(u):
                v = b._mul(c, b._inv(b._add(u, u)))
                return (u, v)
        return None

    def _leading_positive(self, x):
        if not self.base._is_zero(x[0]):
            return self.base._leading_positive(x[0])
        return self.base._leading_positive(x[1])

    def _sign(self, x) -> int:
        b = self.base
        sa, sb = b._sign(x[0]), b._sign(x[1])
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # a and b*sqrt(d) have opposite signs: compare a^2 with d*b^2
        return sa * b._sign(self._norm(x))

    def _float(self, x) -> float:
        b = self.base
        return b._float(x[0]) + b._float(x[1]) * math.sqrt(b._float(self.d))

    def _hash(self, x):
        if self.base._is_zero(x[1]):
            return self.base._hash(x[0])
        return hash((self.base._hash(x[0]), self.base._hash(x[1])))

    def _encode(self, x):
        return {"a": self.base._encode(x[0]), "b": self.base._encode(x[1])}

    def _decode(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"a", "b"}:
            raise ValueError(f"quadratic element must be a record {{a, b}}, got {obj!r}")
        return (self.base._decode(obj["a"]), self.base._decode(obj["b"]))

    def _text(self, x):
        b = self.base
        a, c = x
        rt = f"sqrt({b._text(self.d)})"
        if b._is_zero(c):
            return b._text(a)
        im = rt if c == b._coerce(1) else f"({b._text(c)})*{rt}"
        if b._is_zero(a):
            return im
        return f"{b._text(a)} + {im}"

    def to_json(self) -> dict:
        return {"kind": "quadratic", "base": self.base.to_json(), "d": self.base._encode(self.d)}


_MPQ_ZERO = mpq(0)

QQ = RationalField()


class FieldElement:
    """An immutable exact scalar of a :class:`Field`."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw: Any):
        self.field = field
        self.raw = raw

    def __reduce__(self):
        return (FieldElement, (self.field, self.raw))

    # coercion ---------------------------------------------------------
    def _pair(self, other) -> tuple[Field, Any, Any] | None:
        f = self.field
        if isinstance(other, FieldElement):
            g = other.field
            if g is f or g == f:
                return f, self.raw, other.raw
            if f.contains_field(g):
                return f, self.raw, f.embed(other).raw
            if g.contains_field(f):
                return g, g.embed(self).raw, other.raw
            x, y = self.simplify(), other.simplify()
            if x.field != f or y.field != g:
                return x._pair(y)
            raise FieldMismatch(f"{f} and {g} are unrelated fields")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return f, self.raw, f._coerce(other)
        if type(other) is type(_MPQ_ZERO):
            return f, self.raw, f._coerce(other)
        return None

    def _binop(self, other, op, reverse=False):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, x, y = pr
        if reverse:
            x, y = y, x
        return FieldElement(f, getattr(f, op)(x, y))

    def __add__(self, other):
        return self._binop(other, "_add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, "_sub")

    def __rsub__(self, other):
        return self._binop(other, "_sub", reverse=True)

    def __mul__(self, other):
        return self._binop(other, "_mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, x, y = pr
        return FieldElement(f, f._mul(x, f._inv(y)))

    def __rtruediv__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, x, y = pr
        return FieldElement(f, f._mul(y, f._inv(x)))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.raw))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        f = self.field
        result, base = f._coerce(1), self.raw
        while n:
            if n & 1:
                result = f._mul(result, base)
            base = f._mul(base, base)
            n >>= 1
        return FieldElement(f, result)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field._inv(self.raw))

    def __eq__(self, other):
        try:
            pr = self._pair(other)
        except FieldMismatch:
            return False
        if pr is None:
            return NotImplemented
        f, x, y = pr
        return f._is_zero(f._sub(x, y))

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return self.field._hash(self.raw)

    def __bool__(self):
        return not self.field._is_zero(self.raw)

    def is_zero(self) -> bool:
        return self.field._is_zero(self.raw)

    # ordering (only for towers over QQ with positive radicands) ---------
    def sign(self) -> int:
        if not self.field.ordered:
            raise TypeError(f"{self.field} carries no ordering")
        return self.field._sign(self.raw)

    def __abs__(self) -> FieldElement:
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        if not self.field.ordered and not isinstance(self.field, RationalField):
            raise TypeError(f"{self.field} has no real embedding")
        return self.field._float(self.raw)

    # structure ---------------------------------------------------------
    @property
    def a(self) -> FieldElement:
        """Rational part a of a + b*sqrt(d) (quadratic fields only)."""
        return FieldElement(self.field.base, self.raw[0])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.field.base, self.raw[1])

    def simplify(self) -> FieldElement:
        """Descend to the smallest field of the tower holding this value."""
        x = self
        while isinstance(x.field, QuadraticField) and x.field.base._is_zero(x.raw[1]):
            x = FieldElement(x.field.base, x.raw[0])
        return x

    def to_json(self) -> Any:
        return self.field._encode(self.raw)

    def __str__(self):
        return self.field._text(self.raw)

    def __repr__(self):
        return f"{self.field!r}[{self}]"


def arith(x: FieldElement, y: FieldElement | None, op: str) -> FieldElement:
    """Functional form of the field operations: add, sub, mul, div, neg, inv."""
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if y is None:
        raise TypeError(f"{op} needs two operands")
    if not isinstance(y, FieldElement) or not (
        x.field.contains_field(y.field) or y.field.contains_field(x.field)
    ):
        raise FieldMismatch(f"{x!r} and {y!r} come from different fields")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sqrt_in_field(x: FieldElement) -> FieldElement | None:
    """A canonical square root of ``x`` inside its own field, or None.

    Ordered fields return the nonnegative root. Otherwise the root whose
    leading nonzero coordinate is "positive" (a residue at most (p-1)/2,
    recursively through the tower) is chosen.
    """
    f = x.field
    r = f._sqrt(x.raw)
    if r is None:
        return None
    if f.ordered:
        if f._sign(r) < 0:
            r = f._neg(r)
    elif not f._is_zero(r) and not f._leading_positive(r):
        r = f._neg(r)
    return FieldElement(f, r)


class Extension(NamedTuple):
    field: Field
    root: FieldElement


def extend_by_sqrt(field: Field, d: FieldElement | int | Fraction) -> Extension:
    """Return a field containing a square root of ``d`` together with that root.

    If ``d`` is already a square the field comes back unchanged. Otherwise a
    new quadratic layer is built. Rational radicands are reduced to a
    squarefree-ish core (sqrt 600 lives in QQ(sqrt 6) as 10*sqrt 6), and over a
    prime field every non-residue is traded for the smallest one so that all
    degree-2 extensions of GF(p) share one descriptor.
    """
    d = field(d)
    if d.is_zero():
        raise ZeroRadicand("cannot adjoin the square root of 0")
    r = sqrt_in_field(d)
    if r is not None:
        return Extension(field, r)
    low = d.simplify()
    core: FieldElement = d
    scale: FieldElement = field.one
    if isinstance(low.field, RationalField):
        q = low.raw
        n, k = _strip_square_factors(int(q.numerator) * int(q.denominator))
        core = field(n)
        scale = field(Fraction(k, int(q.denominator)))
    elif isinstance(low.field, PrimeField) and isinstance(field, PrimeField):
        z = field(field.smallest_nonresidue())
        core = z
        scale = sqrt_in_field(d / z)
    ext = QuadraticField(field, core.raw)
    return Extension(ext, ext.embed(scale) * ext.root)


def field_from_json(obj: dict) -> Field:
    kind = obj.get("kind")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(int(obj["p"]))
    if kind == "quadratic":
        base = field_from_json(obj["base"])
        return QuadraticField(base, base.parse(obj["d"]).raw)
    raise ValueError(f"unknown field descriptor {obj!r}")


def common_field(*xs: FieldElement) -> Field:
    """The largest field among elements that all lie in one tower."""
    best: Field | None = None
    for x in xs:
        f = x.field
        if best is None or f.contains_field(best):
            best = f
        elif not best.contains_field(f):
            low = x.simplify().field
            if best.contains_field(low):
                continue
            raise FieldMismatch(f"{best} and {f} are unrelated fields")
    if best is None:
        raise ValueError("no elements given")
    return best


def parse_field_spec(text: str) -> Field:
    """Parse the command-line field syntax: ``q``/``rational``, ``fp:P`` or ``p=P``."""
    t = text.strip().lower()
    if t in ("q", "qq", "rational", "rationals"):
        return QQ
    for prefix in ("fp:", "p=", "gf:", "f_"):
        if t.startswith(prefix):
            return PrimeField(int(t[len(prefix):]))
    raise ValueError(f"unrecognised field {text!r}; use 'q' or 'fp:<odd prime>'")
