import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chromogeometry.field import (
    QQ,
    CharacteristicTwo,
    DivisionByZero,
    FieldMismatch,
    PrimeField,
    QuadraticField,
    SquareRadicand,
    ZeroRadicand,
    arith,
    extend_by_sqrt,
    field_from_json,
    parse_field_spec,
    sqrt_in_field,
    tonelli_shanks,
)

F7 = PrimeField(7)
F13 = PrimeField(13)
F10007 = PrimeField(10007)
Q6 = extend_by_sqrt(QQ, 6).field
FP2 = extend_by_sqrt(F10007, 5).field  # 5 is the smallest non-residue mod 10007
TOWER = extend_by_sqrt(Q6, 11).field


def rand_elem(rng, f):
    if f is QQ:
        return QQ(Fraction(rng.randint(-50, 50), rng.randint(1, 50)))
    if isinstance(f, PrimeField):
        return f(rng.randrange(f.p))
    return f((rand_elem(rng, f.base), rand_elem(rng, f.base)))


FIELDS = [QQ, F7, F10007, Q6, FP2, TOWER]


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_field_axioms(f):
    rng = random.Random(2024)
    for _ in range(1000):
        a, b, c = (rand_elem(rng, f) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == f.zero
        if not a.is_zero():
            assert a * a.inverse() == f.one
            assert (b / a) * a == b


def test_arith_examples():
    assert arith(QQ("1/3"), QQ("1/6"), "add") == QQ("1/2")
    assert arith(F7(3), F7(5), "mul") == F7(1)
    s6 = extend_by_sqrt(QQ, 6).root
    assert arith(14 + 5 * s6, 14 - 5 * s6, "mul") == 46
    assert arith(QQ(2), None, "inv") == QQ("1/2")
    with pytest.raises(DivisionByZero):
        arith(QQ(1), QQ(0), "div")
    with pytest.raises(DivisionByZero):
        F7(0).inverse()
    with pytest.raises(FieldMismatch):
        arith(F7(1), F13(1), "add")
    with pytest.raises(FieldMismatch):
        F7(1) + QQ(1)


def test_sqrt_examples():
    assert sqrt_in_field(QQ("25/4")) == QQ("5/2")
    assert sqrt_in_field(F13(10)) == F13(6)
    assert sqrt_in_field(QQ(6)) is None
    assert sqrt_in_field(QQ(-4)) is None


@pytest.mark.parametrize("p", [q for q in range(3, 102) if all(q % k for k in range(2, q))])
def test_prime_sqrt_matches_brute_force(p):
    f = PrimeField(p)
    for x in range(p):
        roots = [r for r in range(p) if r * r % p == x]
        got = sqrt_in_field(f(x))
        if not roots:
            assert got is None
            assert tonelli_shanks(x, p) is None
        else:
            assert got is not None and int(got.raw) == min(roots)


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_sqrt_of_square_is_present(f):
    rng = random.Random(7)
    for _ in range(200):
        x = rand_elem(rng, f)
        r = sqrt_in_field(x * x)
        assert r is not None and r * r == x * x


def test_ordered_sqrt_is_nonnegative():
    s = extend_by_sqrt(QQ, 22).root
    x = (3 - s) * (3 - s)
    r = sqrt_in_field(x)
    assert r * r == x and r.sign() > 0 and r == s - 3


def test_extend_by_sqrt():
    f, r = extend_by_sqrt(QQ, 9)
    assert f is QQ and r == 3
    f, r = extend_by_sqrt(QQ, 6)
    assert isinstance(f, QuadraticField) and r.raw == (0, 1)
    # squarefree reduction: sqrt(600) = 10 sqrt(6) in the same field
    f2, r2 = extend_by_sqrt(QQ, 600)
    assert f2 == f and r2 == 10 * r
    q22 = extend_by_sqrt(QQ, 22).field
    t, s33 = extend_by_sqrt(q22, 33)
    assert t.depth == 2 and s33 * s33 == 33
    assert t.embed(extend_by_sqrt(QQ, 22).root) ** 2 == 22
    with pytest.raises(ZeroRadicand):
        extend_by_sqrt(QQ, 0)


def test_square_radicand_rejected():
    with pytest.raises(SquareRadicand) as err:
        QuadraticField(QQ, QQ(4).raw)
    assert err.value.root == 2


def test_characteristic_two_rejected():
    with pytest.raises(CharacteristicTwo):
        PrimeField(2)
    with pytest.raises(CharacteristicTwo):
        parse_field_spec("fp:2")
    with pytest.raises(ValueError):
        PrimeField(9)


def test_prime_extensions_share_descriptor():
    a = extend_by_sqrt(F10007, 5).field
    b = extend_by_sqrt(F10007, 7).field  # 7 is also a non-residue
    assert a == b


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_serialization_round_trip(f):
    rng = random.Random(11)
    desc = json.loads(json.dumps(f.to_json()))
    g = field_from_json(desc)
    assert g == f
    for _ in range(200):
        x = rand_elem(rng, f)
        text = json.dumps(x.to_json())
        y = g.parse(json.loads(text))
        assert y == x
        assert json.dumps(y.to_json()) == text


def test_text_encoding():
    assert QQ("6/-4").to_json() == "-3/2"
    assert QQ(5).to_json() == "5"
    assert F7(-1).to_json() == "6"
    s6 = extend_by_sqrt(QQ, 6).root
    assert (1 + 2 * s6).to_json() == {"a": "1", "b": "2"}
    with pytest.raises(ValueError):
        QQ.parse(3)


def test_subfield_elements_lift_and_descend():
    s6 = extend_by_sqrt(QQ, 6).root
    x = s6 * s6
    assert x == 6 and x.simplify().field == QQ
    u = TOWER.embed(s6)
    assert u * u == QQ(6)
    assert hash(TOWER(QQ(3))) == hash(QQ(3))
    # a depth-0 record parses in the tower as a rational
    assert TOWER.parse("5/2") == QQ("5/2")


def test_ordering_only_on_ordered_fields():
    assert QQ(1) < QQ(2)
    s = extend_by_sqrt(QQ, 2).root
    assert s - 1 > 0 and abs(1 - s) == s - 1
    with pytest.raises(TypeError):
        F7(1) < F7(2)


@settings(max_examples=200, deadline=None)
@given(st.fractions(max_denominator=10**6), st.fractions(max_denominator=10**6))
def test_rationals_match_fraction(a, b):
    assert QQ(a) + QQ(b) == QQ(a + b)
    assert QQ(a) * QQ(b) == QQ(a * b)
    if b:
        assert QQ(a) / QQ(b) == QQ(a / b)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10006))
def test_tonelli_squares_back(a):
    r = tonelli_shanks(a * a, 10007)
    assert r is not None and r * r % 10007 == a * a % 10007
