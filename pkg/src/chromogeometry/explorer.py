"""Seeded counterexample search for the three-colored laws.

Each law is a pair (draw, check). ``draw`` builds a JSON-serializable
configuration from a per-trial RNG; ``check`` evaluates the law on it and
either returns the sub-expressions it compared or raises :class:`Skip` when
the configuration falls outside the law's preconditions. Per-trial seeds
depend only on (master_seed, index), so results never depend on scheduling.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable

from . import conics, metric, trig
from .errors import FocusOnDirectrix, GeometryError, NoDiagonals, NullLine, ParseError, UndefinedSpread
from .field import Field, FieldElement, QuadraticField, RationalField, field_from_json
from .metric import COLORS, Color, Line, Point, Vec2


class LawId(str, Enum):
    PYTHAGORAS_IFF = "pythagoras_iff"
    TRIPLE_QUAD_IFF = "triple_quad_iff"
    SPREAD_LAW = "spread_law"
    CROSS_LAW = "cross_law"
    TRIPLE_SPREAD = "triple_spread"
    QUADRANCE_SQUARE_IDENTITY = "quadrance_square_identity"
    SPREAD_HARMONIC_2 = "spread_harmonic_2"
    ARCHIMEDES_SIGN = "archimedes_sign"
    PARABOLA_INCIDENCE = "parabola_incidence"
    GRAMMOLA_SIGN_LAW = "grammola_sign_law"


class Skip(Exception):
    """The drawn configuration violates a precondition of the law."""

    def __init__(self, category: str):
        super().__init__(category)
        self.category = category


# skip categories a report may contain
SKIP_CATEGORIES = (
    "coincident_points",
    "zero_vector",
    "null_line",
    "zero_quadrance",
    "parallel_lines",
    "focus_on_directrix",
    "no_diagonals",
    "no_corners",
)

DEFAULT_HEIGHT = 100


def trial_seed(master_seed: int, index: int) -> int:
    h = hashlib.blake2b(f"{master_seed}:{index}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


# ---------------------------------------------------------------------------
# random draws


def _rand_elem(rng: random.Random, f: Field, height: int) -> FieldElement:
    if isinstance(f, RationalField):
        return f(Fraction(rng.randint(-height, height), rng.randint(1, height)))
    if isinstance(f, QuadraticField):
        return f((_rand_elem(rng, f.base, height), _rand_elem(rng, f.base, height)))
    return f(rng.randrange(f.p))


def _rand_nonzero(rng, f, height) -> FieldElement:
    while True:
        x = _rand_elem(rng, f, height)
        if not x.is_zero():
            return x


def _enc(x: FieldElement) -> Any:
    return x.to_json()


def _draw(kind: str, rng: random.Random, f: Field, height: int) -> Any:
    if kind in ("point", "vector"):
        return [_enc(_rand_elem(rng, f, height)) for _ in range(2)]
    if kind == "scalar":
        return _enc(_rand_nonzero(rng, f, height))
    if kind == "line":
        while True:
            a, b = _rand_elem(rng, f, height), _rand_elem(rng, f, height)
            if not (a.is_zero() and b.is_zero()):
                return [_enc(a), _enc(b), _enc(_rand_elem(rng, f, height))]
    if kind == "triangle":
        return [_draw("point", rng, f, height) for _ in range(3)]
    if kind == "parabola-input":
        return {
            "color": rng.choice(COLORS).value,
            "focus": _draw("point", rng, f, height),
            "directrix": _draw("line", rng, f, height),
        }
    if kind == "conic":
        # over ordered fields draw ellipses (A, C > 0, B^2 < 4AC) so the real
        # analyses usually exist; over finite fields any central conic will do
        if f.ordered:
            while True:
                a = abs(_rand_nonzero(rng, f, height))
                c = abs(_rand_nonzero(rng, f, height))
                b = _rand_elem(rng, f, height)
                if b * b < 4 * a * c:
                    break
            k0 = abs(_rand_nonzero(rng, f, height))
        else:
            a, b, c = (_rand_elem(rng, f, height) for _ in range(3))
            k0 = _rand_nonzero(rng, f, height)
        h, k = _rand_elem(rng, f, height), _rand_elem(rng, f, height)
        # a(x-h)^2 + b(x-h)(y-k) + c(y-k)^2 = k0
        coeffs = [
            a,
            b,
            c,
            -2 * a * h - b * k,
            -b * h - 2 * c * k,
            a * h * h + b * h * k + c * k * k - k0,
        ]
        return [_enc(v) for v in coeffs]
    raise ValueError(f"unknown configuration kind {kind!r}")


def random_config(kind: str, field: Field, seed: int, height: int = DEFAULT_HEIGHT) -> Any:
    """A deterministic random configuration of the given kind."""
    return _draw(kind, random.Random(seed), field, height)


def _pt(f: Field, enc) -> Point:
    return Point(f.parse(enc[0]), f.parse(enc[1]))


def _vec(f: Field, enc) -> Vec2:
    return Vec2(f.parse(enc[0]), f.parse(enc[1]))


def _line(f: Field, enc) -> Line:
    return Line(*(f.parse(v) for v in enc))


def _triangle(f: Field, enc) -> trig.Triangle:
    pts = [_pt(f, p) for p in enc]
    try:
        return trig.Triangle(*pts)
    except GeometryError:
        raise Skip("coincident_points")


# ---------------------------------------------------------------------------
# law checks; each returns {name: (lhs, rhs)} of compared sub-expressions


Comparisons = dict[str, tuple[Any, Any]]


def _check_pythagoras(f: Field, cfg) -> Comparisons:
    out: Comparisons = {}
    a3 = _pt(f, cfg["A3"])
    v = _vec(f, cfg["v"])
    t = f.parse(cfg["t"])
    if v.is_zero():
        raise Skip("zero_vector")
    for c in COLORS:
        a1 = a3 + v
        a2 = a3 + metric.perp_map(c, v) * t
        q1, q2, q3 = metric.quadrance(c, a2, a3), metric.quadrance(c, a1, a3), metric.quadrance(c, a1, a2)
        out[f"{c.value}.forward Q1+Q2 vs Q3"] = (q1 + q2, q3)
    tri = _triangle(f, cfg["triangle"])
    a1, a2, a3 = tri.vertices
    for c in COLORS:
        q1, q2, q3 = metric.quadrance(c, a2, a3), metric.quadrance(c, a1, a3), metric.quadrance(c, a1, a2)
        perp = metric.is_perpendicular_lines(c, metric.line_through(a1, a3), metric.line_through(a2, a3))
        out[f"{c.value}.converse (Q1+Q2==Q3) vs perpendicular"] = (q1 + q2 == q3, perp)
    return out


def _check_triple_quad(f: Field, cfg) -> Comparisons:
    out: Comparisons = {}
    a1, a2 = _pt(f, cfg["A1"]), _pt(f, cfg["A2"])
    t = f.parse(cfg["t"])
    if a1 == a2:
        raise Skip("coincident_points")
    a3 = a1 + (a2 - a1) * t
    for c in COLORS:
        q1, q2, q3 = metric.quadrance(c, a2, a3), metric.quadrance(c, a1, a3), metric.quadrance(c, a1, a2)
        out[f"{c.value}.forward A(Q1,Q2,Q3)"] = (trig.archimedes(q1, q2, q3), f.zero)
    tri = _triangle(f, cfg["triangle"])
    b1, b2, b3 = tri.vertices
    for c in COLORS:
        q1, q2, q3 = metric.quadrance(c, b2, b3), metric.quadrance(c, b1, b3), metric.quadrance(c, b1, b2)
        out[f"{c.value}.converse (A==0) vs collinear"] = (trig.archimedes(q1, q2, q3).is_zero(), tri.is_degenerate)
    return out


def _profiles(f: Field, cfg, need_spreads=(0, 1, 2)) -> dict[Color, trig.TriangleProfile]:
    tri = _triangle(f, cfg)
    profs = {}
    for c in COLORS:
        p = trig.profile(tri, c)
        if any(p.spreads[i] is None for i in need_spreads):
            raise Skip("null_line")
        profs[c] = p
    return profs


def _check_spread_law(f: Field, cfg) -> Comparisons:
    out: Comparisons = {}
    profs = _profiles(f, cfg)
    for c, p in profs.items():
        if any(q.is_zero() for q in p.quadrances):
            raise Skip("zero_quadrance")
        r1, r2, r3 = trig.check_spread_law(p)
        out[f"{c.value}.s1/Q1 vs s2/Q2"] = (r1, r2)
        out[f"{c.value}.s2/Q2 vs s3/Q3"] = (r2, r3)
        out[f"{c.value}.s3/Q3 vs A/(4Q1Q2Q3)"] = (r3, trig.spread_law_ratio(p))
    return out


def _check_cross_law(f: Field, cfg) -> Comparisons:
    profs = _profiles(f, cfg, need_spreads=(2,))
    return {f"{c.value}.cross": trig.check_cross_law(p) for c, p in profs.items()}


def _check_triple_spread(f: Field, cfg) -> Comparisons:
    profs = _profiles(f, cfg)
    return {f"{c.value}.triple_spread": trig.check_triple_spread(*p.spreads) for c, p in profs.items()}


def _check_quadrance_square(f: Field, cfg) -> Comparisons:
    p1, p2 = _pt(f, cfg["A1"]), _pt(f, cfg["A2"])
    r = metric.cross_color_checks(p1, p2)
    return {"Qb^2 vs Qr^2+Qg^2": (r.blue_squared, r.red_plus_green_squared)}


def _check_spread_harmonic(f: Field, cfg) -> Comparisons:
    l1, l2 = _line(f, cfg["l1"]), _line(f, cfg["l2"])
    if metric.is_parallel(l1.direction(), l2.direction()):
        raise Skip("parallel_lines")
    total = metric.spread_harmonic(l1, l2)
    if total is None:
        raise Skip("null_line")
    return {"1/sb+1/sr+1/sg vs 2": (total, f(2))}


def _check_archimedes_sign(f: Field, cfg) -> Comparisons:
    tri = _triangle(f, cfg)
    area = trig.signed_area(tri)
    a1, a2, a3 = tri.vertices
    out: Comparisons = {}
    for c in COLORS:
        q1, q2, q3 = metric.quadrance(c, a2, a3), metric.quadrance(c, a1, a3), metric.quadrance(c, a1, a2)
        out[f"{c.value}.A(Q) vs sigma*16*area^2"] = (trig.archimedes(q1, q2, q3), c.sigma * 16 * area * area)
    return out


def _check_parabola(f: Field, cfg) -> Comparisons:
    c = Color.parse(cfg["color"])
    F = _pt(f, cfg["focus"])
    l = _line(f, cfg["directrix"])
    if l.contains(F):
        raise Skip("focus_on_directrix")
    if any(metric.line_null_in_color(col, l) for col in COLORS):
        raise Skip("null_line")
    K = conics.parabola_conic(c, F, l)
    pc = conics.parabola_chromatics(K, conics.FocusDirectrixPair(c, F, l, f.one))
    out: Comparisons = {}
    dirs = {col: pc.pairs[col].directrix for col in COLORS}
    for col in COLORS:
        o1, o2 = col.others
        out[f"F_{col.value} vs l_{o1.value} meet l_{o2.value}"] = (pc.pairs[col].focus, metric.meet(dirs[o1], dirs[o2]))
        out[f"l_{o1.value} {col.value}-perpendicular l_{o2.value}"] = (
            metric.is_perpendicular_lines(col, dirs[o1], dirs[o2]),
            True,
        )
        out[f"{col.value} pair regenerates conic"] = (conics.parabola_conic(col, pc.pairs[col].focus, dirs[col]), K)
        out[f"{col.value} axis parallel to common axis"] = (
            metric.is_parallel(metric.perp_map(col, dirs[col].direction()), pc.axis_direction),
            True,
        )
    return out


def _check_grammola(f: Field, cfg) -> Comparisons:
    try:
        K = conics.Conic(*(f.parse(v) for v in cfg))
    except GeometryError:
        raise Skip("no_diagonals")
    data = {}
    for c in COLORS:
        try:
            data[c] = conics.grammola_analyze(c, K, corners=False)
        except NoDiagonals:
            raise Skip("no_diagonals")
        if data[c].corner_product is None:
            raise Skip("no_corners")
    p = data[Color.BLUE].corner_product
    return {
        "red product vs -blue product": (data[Color.RED].corner_product, -p),
        "green product vs -blue product": (data[Color.GREEN].corner_product, -p),
    }


@dataclass(frozen=True)
class Law:
    draw: Callable[[random.Random, Field, int], Any]
    check: Callable[[Field, Any], Comparisons]


def _d(**kinds):
    def draw(rng, f, height):
        return {k: _draw(kind, rng, f, height) for k, kind in kinds.items()}

    return draw


LAWS: dict[LawId, Law] = {
    LawId.PYTHAGORAS_IFF: Law(_d(A3="point", v="vector", t="scalar", triangle="triangle"), _check_pythagoras),
    LawId.TRIPLE_QUAD_IFF: Law(_d(A1="point", A2="point", t="scalar", triangle="triangle"), _check_triple_quad),
    LawId.SPREAD_LAW: Law(lambda r, f, h: _draw("triangle", r, f, h), _check_spread_law),
    LawId.CROSS_LAW: Law(lambda r, f, h: _draw("triangle", r, f, h), _check_cross_law),
    LawId.TRIPLE_SPREAD: Law(lambda r, f, h: _draw("triangle", r, f, h), _check_triple_spread),
    LawId.QUADRANCE_SQUARE_IDENTITY: Law(_d(A1="point", A2="point"), _check_quadrance_square),
    LawId.SPREAD_HARMONIC_2: Law(_d(l1="line", l2="line"), _check_spread_harmonic),
    LawId.ARCHIMEDES_SIGN: Law(lambda r, f, h: _draw("triangle", r, f, h), _check_archimedes_sign),
    LawId.PARABOLA_INCIDENCE: Law(lambda r, f, h: _draw("parabola-input", r, f, h), _check_parabola),
    LawId.GRAMMOLA_SIGN_LAW: Law(lambda r, f, h: _draw("conic", r, f, h), _check_grammola),
}


def law_set_hash() -> str:
    names = ",".join(sorted(l.value for l in LawId))
    return hashlib.sha256(names.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# running


def _render(v: Any) -> str:
    if isinstance(v, FieldElement):
        return str(v.simplify())
    return str(v)


@dataclass
class CheckResult:
    ok: bool
    skipped: str | None
    comparisons: dict[str, tuple[str, str, bool]] = dc_field(default_factory=dict)
    error: str | None = None

    def describe(self) -> str:
        if self.skipped:
            return f"skipped: {self.skipped}"
        lines = []
        for name, (lhs, rhs, same) in self.comparisons.items():
            mark = "ok      " if same else "MISMATCH"
            lines.append(f"{mark} {name}: {lhs} | {rhs}")
        if self.error:
            lines.append(f"ERROR {self.error}")
        if self.ok:
            lines.append("no failure")
        return "\n".join(lines)


def run_check(law: LawId, f: Field, config: Any) -> CheckResult:
    try:
        comps = LAWS[law].check(f, config)
    except Skip as s:
        return CheckResult(ok=True, skipped=s.category)
    except GeometryError as exc:
        # a construction refusing a configuration that passed the law's own
        # preconditions is a failure, not a skip
        return CheckResult(ok=False, skipped=None, error=f"{type(exc).__name__}: {exc}")
    rendered = {}
    ok = True
    for name, (lhs, rhs) in comps.items():
        same = lhs == rhs
        ok = ok and same
        rendered[name] = (_render(lhs), _render(rhs), same)
    return CheckResult(ok=ok, skipped=None, comparisons=rendered)


@dataclass
class TrialReport:
    law: LawId
    field: Field
    trials_requested: int
    trials_valid: int
    skips: dict[str, int]
    failures: list[dict]
    master_seed: int
    height: int | None

    def to_json(self) -> dict:
        return {
            "law": self.law.value,
            "field": self.field.to_json(),
            "height": self.height,
            "master_seed": self.master_seed,
            "trials_requested": self.trials_requested,
            "trials_valid": self.trials_valid,
            "skips": dict(sorted(self.skips.items())),
            "failures": self.failures,
        }


def _one_trial(args) -> tuple[int, Any, CheckResult]:
    law, f, index, master_seed, height = args
    seed = trial_seed(master_seed, index)
    cfg = LAWS[law].draw(random.Random(seed), f, height)
    return index, cfg, run_check(law, f, cfg)


def verify(
    law: LawId | str,
    field: Field,
    trials: int,
    master_seed: int,
    height: int = DEFAULT_HEIGHT,
    jobs: int = 1,
) -> TrialReport:
    law = LawId(law)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    args = [(law, field, i, master_seed, height) for i in range(trials)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_one_trial, args, chunksize=max(1, trials // (4 * jobs))))
    else:
        results = [_one_trial(a) for a in args]
    skips: dict[str, int] = {}
    failures = []
    valid = 0
    for index, cfg, res in results:  # index order
        if res.skipped:
            skips[res.skipped] = skips.get(res.skipped, 0) + 1
            continue
        valid += 1
        if not res.ok:
            failures.append(
                {
                    "law": law.value,
                    "field": field.to_json(),
                    "index": index,
                    "seed": trial_seed(master_seed, index),
                    "config": cfg,
                    "detail": res.describe(),
                }
            )
    return TrialReport(
        law=law,
        field=field,
        trials_requested=trials,
        trials_valid=valid,
        skips=skips,
        failures=failures,
        master_seed=master_seed,
        height=height if field.prime_field == RationalField() else None,
    )


def replay(failure: dict | str) -> CheckResult:
    """Re-run one serialized configuration and report each compared sub-expression."""
    try:
        if isinstance(failure, str):
            failure = json.loads(failure)
        law = LawId(failure["law"])
        f = field_from_json(failure["field"])
        cfg = failure["config"]
        return run_check(law, f, cfg)
    except (KeyError, IndexError, ValueError, TypeError) as exc:
        raise ParseError(f"cannot parse failure record: {exc}") from exc
