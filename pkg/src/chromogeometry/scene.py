"""Scenes: named objects plus an ordered batch of exact queries.

A scene is JSON::

    {
      "field": "q",                       # or "fp:7", or a field descriptor
      "window": [xmin, xmax, ymin, ymax],  # optional, rendering only
      "objects": [
        {"name": "A", "point": ["0", "0"]},
        {"name": "l", "line": ["2", "1", "-6"]},
        {"name": "K", "conic": [2, -4, 5, 0, 0, -6]},
        {"name": "T", "triangle": ["A", "B", "C"]}
      ],
      "queries": [
        {"op": "profile", "color": "blue", "args": ["T"]},
        {"op": "parabola", "color": "red", "args": ["F", "l"], "as": "P"}
      ]
    }

Coordinates use the field-element encoding of :mod:`chromogeometry.field`.
A query with ``"as"`` binds its result (a point, line or conic) to a new name.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

from . import conics, metric, trig
from .errors import GeometryError, ParseError, UnknownReference
from .field import (
    DivisionByZero,
    Field,
    FieldElement,
    FieldMismatch,
    common_field,
    field_from_json,
    parse_field_spec,
)
from .metric import Color, Line, Point, Vec2


@dataclass(frozen=True)
class Query:
    op: str
    color: Color | None
    args: tuple[str, ...]
    params: dict
    bind: str | None = None


@dataclass
class Scene:
    field: Field
    objects: dict[str, Any]
    queries: list[Query]
    window: tuple[float, float, float, float] | None = None
    source: dict | None = None

    def to_json(self) -> dict:
        """The scene's own serialization (objects re-encoded canonically)."""
        objs = []
        for name, obj in self.objects.items():
            if isinstance(obj, trig.Triangle):
                refs = [self._name_of(p) for p in obj.vertices]
                objs.append({"name": name, "triangle": refs})
            else:
                objs.append({"name": name, **encode(obj)})
        out = {
            "field": self.field.to_json(),
            "objects": objs,
            "queries": [
                {
                    k: v
                    for k, v in {
                        "op": q.op,
                        "color": q.color.value if q.color else None,
                        "args": list(q.args),
                        "params": q.params or None,
                        "as": q.bind,
                    }.items()
                    if v is not None
                }
                for q in self.queries
            ],
        }
        if self.window is not None:
            out["window"] = list(self.window)
        return out

    def _name_of(self, p: Point) -> str:
        for name, obj in self.objects.items():
            if obj == p and isinstance(obj, Point):
                return name
        raise UnknownReference(f"no named point {p}")


# ---------------------------------------------------------------------------
# encoding of results


def encode(v: Any) -> Any:
    """JSON form of a result; field elements are written at their minimal tower level."""
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, FieldElement):
        return v.simplify().to_json()
    if isinstance(v, Color):
        return v.value
    if isinstance(v, Enum):
        return v.value
    if isinstance(v, Field):
        return v.to_json()
    if isinstance(v, Point):
        return {"point": [encode(v.x), encode(v.y)]}
    if isinstance(v, Vec2):
        return {"vector": [encode(v.a), encode(v.b)]}
    if isinstance(v, Line):
        return {"line": [encode(v.a), encode(v.b), encode(v.c)]}
    if isinstance(v, conics.Conic):
        return {"conic": [encode(x) for x in v.coeffs]}
    if isinstance(v, (list, tuple)):
        return [encode(x) for x in v]
    if isinstance(v, dict):
        return {(k.value if isinstance(k, Enum) else str(k)): encode(x) for k, x in v.items()}
    if dataclasses.is_dataclass(v):
        out = {f.name: encode(getattr(v, f.name)) for f in dataclasses.fields(v)}
        if isinstance(v, trig.TriangleProfile):
            out["archimedes"] = encode(v.archimedes)
        return out
    raise TypeError(f"cannot encode {type(v).__name__}")


def _elements(v: Any):
    if isinstance(v, FieldElement):
        yield v
    elif isinstance(v, (Point, Vec2, Line, conics.Conic)) or (
        dataclasses.is_dataclass(v) and not isinstance(v, type)
    ):
        for f in dataclasses.fields(v):
            yield from _elements(getattr(v, f.name))
    elif isinstance(v, (list, tuple)):
        for x in v:
            yield from _elements(x)
    elif isinstance(v, dict):
        for x in v.values():
            yield from _elements(x)


def result_tower(v: Any) -> Field | None:
    """Smallest field of the ambient tower containing every element of a result."""
    elems = [x.simplify() for x in _elements(v)]
    if not elems:
        return None
    return common_field(*elems)


# ---------------------------------------------------------------------------
# parsing


def _parse_field(obj: Any) -> Field:
    try:
        if isinstance(obj, str):
            return parse_field_spec(obj)
        if isinstance(obj, dict):
            return field_from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad field descriptor {obj!r}: {exc}") from exc
    raise ParseError(f"bad field descriptor {obj!r}")


def _elems(f: Field, raw: Any, n: int, what: str) -> list[FieldElement]:
    if not isinstance(raw, list) or len(raw) != n:
        raise ParseError(f"{what} needs a list of {n} coordinates, got {raw!r}")
    try:
        return [_scalar(f, x) for x in raw]
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse {what} coordinates {raw!r}: {exc}") from exc


def _scalar(f: Field, x: Any) -> FieldElement:
    # scenes may write integers as bare JSON numbers
    if isinstance(x, int) and not isinstance(x, bool):
        x = str(x)
    return f.parse(x)


def _parse_object(f: Field, obj: dict, objects: dict) -> Any:
    kinds = [k for k in ("point", "line", "conic", "triangle") if k in obj]
    if len(kinds) != 1:
        raise ParseError(f"object {obj!r} needs exactly one of point, line, conic, triangle")
    kind = kinds[0]
    try:
        if kind == "point":
            return Point(*_elems(f, obj["point"], 2, "point"))
        if kind == "line":
            return Line(*_elems(f, obj["line"], 3, "line"))
        if kind == "conic":
            return conics.Conic(*_elems(f, obj["conic"], 6, "conic"))
    except (ValueError, GeometryError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"invalid {kind} {obj.get('name')!r}: {exc}") from exc
    refs = obj["triangle"]
    if not isinstance(refs, list) or len(refs) != 3:
        raise ParseError("a triangle needs three point references")
    pts = []
    for r in refs:
        if r not in objects:
            raise UnknownReference(f"unknown reference {r!r}")
        if not isinstance(objects[r], Point):
            raise ParseError(f"triangle vertex {r!r} is not a point")
        pts.append(objects[r])
    try:
        return trig.Triangle(*pts)
    except GeometryError as exc:
        raise ParseError(f"invalid triangle {obj.get('name')!r}: {exc}") from exc


def parse_scene(data: dict | str) -> Scene:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"scene is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "field" not in data:
        raise ParseError("a scene is a JSON object with a 'field' entry")
    f = _parse_field(data["field"])
    objects: dict[str, Any] = {}
    for obj in data.get("objects", []):
        if not isinstance(obj, dict) or not isinstance(obj.get("name"), str):
            raise ParseError(f"object {obj!r} needs a string 'name'")
        if obj["name"] in objects:
            raise ParseError(f"duplicate object name {obj['name']!r}")
        objects[obj["name"]] = _parse_object(f, obj, objects)
    names = set(objects)
    queries = []
    for q in data.get("queries", []):
        if not isinstance(q, dict) or q.get("op") not in OPS:
            raise ParseError(f"unknown query {q!r}")
        opspec = OPS[q["op"]]
        color = None
        if opspec.colored:
            try:
                color = Color.parse(q.get("color", ""))
            except (ValueError, AttributeError) as exc:
                raise ParseError(f"query {q['op']!r} needs a color") from exc
        args = q.get("args", [])
        if not isinstance(args, list) or len(args) != len(opspec.kinds):
            raise ParseError(f"query {q['op']!r} takes {len(opspec.kinds)} arguments")
        for a in args:
            if a not in names:
                raise UnknownReference(f"unknown reference {a!r} in query {q['op']!r}")
        params = q.get("params", {})
        if not isinstance(params, dict):
            raise ParseError("query params must be an object")
        bind = q.get("as")
        if bind is not None:
            if not isinstance(bind, str) or bind in names:
                raise ParseError(f"cannot bind query result to {bind!r}")
            names.add(bind)
        queries.append(Query(q["op"], color, tuple(args), params, bind))
    window = data.get("window")
    if window is not None:
        if not isinstance(window, list) or len(window) != 4:
            raise ParseError("window is [xmin, xmax, ymin, ymax]")
        try:
            window = tuple(float(v) for v in window)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad window {window!r}") from exc
    return Scene(f, objects, queries, window, data)


def load_scene(path: str) -> Scene:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read scene {path}: {exc}") from exc
    return parse_scene(text)


# ---------------------------------------------------------------------------
# operations


@dataclass(frozen=True)
class OpSpec:
    kinds: tuple[type, ...]
    colored: bool
    fn: Callable[..., Any]


def _param(f: Field, params: dict, key: str, default=None):
    if key not in params:
        if default is None:
            raise ValueError(f"missing parameter {key!r}")
        return default
    return _scalar(f, params[key])


def _op_spread_law(c, T, **_):
    p = trig.profile(T, c)
    return {"ratios": trig.check_spread_law(p), "closed_form": trig.spread_law_ratio(p)}


def _op_cross_law(c, T, **_):
    lhs, rhs = trig.check_cross_law(trig.profile(T, c))
    return {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}


def _op_triple_spread(c, T, **_):
    p = trig.profile(T, c)
    if any(s is None for s in p.spreads):
        raise GeometryError(f"a {c.value} spread of the triangle is undefined")
    lhs, rhs = trig.check_triple_spread(*p.spreads)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}


def _op_altitude(c, P, l, **_):
    alt, foot = metric.altitude_and_foot(c, P, l)
    return {"altitude": alt, "foot": foot}


def _op_reflect(c, K, P, *, f, params):
    v = params.get("vector")
    if not isinstance(v, list) or len(v) != 2:
        raise ValueError("reflect needs params.vector = [a, b]")
    return conics.reflect_direction(c, conics.tangent_at(K, P), Vec2(_scalar(f, v[0]), _scalar(f, v[1])))


def _op_chromatics(c, K, F, l, **_):
    pc = conics.parabola_chromatics(K, conics.FocusDirectrixPair(c, F, l, F.x.field.one))
    return {
        "pairs": pc.pairs,
        "axis_direction": pc.axis_direction,
        "vertices": pc.vertices,
        "bases": pc.bases,
        "tangent_meets": pc.tangent_meets,
        "collinear_triples": pc.collinear_triples(),
    }


def _op_cross_color(P, Q, **_):
    r = metric.cross_color_checks(P, Q)
    return {"blue_squared": r.blue_squared, "red_plus_green_squared": r.red_plus_green_squared, "holds": r.holds}


T_ = trig.Triangle
K_ = conics.Conic

OPS: dict[str, OpSpec] = {
    "quadrance": OpSpec((Point, Point), True, lambda c, P, Q, **_: metric.quadrance(c, P, Q)),
    "spread": OpSpec((Line, Line), True, lambda c, l1, l2, **_: metric.spread(c, l1, l2)),
    "perpendicular": OpSpec((Line, Line), True, lambda c, l1, l2, **_: metric.is_perpendicular_lines(c, l1, l2)),
    "line_through": OpSpec((Point, Point), False, lambda P, Q, **_: metric.line_through(P, Q)),
    "meet": OpSpec((Line, Line), False, lambda l1, l2, **_: metric.meet(l1, l2)),
    "altitude": OpSpec((Point, Line), True, _op_altitude),
    "quadrance_point_line": OpSpec((Point, Line), True, lambda c, P, l, **_: metric.quadrance_point_line(c, P, l)),
    "cross_color": OpSpec((Point, Point), False, _op_cross_color),
    "spread_harmonic": OpSpec((Line, Line), False, lambda l1, l2, **_: metric.spread_harmonic(l1, l2)),
    "profile": OpSpec((T_,), True, lambda c, T, **_: trig.profile(T, c)),
    "signed_area": OpSpec((T_,), False, lambda T, **_: trig.signed_area(T)),
    "spread_law": OpSpec((T_,), True, _op_spread_law),
    "cross_law": OpSpec((T_,), True, _op_cross_law),
    "triple_spread": OpSpec((T_,), True, _op_triple_spread),
    "evaluate": OpSpec((K_, Point), False, lambda K, P, **_: conics.evaluate(K, P)),
    "polar": OpSpec((K_, Point), False, lambda K, P, **_: conics.polar_line(K, P)),
    "pole": OpSpec((K_, Line), False, lambda K, l, **_: conics.pole(K, l)),
    "tangent": OpSpec((K_, Point), False, lambda K, P, **_: conics.tangent_at(K, P)),
    "meet_conic": OpSpec((K_, Line), False, lambda K, l, **_: conics.line_conic_meet(K, l)),
    "center": OpSpec((K_,), False, lambda K, **_: conics.center(K)),
    "sample_points": OpSpec(
        (K_,), False, lambda K, f, params, **_: conics.sample_points(K, int(params.get("count", 5)))
    ),
    "conic_from_focus_directrix": OpSpec(
        (Point, Line),
        True,
        lambda c, F, l, f, params: conics.conic_from_focus_directrix(c, F, l, _param(f, params, "ecc2")),
    ),
    "parabola": OpSpec((Point, Line), True, lambda c, F, l, **_: conics.parabola_conic(c, F, l)),
    "quadrola": OpSpec(
        (Point, Point), True, lambda c, F1, F2, f, params: conics.quadrola_conic(c, F1, F2, _param(f, params, "K"))
    ),
    "focus_ecc2": OpSpec((K_, Point, Line), True, lambda c, K, F, l, **_: conics.focus_ecc2(c, K, F, l)),
    "quadrola_constant": OpSpec(
        (K_, Point, Point), True, lambda c, K, F1, F2, **_: conics.quadrola_constant(c, K, F1, F2)
    ),
    "quadrola_foci": OpSpec((K_,), True, lambda c, K, **_: conics.quadrola_foci(c, K)),
    "grammola": OpSpec(
        (K_,), True, lambda c, K, params, **_: conics.grammola_analyze(c, K, samples=int(params.get("samples", 5)))
    ),
    "grammola_spread_identity": OpSpec((K_,), False, lambda K, **_: conics.grammola_spread_identity(K)),
    "parabola_chromatics": OpSpec((K_, Point, Line), True, _op_chromatics),
    "reflect": OpSpec((K_, Point), True, _op_reflect),
    "family": OpSpec((Point, Line), False, lambda F, l, **_: conics.common_focus_directrix_family(F, l)),
}


# ---------------------------------------------------------------------------
# running


@dataclass
class QueryOutcome:
    query: Query
    value: Any = None
    error: Exception | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class AnalysisReport:
    field: Field
    outcomes: list[QueryOutcome]

    @property
    def has_errors(self) -> bool:
        return any(not o.ok for o in self.outcomes)

    def to_json(self) -> dict:
        results = []
        for i, o in enumerate(self.outcomes):
            q = o.query
            rec: dict[str, Any] = {"index": i, "op": q.op, "args": list(q.args)}
            if q.color is not None:
                rec["color"] = q.color.value
            if q.bind:
                rec["as"] = q.bind
            if o.ok:
                rec["status"] = "ok"
                rec["value"] = encode(o.value)
                tower = result_tower(o.value)
                rec["tower"] = tower.to_json() if tower is not None else None
            else:
                rec["status"] = "error"
                rec["error"] = {"type": type(o.error).__name__, "message": str(o.error)}
            results.append(rec)
        return {"field": self.field.to_json(), "results": results}

    def dumps(self) -> str:
        return dumps(self.to_json())


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


QUERY_ERRORS = (GeometryError, FieldMismatch, DivisionByZero, ValueError, TypeError)


def run_scene(scene: Scene) -> AnalysisReport:
    env = dict(scene.objects)
    outcomes = []
    for q in scene.queries:
        opspec = OPS[q.op]
        try:
            vals = []
            for name, kind in zip(q.args, opspec.kinds):
                if name not in env:
                    # the binding query failed earlier
                    raise UnknownReference(f"{name!r} was not bound")
                if not isinstance(env[name], kind):
                    raise TypeError(f"argument {name!r} of {q.op!r} must be a {kind.__name__}")
                vals.append(env[name])
            lead = (q.color,) if opspec.colored else ()
            value = opspec.fn(*lead, *vals, f=scene.field, params=q.params)
            if q.bind is not None:
                if not isinstance(value, (Point, Line, conics.Conic)):
                    raise TypeError(f"only points, lines and conics can be bound, not {type(value).__name__}")
                env[q.bind] = value
            outcomes.append(QueryOutcome(q, value))
        except QUERY_ERRORS as exc:
            outcomes.append(QueryOutcome(q, error=exc))
    return AnalysisReport(scene.field, outcomes)
