"""Exact planar chromogeometry: the blue, red and green metrics over general fields."""

__version__ = "0.1.0"

from .field import QQ, Field, FieldElement, PrimeField, QuadraticField, extend_by_sqrt, parse_field_spec
from .metric import BLUE, COLORS, GREEN, RED, Color, Line, Point, Vec2, line, point, vec
from .trig import Triangle, archimedes, profile
from .conics import Conic, conic

__all__ = [
    "__version__",
    "QQ",
    "Field",
    "FieldElement",
    "PrimeField",
    "QuadraticField",
    "extend_by_sqrt",
    "parse_field_spec",
    "BLUE",
    "RED",
    "GREEN",
    "COLORS",
    "Color",
    "Point",
    "Line",
    "Vec2",
    "point",
    "line",
    "vec",
    "Triangle",
    "archimedes",
    "profile",
    "Conic",
    "conic",
]
