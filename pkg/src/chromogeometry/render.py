"""SVG figures for scenes.

Everything here is floating point and display-only: exact results are
computed first by :func:`chromogeometry.scene.run_scene` and only read here.
Objects whose coordinates have no real embedding (finite fields, towers with
negative radicands) are left out of the drawing.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Any, Iterable

from .conics import Conic, FocusDirectrixPair, GrammolaData, MeetResult, ParabolaFamily, QuadrolaData
from .metric import Color, Line, Point
from .scene import AnalysisReport, Scene
from .trig import Triangle

DEFAULT_WINDOW = (-10.0, 10.0, -10.0, 10.0)
DEFAULT_SAMPLES = 512
SIZE = 512

STROKES = {Color.BLUE: "#1f4fd8", Color.RED: "#d62728", Color.GREEN: "#2ca02c", None: "#222222"}


class EmptyWindow(ValueError):
    pass


def _f(x) -> float | None:
    try:
        return float(x)
    except (TypeError, ValueError):
        return None


def _xy(p: Point) -> tuple[float, float] | None:
    x, y = _f(p.x), _f(p.y)
    if x is None or y is None:
        return None
    return x, y


class Canvas:
    def __init__(self, window: tuple[float, float, float, float], samples: int = DEFAULT_SAMPLES):
        xmin, xmax, ymin, ymax = window
        if not (xmin < xmax and ymin < ymax) or not all(math.isfinite(v) for v in window):
            raise EmptyWindow(f"plot window {window} is empty")
        self.window = window
        self.samples = samples
        self.root = ET.Element(
            "svg",
            {
                "xmlns": "http://www.w3.org/2000/svg",
                "version": "1.1",
                "width": str(SIZE),
                "height": str(SIZE),
                "viewBox": f"0 0 {SIZE} {SIZE}",
            },
        )
        ET.SubElement(self.root, "rect", {"x": "0", "y": "0", "width": str(SIZE), "height": str(SIZE), "fill": "white"})
        self.layers = {k: ET.SubElement(self.root, "g", {"id": k}) for k in ("curves", "lines", "points", "labels")}

    def _to_px(self, x: float, y: float) -> tuple[float, float]:
        xmin, xmax, ymin, ymax = self.window
        return (x - xmin) / (xmax - xmin) * SIZE, (ymax - y) / (ymax - ymin) * SIZE

    def _inside(self, x: float, y: float, slack: float = 0.0) -> bool:
        xmin, xmax, ymin, ymax = self.window
        dx, dy = slack * (xmax - xmin), slack * (ymax - ymin)
        return xmin - dx <= x <= xmax + dx and ymin - dy <= y <= ymax + dy

    def point(self, p: Point, color: Color | None = None, label: str | None = None, r: float = 3.0):
        xy = _xy(p)
        if xy is None or not self._inside(*xy):
            return
        px, py = self._to_px(*xy)
        ET.SubElement(
            self.layers["points"],
            "circle",
            {"cx": f"{px:.2f}", "cy": f"{py:.2f}", "r": str(r), "fill": STROKES[color]},
        )
        if label:
            t = ET.SubElement(
                self.layers["labels"],
                "text",
                {"x": f"{px + 5:.2f}", "y": f"{py - 5:.2f}", "font-size": "11", "fill": STROKES[color]},
            )
            t.text = label

    def line(self, l: Line, color: Color | None = None, dashed: bool = False):
        a, b, c = _f(l.a), _f(l.b), _f(l.c)
        if None in (a, b, c):
            return
        xmin, xmax, ymin, ymax = self.window
        pts = []
        if b != 0:
            for x in (xmin, xmax):
                pts.append((x, -(a * x + c) / b))
        if a != 0:
            for y in (ymin, ymax):
                pts.append((-(b * y + c) / a, y))
        pts = [p for p in pts if self._inside(*p, 1e-9)]
        if len(pts) < 2:
            return
        p0, p1 = min(pts), max(pts)
        (x0, y0), (x1, y1) = self._to_px(*p0), self._to_px(*p1)
        attrs = {
            "x1": f"{x0:.2f}",
            "y1": f"{y0:.2f}",
            "x2": f"{x1:.2f}",
            "y2": f"{y1:.2f}",
            "stroke": STROKES[color],
            "stroke-width": "1",
        }
        if dashed:
            attrs["stroke-dasharray"] = "4 3"
        ET.SubElement(self.layers["lines"], "line", attrs)

    def polyline(self, pts: list[tuple[float, float]], color: Color | None, layer="curves", closed=False, dashed=False):
        if len(pts) < 2:
            return
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in (self._to_px(*p) for p in pts))
        attrs = {"points": coords, "fill": "none", "stroke": STROKES[color], "stroke-width": "1.5"}
        if dashed:
            attrs["stroke-dasharray"] = "4 3"
        ET.SubElement(self.layers[layer], "polygon" if closed else "polyline", attrs)

    def conic(self, K: Conic, color: Color | None = None):
        co = [_f(v) for v in K.coeffs]
        if None in co:
            return
        for branch in _conic_branches(co, self.window, self.samples):
            self.polyline(branch, color)

    def tostring(self) -> str:
        ET.indent(self.root)
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(self.root, encoding="unicode") + "\n"


def _roots(a: float, b: float, c: float) -> list[float]:
    if abs(a) < 1e-12:
        return [] if abs(b) < 1e-12 else [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = math.sqrt(disc)
    return sorted(((-b - s) / (2 * a), (-b + s) / (2 * a)))


def _conic_branches(co, window, samples) -> Iterable[list[tuple[float, float]]]:
    """Polylines of A x^2 + B xy + C y^2 + D x + E y + F = 0, scanned along x and along y."""
    A, B, C, D, E, F = co
    xmin, xmax, ymin, ymax = window
    for along_x in (True, False):
        lo, hi = (xmin, xmax) if along_x else (ymin, ymax)
        runs: list[list[tuple[float, float]]] = []
        for i in range(samples):
            t = lo + (hi - lo) * i / (samples - 1)
            if along_x:
                pts = [(t, r) for r in _roots(C, B * t + E, A * t * t + D * t + F)]
            else:
                pts = [(r, t) for r in _roots(A, B * t + D, C * t * t + E * t + F)]
            pts = [p for p in pts if xmin <= p[0] <= xmax and ymin <= p[1] <= ymax]
            if len(pts) != len(runs):
                # the number of visible branches changed: close the current runs
                yield from (run for run in runs if len(run) > 1)
                runs = [[] for _ in pts]
            for run, p in zip(runs, pts):
                run.append(p)
        yield from (run for run in runs if len(run) > 1)


def _draw_result(cv: Canvas, value: Any, color: Color | None):
    if isinstance(value, Point):
        cv.point(value, color)
    elif isinstance(value, Line):
        cv.line(value, color)
    elif isinstance(value, Conic):
        cv.conic(value, color)
    elif isinstance(value, MeetResult):
        for p in value.points:
            cv.point(p, color)
    elif isinstance(value, FocusDirectrixPair):
        cv.point(value.focus, value.color, f"F_{value.color.value[0]}")
        cv.line(value.directrix, value.color, dashed=True)
    elif isinstance(value, GrammolaData):
        for d in value.diagonals:
            cv.line(d, value.color)
        if value.corners:
            xy = [_xy(p) for p in value.corners]
            if None not in xy:
                cv.polyline(xy, value.color, layer="lines", closed=True, dashed=True)
    elif isinstance(value, QuadrolaData):
        for pair in value.pairs:
            _draw_result(cv, pair, value.color)
    elif isinstance(value, ParabolaFamily):
        for c, K in value.parabolas.items():
            cv.conic(K, c)
        cv.point(value.focus, None, "F")
        cv.line(value.directrix, None, dashed=True)
    elif isinstance(value, dict):
        for v in value.get("pairs", {}).values() if "pairs" in value else ():
            _draw_result(cv, v, None)
        for c, p in value.get("vertices", {}).items():
            cv.point(p, c, f"V_{c.value[0]}")
    elif isinstance(value, (list, tuple)):
        for v in value:
            if isinstance(v, (Point, Line, Conic)):
                _draw_result(cv, v, color)


def render_svg(scene: Scene, report: AnalysisReport, samples: int = DEFAULT_SAMPLES) -> str:
    """Draw the scene's objects and the geometric parts of the query results."""
    cv = Canvas(scene.window or DEFAULT_WINDOW, samples)
    for name, obj in scene.objects.items():
        if isinstance(obj, Point):
            cv.point(obj, None, name)
        elif isinstance(obj, Line):
            cv.line(obj)
        elif isinstance(obj, Conic):
            cv.conic(obj)
        elif isinstance(obj, Triangle):
            xy = [_xy(p) for p in obj.vertices]
            if None not in xy:
                cv.polyline(xy, None, layer="lines", closed=True)
    for o in report.outcomes:
        if o.ok:
            _draw_result(cv, o.value, o.query.color)
    return cv.tostring()
