"""Six-point configurations of the Lemoine-type circles.

Each construction accepts an arbitrary interior pivot; at the symmedian
point the six points are concyclic and the fitted center sits on the
Brocard axis at a fixed directed ratio ``t`` (``M = L + t (O - L)``):

    first 1/2, second 0, third -1/2, bui 1/4, new 3/4

Labels: ``X_y`` is the point produced by the construction attached to
vertex X.  For the first four circles it lies on the side through X and Y;
for the new circle both A-points lie on BC and are ordered from B to C
(similarly C to A, A to B).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import errors
from .centers import (
    CevianTriple,
    Triangle,
    antiparallel_direction,
    circumcevian_triangle,
    symmedian_point,
)
from .kernel import (
    Circle,
    Point,
    Tolerance,
    circle_deviation,
    circle_through_3,
    dist,
    directed_ratio,
    fit_circle,
    least_squares_circle,
    line_circle_intersection,
    line_line_intersection,
    line_through,
    line_through_direction,
    offset_from_line,
    second_intersection,
    tangent_circle_at_through,
)

LABELS = ("A_b", "A_c", "B_c", "B_a", "C_a", "C_b")

SPECTRUM = {
    "first": Fraction(1, 2),
    "second": Fraction(0),
    "third": Fraction(-1, 2),
    "bui": Fraction(1, 4),
    "new": Fraction(3, 4),
}
OPEN_SLOT = (SPECTRUM["second"] + SPECTRUM["third"]) / 2


@dataclass(frozen=True)
class ConstructionTrace:
    circles: dict = field(default_factory=dict)
    centers: dict = field(default_factory=dict)
    cevian: CevianTriple | None = None
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SixPointConfig:
    kind: str
    pivot: Point
    points: dict
    fitted: Circle
    residual: object
    ratio: object | None
    axis_offset: object | None
    least_squares: Circle
    trace: ConstructionTrace

    def ordered(self) -> list[Point]:
        return [self.points[k] for k in LABELS]

    @property
    def center(self) -> Point:
        return self.fitted.center

    @property
    def radius(self):
        return self.fitted.radius


def _check_pivot(t: Triangle, pivot: Point, tol: Tolerance) -> None:
    height_tol = tol.eps_rel
    if min(t.barycentric(pivot)) <= height_tol:
        raise errors.DegeneratePivot("pivot is not strictly inside the triangle")


def _finish(kind: str, t: Triangle, pivot: Point, pts: dict, trace: ConstructionTrace,
            tol: Tolerance) -> SixPointConfig:
    ordered = [pts[k] for k in LABELS]
    fitted = fit_circle(ordered, tol)
    r = t.circum.radius
    residual = circle_deviation(ordered, fitted, r)
    o = t.circum.o
    l = symmedian_point(t)
    ratio = offset = None
    if dist(o, l) > tol.length:
        ratio = directed_ratio(l, o, fitted.center)
        offset = offset_from_line(l, o, fitted.center) / r
    return SixPointConfig(kind, pivot, pts, fitted, residual, ratio, offset,
                          least_squares_circle(ordered), trace)


def _tol(t: Triangle, tol: Tolerance | None) -> Tolerance:
    return t.tol if tol is None else tol.scaled(float(t.circum.radius))


def _through(p: Point, direction: Point, target, tol):
    try:
        return line_line_intersection(line_through_direction(p, direction, tol), target, tol)
    except errors.ParallelLines:
        raise errors.DegeneratePivot("construction line parallel to its target side") from None


def _line_construction(kind: str, t: Triangle, pivot: Point, dirs: dict, tol) -> SixPointConfig:
    ab, bc, ca = t.side_line("AB"), t.side_line("BC"), t.side_line("CA")
    pts = {
        "A_b": _through(pivot, dirs["BC"], ab, tol),
        "A_c": _through(pivot, dirs["BC"], ca, tol),
        "B_c": _through(pivot, dirs["CA"], bc, tol),
        "B_a": _through(pivot, dirs["CA"], ab, tol),
        "C_a": _through(pivot, dirs["AB"], ca, tol),
        "C_b": _through(pivot, dirs["AB"], bc, tol),
    }
    return _finish(kind, t, pivot, pts, ConstructionTrace(extra={"directions": dirs}), tol)


def first_lemoine(t: Triangle, pivot: Point, tol: Tolerance | None = None) -> SixPointConfig:
    """Parallels to the sides through the pivot, cut by the other two sides."""
    tol = _tol(t, tol)
    _check_pivot(t, pivot, tol)
    dirs = {"BC": t.c - t.b, "CA": t.a - t.c, "AB": t.b - t.a}
    return _line_construction("first", t, pivot, dirs, tol)


def second_lemoine(t: Triangle, pivot: Point, tol: Tolerance | None = None) -> SixPointConfig:
    """Antiparallels to the sides through the pivot."""
    tol = _tol(t, tol)
    _check_pivot(t, pivot, tol)
    dirs = {s: antiparallel_direction(t, s) for s in ("BC", "CA", "AB")}
    return _line_construction("second", t, pivot, dirs, tol)


def _other_point(c: Circle, known: Point, towards: Point, tol: Tolerance) -> Point:
    # a double root (circle tangent to the side at the vertex) is kept: for
    # the equilateral triangle it is the correct limiting point
    return second_intersection(c, known, towards)


def third_lemoine(t: Triangle, pivot: Point, tol: Tolerance | None = None) -> SixPointConfig:
    """Circles B-P-C, C-P-A, A-P-B re-cut the remaining side lines."""
    tol = _tol(t, tol)
    _check_pivot(t, pivot, tol)
    a, b, c = t.vertices()
    wa = circle_through_3(b, pivot, c, tol)
    wb = circle_through_3(c, pivot, a, tol)
    wc = circle_through_3(a, pivot, b, tol)
    pts = {
        "A_b": _other_point(wa, b, a, tol),
        "A_c": _other_point(wa, c, a, tol),
        "B_c": _other_point(wb, c, b, tol),
        "B_a": _other_point(wb, a, b, tol),
        "C_a": _other_point(wc, a, c, tol),
        "C_b": _other_point(wc, b, c, tol),
    }
    trace = ConstructionTrace(circles={"omega_1": wa, "omega_2": wb, "omega_3": wc},
                              centers={"O_1": wa.center, "O_2": wb.center, "O_3": wc.center})
    return _finish("third", t, pivot, pts, trace, tol)


def bui_circles(t: Triangle, pivot: Point, tol: Tolerance) -> tuple[Circle, Circle, Circle]:
    """Circles through each vertex and the pivot, tangent to the circumcircle there."""
    w = t.circum.omega
    return tuple(tangent_circle_at_through(w, v, pivot, tol) for v in t.vertices())


def bui_circle(t: Triangle, pivot: Point, tol: Tolerance | None = None) -> SixPointConfig:
    tol = _tol(t, tol)
    _check_pivot(t, pivot, tol)
    a, b, c = t.vertices()
    wa, wb, wc = bui_circles(t, pivot, tol)
    pts = {
        "A_b": _other_point(wa, a, b, tol),
        "A_c": _other_point(wa, a, c, tol),
        "B_c": _other_point(wb, b, c, tol),
        "B_a": _other_point(wb, b, a, tol),
        "C_a": _other_point(wc, c, a, tol),
        "C_b": _other_point(wc, c, b, tol),
    }
    # the chord cut from each vertex circle is parallel to the opposite side
    chords = {"A": (pts["A_b"], pts["A_c"], b, c),
              "B": (pts["B_c"], pts["B_a"], c, a),
              "C": (pts["C_a"], pts["C_b"], a, b)}
    tilt = {}
    for v, (p, q, s0, s1) in chords.items():
        u, d = q - p, s1 - s0
        tilt[v] = abs(u.cross(d)) / (u.norm() * d.norm())
    trace = ConstructionTrace(circles={"omega_a": wa, "omega_b": wb, "omega_c": wc},
                              centers={"O_a": wa.center, "O_b": wb.center, "O_c": wc.center},
                              extra={"chord_tilt": tilt})
    return _finish("bui", t, pivot, pts, trace, tol)


def _chord_on_side(c: Circle, p: Point, q: Point, tol: Tolerance) -> tuple[Point, Point]:
    hits = line_circle_intersection(line_through(p, q, tol), c, tol)
    if len(hits) < 2:
        raise errors.NoRealIntersection("tangent circle misses its side line")
    d = q - p
    first, second = sorted(hits, key=lambda h: (h - p).dot(d))
    return first, second


def new_circle_circles(t: Triangle, pivot: Point, tol: Tolerance):
    cev = circumcevian_triangle(t, pivot)
    w = t.circum.omega
    return cev, tuple(tangent_circle_at_through(w, v, pivot, tol) for v in (cev.a_p, cev.b_p, cev.c_p))


def new_circle(t: Triangle, pivot: Point, tol: Tolerance | None = None) -> SixPointConfig:
    """Circles tangent to the circumcircle at the circumcevian points of the
    pivot and passing through the pivot, cut by BC, CA, AB respectively."""
    tol = _tol(t, tol)
    _check_pivot(t, pivot, tol)
    a, b, c = t.vertices()
    cev, (w1, w2, w3) = new_circle_circles(t, pivot, tol)
    a_b, a_c = _chord_on_side(w1, b, c, tol)
    b_c, b_a = _chord_on_side(w2, c, a, tol)
    c_a, c_b = _chord_on_side(w3, a, b, tol)
    pts = {"A_b": a_b, "A_c": a_c, "B_c": b_c, "B_a": b_a, "C_a": c_a, "C_b": c_b}
    on_segments = {}
    for name, (p, q) in {"A": (b, c), "B": (c, a), "C": (a, b)}.items():
        d = q - p
        params = [(pts[k] - p).dot(d) / d.norm2() for k in LABELS if k[0] == name]
        on_segments[name] = all(-tol.eps_rel <= s <= 1 + tol.eps_rel for s in params)
    trace = ConstructionTrace(
        circles={"omega_1": w1, "omega_2": w2, "omega_3": w3},
        centers={"O_1": w1.center, "O_2": w2.center, "O_3": w3.center},
        cevian=cev,
        extra={"on_segments": on_segments},
    )
    return _finish("new", t, pivot, pts, trace, tol)


CONSTRUCTIONS: dict[str, Callable[..., SixPointConfig]] = {
    "first": first_lemoine,
    "second": second_lemoine,
    "third": third_lemoine,
    "bui": bui_circle,
    "new": new_circle,
}


def construct(kind: str, t: Triangle, pivot: Point | None = None, tol: Tolerance | None = None) -> SixPointConfig:
    if kind not in CONSTRUCTIONS:
        raise ValueError(f"unknown circle kind {kind!r}")
    if pivot is None:
        pivot = symmedian_point(t)
    return CONSTRUCTIONS[kind](t, pivot, tol)


def brocard_spectrum(t: Triangle, tol: Tolerance | None = None) -> list[tuple[str, object]]:
    """Directed ratios along L->O of the five circle centers, in the order
    first, second, third, bui, new, followed by the open slot at -1/4."""
    tol = _tol(t, tol)
    if dist(t.circum.o, symmedian_point(t)) <= tol.length:
        raise errors.EquilateralDegenerate("Brocard axis undefined")
    out = [(kind, construct(kind, t, tol=tol).ratio) for kind in CONSTRUCTIONS]
    ratios = dict(out)
    out.append(("open_slot", (ratios["second"] + ratios["third"]) / 2))
    return out
