"""Triangle data: circumcircle, centroid, symmedian point, Brocard axis,
circumcevian triangles and antiparallel directions."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import errors
from .kernel import (
    DEFAULT_TOL,
    Circle,
    Line,
    Point,
    Tolerance,
    circle_through_3,
    dist,
    line_line_intersection,
    line_through,
    orient,
    point,
    pole_of_chord,
    power_of_point,
    second_intersection,
)
from .numeric import scalar, sqrt

log = logging.getLogger(__name__)

SIDES = {"BC": ("b", "c", "a"), "CA": ("c", "a", "b"), "AB": ("a", "b", "c")}


@dataclass(frozen=True)
class CircumData:
    o: Point
    r2: object
    omega: Circle

    @property
    def radius(self):
        return self.omega.radius


@dataclass(frozen=True)
class CevianTriple:
    a_p: Point
    b_p: Point
    c_p: Point

    def as_triangle(self) -> "Triangle":
        return Triangle(self.a_p, self.b_p, self.c_p)


@dataclass(frozen=True)
class Triangle:
    a: Point
    b: Point
    c: Point

    @classmethod
    def from_coords(cls, ax, ay, bx, by, cx, cy) -> "Triangle":
        return cls(point(ax, ay), point(bx, by), point(cx, cy))

    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.a, self.b, self.c)

    def as_lists(self) -> dict:
        return {"A": list(self.a.as_tuple()), "B": list(self.b.as_tuple()), "C": list(self.c.as_tuple())}

    def side_lengths2(self):
        """Squared lengths (a^2, b^2, c^2) opposite A, B, C."""
        return ((self.b - self.c).norm2(), (self.c - self.a).norm2(), (self.a - self.b).norm2())

    @cached_property
    def circum(self) -> CircumData:
        return circumcircle(self)

    @property
    def tol(self) -> Tolerance:
        return self.tolerance()

    def tolerance(self, eps_rel: float = DEFAULT_TOL.eps_rel) -> Tolerance:
        return Tolerance(eps_rel, float(self.circum.radius))

    def transformed(self, f) -> "Triangle":
        return Triangle(f(self.a), f(self.b), f(self.c))

    def barycentric(self, p: Point):
        area = orient(self.a, self.b, self.c)
        return (orient(p, self.b, self.c) / area, orient(self.a, p, self.c) / area, orient(self.a, self.b, p) / area)

    def from_barycentric(self, wa, wb, wc) -> Point:
        return (self.a * wa + self.b * wb + self.c * wc) / (wa + wb + wc)

    def side_line(self, side: str) -> Line:
        p, q, _ = SIDES[side]
        return line_through(getattr(self, p), getattr(self, q))


T0 = ((0, 0), (4, 0), (1, 3))


def reference_triangle() -> Triangle:
    """A(0,0), B(4,0), C(1,3): O = (2,1), R^2 = 5, L = (14/11, 12/11)."""
    (ax, ay), (bx, by), (cx, cy) = T0
    return Triangle.from_coords(ax, ay, bx, by, cx, cy)


def equilateral(radius=1) -> Triangle:
    h = sqrt(scalar(3)) / 2
    r = scalar(radius)
    return Triangle(Point(0 * r, r), Point(-h * r, -r / 2), Point(h * r, -r / 2))


def circumcircle(t: Triangle, tol: Tolerance | None = None) -> CircumData:
    if tol is None:
        s = max(dist(t.a, t.b), dist(t.b, t.c), dist(t.c, t.a))
        tol = Tolerance(DEFAULT_TOL.eps_rel, float(s) if s > 0 else 1.0)
    w = circle_through_3(t.a, t.b, t.c, tol)
    return CircumData(w.center, w.r2, w)


def centroid(t: Triangle) -> Point:
    return (t.a + t.b + t.c) / 3


def symmedian_point(t: Triangle) -> Point:
    t.circum  # raises CollinearPoints for degenerate input
    a2, b2, c2 = t.side_lengths2()
    return t.from_barycentric(a2, b2, c2)


def symmedian_point_synthetic(t: Triangle) -> Point:
    """Intersect two symmedians, each drawn through the pole of the opposite chord.

    A right angle puts one pole at infinity; the remaining two vertices are
    then used instead.
    """
    w = t.circum.omega
    tol = t.tol
    verts = {"a": t.a, "b": t.b, "c": t.c}
    lines = []
    for v, (p, q) in (("a", ("b", "c")), ("b", ("c", "a")), ("c", ("a", "b"))):
        try:
            x = pole_of_chord(w, verts[p], verts[q], tol)
        except errors.AntipodalChord:
            log.info("pole of chord %s%s at infinity; using the other symmedians", p.upper(), q.upper())
            continue
        lines.append(line_through(verts[v], x, tol))
        if len(lines) == 2:
            return line_line_intersection(lines[0], lines[1], tol)
    raise errors.PoleAtInfinity("fewer than two finite poles")


def brocard_axis(t: Triangle) -> Line:
    o = t.circum.o
    l = symmedian_point(t)
    if dist(o, l) <= t.tol.length:
        raise errors.EquilateralDegenerate("O and L coincide")
    return line_through(l, o, t.tol)


def circumcevian_triangle(t: Triangle, p: Point) -> CevianTriple:
    w = t.circum.omega
    tol = t.tol
    for v in t.vertices():
        if dist(p, v) <= tol.length:
            raise errors.PointAtVertex("pivot coincides with a vertex")
    if power_of_point(p, w) >= -tol.area:
        raise errors.PointOutsideCircle("pivot is not strictly inside the circumcircle")
    return CevianTriple(*(second_intersection(w, v, p) for v in t.vertices()))


def antiparallel_direction(t: Triangle, side: str, vertex: str | None = None) -> Point:
    """Unit direction of lines antiparallel to ``side`` with respect to the
    angle at the opposite vertex (the side direction mirrored in that
    vertex's internal bisector)."""
    p, q, opp = SIDES[side]
    if vertex is not None and vertex.lower() != opp:
        raise ValueError(f"antiparallels to {side} are taken at vertex {opp.upper()}")
    v = getattr(t, opp)
    e1 = getattr(t, p) - v
    e2 = getattr(t, q) - v
    u = e1 / e1.norm() + e2 / e2.norm()
    u = u / u.norm()
    d = getattr(t, q) - getattr(t, p)
    d = d / d.norm()
    return u * (2 * d.dot(u)) - d


def incenter(t: Triangle) -> Point:
    a2, b2, c2 = t.side_lengths2()
    return t.from_barycentric(sqrt(a2), sqrt(b2), sqrt(c2))


def random_triangle(rng: np.random.Generator, min_angle_deg: float = 10.0, min_ol: float = 0.0) -> Triangle:
    """Triangle inscribed in the unit circle with every angle >= ``min_angle_deg``.

    Angles are uniform on the constrained simplex; the figure is randomly
    rotated.  Rejection on ``|O - L| > min_ol`` screens out near-equilateral
    shapes.
    """
    span = math.pi - 3 * math.radians(min_angle_deg)
    while True:
        w = rng.dirichlet((1.0, 1.0, 1.0))
        alpha, beta, gamma = (math.radians(min_angle_deg) + span * wi for wi in w)
        phi = rng.uniform(0.0, 2 * math.pi)
        angles = (phi, phi + 2 * gamma, phi + 2 * gamma + 2 * alpha)
        t = Triangle(*(point(math.cos(th), math.sin(th)) for th in angles))
        if min_ol <= 0 or dist(t.circum.o, symmedian_point(t)) > min_ol:
            return t
