"""Plane primitives, predicates and elementary constructions.

Points, lines and circles are small immutable values.  All tolerances are
relative: a :class:`Tolerance` carries ``eps_rel`` and a length scale
(normally the circumradius of the triangle under study), from which the
absolute length and area thresholds are derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import errors
from .numeric import scalar, sqrt


@dataclass(frozen=True)
class Tolerance:
    eps_rel: float = 1e-9
    length_scale: float = 1.0

    def __post_init__(self):
        if not self.eps_rel > 0:
            raise ValueError("eps_rel must be positive")
        if not self.length_scale > 0:
            raise ValueError("length_scale must be positive")

    @property
    def length(self):
        return self.eps_rel * self.length_scale

    @property
    def area(self):
        return self.eps_rel * self.length_scale ** 2

    def scaled(self, length_scale) -> "Tolerance":
        return Tolerance(self.eps_rel, length_scale)


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True, slots=True)
class Point:
    x: object
    y: object

    def __post_init__(self):
        # x - x is 0 for finite values and NaN for inf/NaN, on both backends
        if not (self.x - self.x == 0 and self.y - self.y == 0):
            raise errors.NonFiniteResult(f"non-finite point ({self.x}, {self.y})")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Point":
        return Point(self.x / k, self.y / k)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def dot(self, other: "Point"):
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point"):
        return self.x * other.y - self.y * other.x

    def norm2(self):
        return self.x * self.x + self.y * self.y

    def norm(self):
        return sqrt(self.norm2())

    def perp(self) -> "Point":
        """Rotation by +90 degrees."""
        return Point(-self.y, self.x)

    def as_tuple(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))


def point(x, y) -> Point:
    """Build a point, converting coordinates into the active backend."""
    return Point(scalar(x), scalar(y))


def dist(p: Point, q: Point):
    return (p - q).norm()


def midpoint(p: Point, q: Point) -> Point:
    return (p + q) / 2


@dataclass(frozen=True, slots=True)
class Line:
    """The set ``{p : n . p = c}`` with ``n`` a canonically signed unit normal."""

    nx: object
    ny: object
    c: object

    @property
    def normal(self) -> Point:
        return Point(self.nx, self.ny)

    @property
    def direction(self) -> Point:
        # clockwise from the normal, so y = 0 runs towards +x
        return Point(self.ny, -self.nx)

    def signed_distance(self, p: Point):
        return self.nx * p.x + self.ny * p.y - self.c

    def project(self, p: Point) -> Point:
        return p - self.normal * self.signed_distance(p)

    def parameter(self, p: Point):
        return self.direction.dot(p)


def _canonical_line(n: Point, c) -> Line:
    length = n.norm()
    nx, ny, c = n.x / length, n.y / length, c / length
    if nx < 0 or (nx == 0 and ny < 0):
        nx, ny, c = -nx, -ny, -c
    return Line(nx, ny, c)


def line_through(p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Line:
    d = q - p
    if d.norm() <= tol.length:
        raise errors.DegenerateInput("line through coincident points")
    n = Point(-d.y, d.x)
    return _canonical_line(n, n.dot(p))


def line_through_direction(p: Point, d: Point, tol: Tolerance = DEFAULT_TOL) -> Line:
    if d.norm() <= tol.eps_rel * tol.eps_rel:
        raise errors.DegenerateInput("zero direction")
    n = Point(-d.y, d.x)
    return _canonical_line(n, n.dot(p))


def perpendicular_bisector(p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Line:
    d = q - p
    if d.norm() <= tol.length:
        raise errors.DegenerateInput("bisector of coincident points")
    return _canonical_line(d, d.dot(midpoint(p, q)))


def line_line_intersection(a: Line, b: Line, tol: Tolerance = DEFAULT_TOL) -> Point:
    det = a.nx * b.ny - a.ny * b.nx
    # unit normals: |det| is the sine of the angle between the lines
    if abs(det) <= tol.eps_rel:
        raise errors.ParallelLines("lines are parallel")
    x = (a.c * b.ny - a.ny * b.c) / det
    y = (a.nx * b.c - a.c * b.nx) / det
    return Point(x, y)


@dataclass(frozen=True, slots=True)
class Circle:
    center: Point
    r2: object

    def __post_init__(self):
        if not self.r2 > 0:
            raise errors.DegenerateInput("circle with non-positive r2")

    @property
    def radius(self):
        return sqrt(self.r2)


def line_circle_intersection(l: Line, c: Circle, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    d = l.signed_distance(c.center)
    foot = c.center - l.normal * d
    h2 = c.r2 - d * d
    if abs(h2) <= tol.area:
        return [foot]
    if h2 < 0:
        return []
    h = sqrt(h2)
    u = l.direction
    return [foot - u * h, foot + u * h]


def second_intersection(c: Circle, known: Point, towards: Point) -> Point:
    """Other intersection of line(known, towards) with ``c``.

    ``known`` is taken to lie on ``c``; the root ``u = 0`` of the parametric
    substitution is factored out instead of being located numerically.
    """
    d = towards - known
    u = -2 * d.dot(known - c.center) / d.norm2()
    return known + d * u


def orient(p: Point, q: Point, r: Point):
    """Twice the signed area of triangle pqr (positive when counter-clockwise)."""
    return (q - p).cross(r - p)


def circle_through_3(p: Point, q: Point, r: Point, tol: Tolerance = DEFAULT_TOL) -> Circle:
    b = q - p
    c = r - p
    den = 2 * b.cross(c)
    if abs(den) <= 2 * tol.area:
        raise errors.CollinearPoints("points are collinear")
    b2, c2 = b.norm2(), c.norm2()
    ux = (c.y * b2 - b.y * c2) / den
    uy = (b.x * c2 - c.x * b2) / den
    off = Point(ux, uy)
    return Circle(p + off, off.norm2())


def power_of_point(p: Point, c: Circle):
    return (p - c.center).norm2() - c.r2


def fit_circle(pts: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> Circle:
    """Circle through the first non-collinear triple of ``pts`` (in index order)."""
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                try:
                    return circle_through_3(pts[i], pts[j], pts[k], tol)
                except errors.CollinearPoints:
                    continue
    raise errors.CollinearPoints("no non-collinear triple")


def circle_deviation(pts: Sequence[Point], c: Circle, scale) -> object:
    r = c.radius
    return max(abs(dist(p, c.center) - r) for p in pts) / scale


def concyclicity_residual(pts: Sequence[Point], scale, tol: Tolerance = DEFAULT_TOL):
    """Max radial deviation of ``pts`` from the circle through their first
    non-collinear triple, divided by ``scale``."""
    if len(pts) < 4:
        raise ValueError("need at least four points")
    return circle_deviation(pts, fit_circle(pts, tol), scale)


def least_squares_circle(pts: Sequence[Point]) -> Circle:
    """Algebraic (Kasa) fit: minimise sum (x^2 + y^2 + D x + E y + F)^2.

    Only used for reporting; solves the 3x3 normal equations by Cramer's rule
    so it works with any scalar backend.
    """
    if len(pts) < 3:
        raise ValueError("need at least three points")
    n = len(pts)
    cx = sum(p.x for p in pts) / n
    cy = sum(p.y for p in pts) / n
    q = [Point(p.x - cx, p.y - cy) for p in pts]
    sxx = sum(p.x * p.x for p in q)
    syy = sum(p.y * p.y for p in q)
    sxy = sum(p.x * p.y for p in q)
    zz = [p.norm2() for p in q]
    sxz = sum(p.x * z for p, z in zip(q, zz))
    syz = sum(p.y * z for p, z in zip(q, zz))
    # centred coordinates decouple F: D, E from a 2x2 system
    det = sxx * syy - sxy * sxy
    if det == 0:
        raise errors.CollinearPoints("degenerate least-squares fit")
    ux = (sxz * syy - syz * sxy) / (2 * det)
    uy = (syz * sxx - sxz * sxy) / (2 * det)
    r2 = ux * ux + uy * uy + sum(zz) / n
    return Circle(Point(ux + cx, uy + cy), r2)


def _cmul(a: tuple, b: tuple) -> tuple:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cross_ratio_complex(a: Point, b: Point, c: Point, d: Point) -> tuple:
    """((a-c)(b-d)) / ((a-d)(b-c)) with points read as complex numbers."""
    num = _cmul((a.x - c.x, a.y - c.y), (b.x - d.x, b.y - d.y))
    den = _cmul((a.x - d.x, a.y - d.y), (b.x - c.x, b.y - c.y))
    m = den[0] * den[0] + den[1] * den[1]
    re = (num[0] * den[0] + num[1] * den[1]) / m
    im = (num[1] * den[0] - num[0] * den[1]) / m
    return re, im


def cross_ratio_on_circle(a: Point, b: Point, c: Point, d: Point, tol: Tolerance = DEFAULT_TOL):
    pts = (a, b, c, d)
    for i in range(4):
        for j in range(i + 1, 4):
            if dist(pts[i], pts[j]) <= tol.length:
                raise errors.CoincidentPoints("cross ratio of coincident points")
    re, im = cross_ratio_complex(a, b, c, d)
    if abs(im) > tol.eps_rel * max(1, abs(re)):
        raise errors.NotConcyclic(f"cross ratio has imaginary part {float(im):.3g}")
    return re


def tangent_circle_at_through(w: Circle, t: Point, p: Point, tol: Tolerance = DEFAULT_TOL) -> Circle:
    """Circle tangent to ``w`` at ``t`` and passing through ``p``.

    Its center sits on line(center(w), t): ``t + u (O - t)`` with ``u``
    fixed by equal distances to ``t`` and ``p``.
    """
    if abs(power_of_point(t, w)) > tol.area:
        raise errors.PointNotOnCircle("tangency point is not on the circle")
    tp = p - t
    if tp.norm() <= tol.length:
        raise errors.DegenerateTangency("through-point equals tangency point")
    v = w.center - t
    den = 2 * v.dot(tp)
    # den / (2 R) is the distance of p from the tangent line at t
    if abs(den) <= 2 * w.radius * tol.length:
        raise errors.DegenerateTangency("point lies on the tangent line")
    u = tp.norm2() / den
    return Circle(t + v * u, u * u * v.norm2())


def tangent_line(w: Circle, t: Point) -> Line:
    n = t - w.center
    return _canonical_line(n, n.dot(t))


def pole_of_chord(w: Circle, p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Point:
    for s in (p, q):
        if abs(power_of_point(s, w)) > tol.area:
            raise errors.PointNotOnCircle("chord endpoint is not on the circle")
    try:
        return line_line_intersection(tangent_line(w, p), tangent_line(w, q), tol)
    except errors.ParallelLines:
        raise errors.AntipodalChord("tangents at a diameter are parallel") from None


def directed_ratio(base_from: Point, base_to: Point, m: Point):
    """Projection parameter of ``m`` on the directed base (no collinearity check)."""
    d = base_to - base_from
    return (m - base_from).dot(d) / d.norm2()


def offset_from_line(base_from: Point, base_to: Point, m: Point):
    """Perpendicular distance of ``m`` from line(base_from, base_to)."""
    d = base_to - base_from
    return abs((m - base_from).cross(d)) / d.norm()


def directed_ratio_along(base_from: Point, base_to: Point, m: Point, tol: Tolerance = DEFAULT_TOL):
    if dist(base_from, base_to) <= tol.length:
        raise errors.DegenerateBase("base points coincide")
    if offset_from_line(base_from, base_to, m) > tol.length:
        raise errors.NotCollinear("point is off the base line")
    return directed_ratio(base_from, base_to, m)
