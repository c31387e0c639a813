import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import strategies as st

from lemoine.centers import Triangle, equilateral, reference_triangle
from lemoine.kernel import Point, point


@pytest.fixture
def t0():
    return reference_triangle()


@pytest.fixture
def equi():
    return equilateral()


@pytest.fixture
def isosceles():
    return Triangle.from_coords(0, 0, 2, 0, 1, 2)


def close(p: Point, q, tol=1e-12):
    qx, qy = q
    return abs(float(p.x) - float(qx)) <= tol and abs(float(p.y) - float(qy)) <= tol


class Similarity:
    """p -> k R(theta) p + shift."""

    def __init__(self, k, theta, dx, dy):
        self.k, self.c, self.s = k, math.cos(theta), math.sin(theta)
        self.dx, self.dy = dx, dy

    def __call__(self, p: Point) -> Point:
        x, y = float(p.x), float(p.y)
        return Point(self.k * (self.c * x - self.s * y) + self.dx, self.k * (self.s * x + self.c * y) + self.dy)


similarities = st.builds(
    Similarity,
    st.floats(0.2, 5.0),
    st.floats(0.0, 2 * math.pi),
    st.floats(-10.0, 10.0),
    st.floats(-10.0, 10.0),
)


@st.composite
def triangles(draw, min_angle=10.0):
    """Well-conditioned triangles inscribed in the unit circle (any rotation)."""
    w = draw(st.tuples(*[st.floats(0.01, 1.0)] * 3))
    total = sum(w)
    span = 180.0 - 3 * min_angle
    alpha, beta, gamma = (math.radians(min_angle + span * wi / total) for wi in w)
    phi = draw(st.floats(0.0, 2 * math.pi))
    angles = (phi, phi + 2 * gamma, phi + 2 * gamma + 2 * alpha)
    return Triangle(*(point(math.cos(a), math.sin(a)) for a in angles))


def rng_triangles(n, seed, min_ol=0.01):
    from lemoine.centers import random_triangle

    rng = np.random.default_rng(seed)
    return [random_triangle(rng, min_ol=min_ol) for _ in range(n)]


# exact rational oracles for the reference triangle A(0,0) B(4,0) C(1,3)
def exact_circumcenter(a, b, c):
    """Solve |X-A|^2 = |X-B|^2 = |X-C|^2 by Cramer's rule over Fractions."""
    (ax, ay), (bx, by), (cx, cy) = [(F(x), F(y)) for x, y in (a, b, c)]
    a11, a12, r1 = 2 * (bx - ax), 2 * (by - ay), bx**2 + by**2 - ax**2 - ay**2
    a21, a22, r2 = 2 * (cx - ax), 2 * (cy - ay), cx**2 + cy**2 - ax**2 - ay**2
    det = a11 * a22 - a12 * a21
    return ((r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det)


def exact_symmedian(a, b, c):
    (ax, ay), (bx, by), (cx, cy) = [(F(x), F(y)) for x, y in (a, b, c)]
    la = (bx - cx) ** 2 + (by - cy) ** 2
    lb = (cx - ax) ** 2 + (cy - ay) ** 2
    lc = (ax - bx) ** 2 + (ay - by) ** 2
    s = la + lb + lc
    return ((la * ax + lb * bx + lc * cx) / s, (la * ay + lb * by + lc * cy) / s)
