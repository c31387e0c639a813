import math

import pytest
from hypothesis import given, settings, strategies as st

from lemoine import errors
from lemoine.kernel import (
    Circle,
    Line,
    Point,
    Tolerance,
    circle_through_3,
    concyclicity_residual,
    cross_ratio_on_circle,
    directed_ratio_along,
    dist,
    least_squares_circle,
    line_circle_intersection,
    line_line_intersection,
    line_through,
    midpoint,
    perpendicular_bisector,
    point,
    pole_of_chord,
    power_of_point,
    tangent_circle_at_through,
)

from conftest import close, similarities

P = point
UNIT = Circle(P(0, 0), 1.0)


def line_eq(l: Line):
    return (float(l.nx), float(l.ny), float(l.c))


class TestLines:
    def test_x_axis(self):
        assert line_eq(line_through(P(0, 0), P(4, 0))) == (0.0, 1.0, 0.0)

    def test_y_axis(self):
        assert line_eq(line_through(P(0, 0), P(0, 5))) == (1.0, 0.0, 0.0)

    def test_x_plus_y_4(self):
        nx, ny, c = line_eq(line_through(P(4, 0), P(1, 3)))
        s = 1 / math.sqrt(2)
        assert nx == pytest.approx(s) and ny == pytest.approx(s) and c == pytest.approx(4 * s)
        for x, y in ((4, 0), (1, 3)):
            assert nx * x + ny * y == pytest.approx(c)

    def test_canonical_sign(self):
        l1 = line_through(P(0, 0), P(1, 1))
        l2 = line_through(P(1, 1), P(0, 0))
        assert line_eq(l1) == pytest.approx(line_eq(l2))
        assert l1.nx > 0

    def test_coincident(self):
        with pytest.raises(errors.DegenerateInput):
            line_through(P(1, 1), P(1, 1))

    @pytest.mark.parametrize("p, q, expected", [
        ((0, 0), (2, 0), (1.0, 0.0, 1.0)),
        ((0, 0), (0, 2), (0.0, 1.0, 1.0)),
        ((1, 1), (3, 3), (1 / math.sqrt(2), 1 / math.sqrt(2), 4 / math.sqrt(2))),
    ])
    def test_perpendicular_bisector(self, p, q, expected):
        l = perpendicular_bisector(P(*p), P(*q))
        assert line_eq(l) == pytest.approx(expected)
        for s in (-3.0, 2.5):
            x = l.project(Point(s, 7.0))
            assert float(dist(x, P(*p))) == pytest.approx(float(dist(x, P(*q))))

    def test_intersections(self):
        x1 = line_through(P(1, 0), P(1, 1))
        y2 = line_through(P(0, 2), P(1, 2))
        assert close(line_line_intersection(x1, y2), (1, 2))
        xy4 = line_through(P(4, 0), P(0, 4))
        assert close(line_line_intersection(xy4, line_through(P(0, 0), P(1, 0))), (4, 0))
        with pytest.raises(errors.ParallelLines):
            line_line_intersection(x1, line_through(P(2, 0), P(2, 1)))


class TestCircleOps:
    def test_line_circle_two(self):
        hits = line_circle_intersection(line_through(P(0, 0), P(1, 0)), UNIT)
        assert len(hits) == 2
        assert close(hits[0], (-1, 0)) and close(hits[1], (1, 0))

    def test_line_circle_tangent(self):
        hits = line_circle_intersection(line_through(P(0, 1), P(1, 1)), UNIT)
        assert len(hits) == 1 and close(hits[0], (0, 1))

    def test_line_circle_disjoint(self):
        assert line_circle_intersection(line_through(P(0, 2), P(1, 2)), UNIT) == []

    def test_ordering_follows_direction(self):
        l = line_through(P(0, -3), P(0, 3))  # normal (1, 0), direction (0, -1)
        hits = line_circle_intersection(l, UNIT)
        assert float(l.parameter(hits[0])) < float(l.parameter(hits[1]))
        assert float(hits[0].y) > float(hits[1].y)

    def test_circle_through_3(self):
        c = circle_through_3(P(1, 0), P(-1, 0), P(0, 1))
        assert close(c.center, (0, 0)) and float(c.r2) == pytest.approx(1)
        # oracle: center (2,1) from the bisectors x = 2 and x + y = 3 (of AB and of (0,0)-(1,3) -> x + 3y = 5)
        c = circle_through_3(P(0, 0), P(4, 0), P(1, 3))
        assert close(c.center, (2, 1)) and float(c.r2) == pytest.approx(5, abs=1e-12)
        with pytest.raises(errors.CollinearPoints):
            circle_through_3(P(0, 0), P(1, 1), P(2, 2))

    def test_power(self):
        c = Circle(P(0, 0), 1.0)
        assert power_of_point(P(0, 0), c) == -1
        assert power_of_point(P(0, 1), c) == 0
        assert power_of_point(P(3, 0), c) == 8

    def test_concyclicity_on_circle(self):
        c = Circle(P(2, 1), 5.0)
        pts = [c.center + Point(math.cos(a), math.sin(a)) * math.sqrt(5) for a in (0.1, 0.9, 2.0, 3.1, 4.4, 5.5)]
        assert concyclicity_residual(pts, 1.0) <= 1e-9

    def test_concyclicity_square_plus_center(self):
        pts = [P(0, 0), P(1, 0), P(1, 1), P(0, 1), P(0.5, 0.5)]
        r = concyclicity_residual(pts, 1.0)
        assert r == pytest.approx(math.sqrt(2) / 2)
        assert r > 0.1

    def test_concyclicity_needs_noncollinear(self):
        with pytest.raises(errors.CollinearPoints):
            concyclicity_residual([P(0, 0), P(1, 0), P(2, 0), P(3, 0)], 1.0)

    def test_least_squares_matches_exact(self):
        pts = [P(2 + math.sqrt(5) * math.cos(a), 1 + math.sqrt(5) * math.sin(a)) for a in (0.0, 1.0, 2.5, 4.0)]
        c = least_squares_circle(pts)
        assert close(c.center, (2, 1)) and float(c.r2) == pytest.approx(5)


class TestCrossRatio:
    def test_square_harmonic(self):
        assert cross_ratio_on_circle(P(1, 0), P(-1, 0), P(0, 1), P(0, -1)) == pytest.approx(-1)

    def test_square_reordered(self):
        # (a-c)(b-d) = 2 * 2i, (a-d)(b-c) = (1+i)^2 = 2i
        assert cross_ratio_on_circle(P(1, 0), P(0, 1), P(-1, 0), P(0, -1)) == pytest.approx(2)

    def test_not_concyclic(self):
        with pytest.raises(errors.NotConcyclic):
            cross_ratio_on_circle(P(1, 0), P(0, 1), P(-1, 0), P(0, -0.5))

    def test_coincident(self):
        with pytest.raises(errors.CoincidentPoints):
            cross_ratio_on_circle(P(1, 0), P(1, 0), P(-1, 0), P(0, -1))

    @given(similarities, st.lists(st.floats(0, 2 * math.pi), min_size=4, max_size=4, unique=True))
    @settings(max_examples=60, deadline=None)
    def test_similarity_invariant(self, sim, angles):
        pts = [Point(math.cos(a), math.sin(a)) for a in angles]
        if min(float(dist(p, q)) for i, p in enumerate(pts) for q in pts[i + 1:]) < 1e-2:
            return
        base = cross_ratio_on_circle(*pts, tol=Tolerance(1e-9, 1.0))
        moved = cross_ratio_on_circle(*[sim(p) for p in pts], tol=Tolerance(1e-9, sim.k))
        assert float(moved) == pytest.approx(float(base), rel=1e-7, abs=1e-9)


class TestTangentAndPole:
    def test_diameter(self):
        c = tangent_circle_at_through(UNIT, P(1, 0), P(0, 0))
        assert close(c.center, (0.5, 0)) and float(c.r2) == pytest.approx(0.25)

    def test_point_on_tangent(self):
        with pytest.raises(errors.DegenerateTangency):
            tangent_circle_at_through(UNIT, P(1, 0), P(1, 5))

    def test_not_on_circle(self):
        with pytest.raises(errors.PointNotOnCircle):
            tangent_circle_at_through(UNIT, P(0.5, 0), P(0, 0))

    def test_reference_composition(self):
        # oracle: center = line(O, A') intersected with the bisector of A'L
        w = Circle(P(2, 1), 5.0)
        ap, l = P(56 / 17, 48 / 17), P(14 / 11, 12 / 11)
        expect = line_line_intersection(line_through(w.center, ap), perpendicular_bisector(ap, l))
        c = tangent_circle_at_through(w, ap, l, Tolerance(1e-9, math.sqrt(5)))
        assert close(c.center, expect.as_tuple())
        assert abs(float(power_of_point(ap, c))) < 1e-12 and abs(float(power_of_point(l, c))) < 1e-12

    def test_pole(self):
        x = pole_of_chord(UNIT, P(1, 0), P(0, 1))
        assert close(x, (1, 1))
        with pytest.raises(errors.AntipodalChord):
            pole_of_chord(UNIT, P(1, 0), P(-1, 0))

    @given(st.floats(0, 2 * math.pi), st.floats(0.2, 2.9))
    def test_pole_equidistant(self, a, gap):
        p, q = Point(math.cos(a), math.sin(a)), Point(math.cos(a + gap), math.sin(a + gap))
        x = pole_of_chord(UNIT, p, q)
        assert float(dist(x, p)) == pytest.approx(float(dist(x, q)), rel=1e-9)


class TestDirectedRatio:
    def test_midpoint_and_endpoints(self):
        l, o = P(14 / 11, 12 / 11), P(2, 1)
        assert directed_ratio_along(l, o, midpoint(l, o)) == pytest.approx(0.5)
        assert directed_ratio_along(l, o, l) == 0

    def test_negative(self):
        assert directed_ratio_along(P(0, 0), P(2, 0), P(-1, 0)) == -0.5

    def test_errors(self):
        with pytest.raises(errors.DegenerateBase):
            directed_ratio_along(P(0, 0), P(0, 0), P(1, 0))
        with pytest.raises(errors.NotCollinear):
            directed_ratio_along(P(0, 0), P(2, 0), P(1, 1))

    @given(similarities, st.floats(-3, 3))
    def test_similarity_invariant(self, sim, t):
        a, b = P(0.3, -0.2), P(1.1, 0.7)
        m = a + (b - a) * t
        got = directed_ratio_along(sim(a), sim(b), sim(m), Tolerance(1e-9, sim.k))
        assert float(got) == pytest.approx(t, abs=1e-9)


@given(st.floats(-0.99, 0.99), st.floats(0, math.pi))
def test_line_circle_points_have_zero_power(offset, angle):
    n = Point(math.cos(angle), math.sin(angle))
    l = line_through(n * offset, n * offset + n.perp())
    for h in line_circle_intersection(l, UNIT):
        assert abs(float(power_of_point(h, UNIT))) <= 1e-9


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=3, max_size=3))
def test_circle_through_3_residual(raw):
    p, q, r = (Point(*xy) for xy in raw)
    try:
        c = circle_through_3(p, q, r, Tolerance(1e-6, 1.0))
    except errors.CollinearPoints:
        return
    scale = float(c.radius)
    assert concyclicity_residual([p, q, r, p], scale) <= 1e-9


def test_nonfinite_rejected():
    with pytest.raises(errors.NonFiniteResult):
        Point(float("nan"), 0.0)
    with pytest.raises(errors.NonFiniteResult):
        Point(float("inf"), 0.0)
