"""Tucker hexagons and circles.

The hexagon is seeded by ``B_a = B + s (A - B)`` and built by the chain
antiparallel / parallel / antiparallel / parallel / antiparallel; the
sixth side (parallel to AC through ``B_c``) must return to ``B_a``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from . import errors
from .centers import Triangle, antiparallel_direction, symmedian_point
from .kernel import (
    Circle,
    Point,
    Tolerance,
    circle_deviation,
    dist,
    directed_ratio,
    fit_circle,
    line_line_intersection,
    line_through_direction,
    offset_from_line,
)
from .numeric import scalar

log = logging.getLogger(__name__)

CHAIN_LABELS = ("B_a", "C_a", "C_b", "A_b", "A_c", "B_c")

DEFAULT_WINDOW = (-1.0, 2.0)
DEFAULT_SAMPLES = 512


@dataclass(frozen=True)
class TuckerHexagon:
    seed: object
    vertices: tuple
    closure_residual: object

    def labeled(self) -> dict:
        return dict(zip(CHAIN_LABELS, self.vertices))


@dataclass(frozen=True)
class TuckerSample:
    seed: object
    circle: Circle
    t: object
    radius: object
    concyclicity: object
    axis_offset: object


def _step(p: Point, direction: Point, target, tol: Tolerance) -> Point:
    try:
        return line_line_intersection(line_through_direction(p, direction, tol), target, tol)
    except errors.ParallelLines:
        raise errors.DegenerateStep("chain line parallel to its target side") from None


@dataclass(frozen=True)
class _Chain:
    """Per-triangle data reused across many seeds."""

    lines: tuple
    parallels: tuple
    antiparallels: tuple
    o: Point
    l: Point
    r: object

    @classmethod
    def of(cls, t: Triangle) -> "_Chain":
        return cls(
            (t.side_line("AB"), t.side_line("BC"), t.side_line("CA")),
            (t.b - t.a, t.c - t.b, t.a - t.c),
            tuple(antiparallel_direction(t, side) for side in ("BC", "CA", "AB")),
            t.circum.o,
            symmedian_point(t),
            t.circum.radius,
        )


def tucker_hexagon(t: Triangle, s, tol: Tolerance | None = None, chain: _Chain | None = None) -> TuckerHexagon:
    tol = t.tol if tol is None else tol
    chain = _Chain.of(t) if chain is None else chain
    s = scalar(s)
    ab, bc, ca = chain.lines
    d_ab, d_bc, d_ca = chain.parallels
    anti_bc, anti_ca, anti_ab = chain.antiparallels
    b_a = t.b + (t.a - t.b) * s
    c_a = _step(b_a, anti_bc, ca, tol)
    c_b = _step(c_a, d_ab, bc, tol)
    a_b = _step(c_b, anti_ca, ab, tol)
    a_c = _step(a_b, d_bc, ca, tol)
    b_c = _step(a_c, anti_ab, bc, tol)
    closing = line_through_direction(b_c, d_ca, tol)
    closure = abs(closing.signed_distance(b_a)) / chain.r
    return TuckerHexagon(s, (b_a, c_a, c_b, a_b, a_c, b_c), closure)


def tucker_circle(t: Triangle, s, tol: Tolerance | None = None, chain: _Chain | None = None) -> TuckerSample:
    tol = t.tol if tol is None else tol
    chain = _Chain.of(t) if chain is None else chain
    hexagon = tucker_hexagon(t, s, tol, chain)
    c = fit_circle(hexagon.vertices, tol)
    r, o, l = chain.r, chain.o, chain.l
    if dist(o, l) <= tol.length:
        raise errors.EquilateralDegenerate("Brocard axis undefined")
    return TuckerSample(
        seed=hexagon.seed,
        circle=c,
        t=directed_ratio(l, o, c.center),
        radius=c.radius,
        concyclicity=circle_deviation(hexagon.vertices, c, r),
        axis_offset=offset_from_line(l, o, c.center) / r,
    )


def _safe_t(t: Triangle, s, tol, chain):
    try:
        hexagon = tucker_hexagon(t, s, tol, chain)
        return directed_ratio(chain.l, chain.o, fit_circle(hexagon.vertices, tol).center)
    except (errors.DegenerateStep, errors.CollinearPoints, errors.DegenerateInput):
        return None


def tucker_solutions(t: Triangle, t_target, window=DEFAULT_WINDOW, samples: int = DEFAULT_SAMPLES,
                     xtol: float = 1e-12, tol: Tolerance | None = None) -> list[TuckerSample]:
    """All Tucker circles whose center parameter equals ``t_target``.

    A grid over ``window`` brackets sign changes of ``t(s) - t_target``;
    each bracket is bisected until ``|t - t_target| <= xtol``.
    """
    tol = t.tol if tol is None else tol
    target = scalar(t_target)
    chain = _Chain.of(t)
    grid = np.linspace(window[0], window[1], samples)
    values = [_safe_t(t, s, tol, chain) for s in grid]
    found = []
    for i in range(samples - 1):
        f0, f1 = values[i], values[i + 1]
        if f0 is None or f1 is None:
            continue
        g0, g1 = f0 - target, f1 - target
        if g0 == 0:
            found.append(tucker_circle(t, grid[i], tol, chain))
            continue
        if g0 * g1 > 0:
            continue
        lo, hi = scalar(grid[i]), scalar(grid[i + 1])
        glo = g0
        sample = None
        for _ in range(200):
            mid = (lo + hi) / 2
            sample = tucker_circle(t, mid, tol, chain)
            gm = sample.t - target
            if abs(gm) <= xtol:
                break
            if (gm < 0) == (glo < 0):
                lo, glo = mid, gm
            else:
                hi = mid
        if sample is not None and abs(sample.t - target) <= xtol:
            found.append(sample)
    if values[-1] is not None and values[-1] - target == 0:
        found.append(tucker_circle(t, grid[-1], tol, chain))
    return found


def tucker_radius_at(t: Triangle, t_target, **kwargs) -> list:
    """Radii of the Tucker circles centered at ``L + t_target (O - L)``."""
    sols = tucker_solutions(t, t_target, **kwargs)
    if not sols:
        raise errors.TargetOutOfRange(f"no Tucker circle found at t = {float(t_target)}")
    if len(sols) > 1:
        log.debug("t = %s attained by %d seeds", float(t_target), len(sols))
    return [s.radius for s in sols]


class Membership(enum.Enum):
    TUCKER = "TUCKER"
    NOT_TUCKER = "NOT_TUCKER"


@dataclass(frozen=True)
class TuckerDecision:
    decision: Membership
    margin: object
    reason: str
    t: object | None = None

    @property
    def is_tucker(self) -> bool:
        return self.decision is Membership.TUCKER


def is_tucker(t: Triangle, c: Circle, tol: Tolerance | None = None, **kwargs) -> TuckerDecision:
    """Decide whether ``c`` belongs to the Tucker family of ``t``.

    ``margin`` is the normalised distance to the family: the center's
    offset from the Brocard axis, or the smallest radius gap to a Tucker
    circle with the same center.
    """
    tol = t.tol if tol is None else tol
    o, l = t.circum.o, symmedian_point(t)
    r = t.circum.radius
    if dist(o, l) <= tol.length:
        raise errors.EquilateralDegenerate("Brocard axis undefined")
    off = offset_from_line(l, o, c.center)
    if off > tol.length:
        return TuckerDecision(Membership.NOT_TUCKER, off / r, "off-axis")
    k = directed_ratio(l, o, c.center)
    try:
        radii = tucker_radius_at(t, k, tol=tol, **kwargs)
    except errors.TargetOutOfRange:
        return TuckerDecision(Membership.NOT_TUCKER, None, "no Tucker circle at this center", k)
    gap = min(abs(c.radius - x) for x in radii)
    if gap <= 100 * tol.eps_rel * r:
        return TuckerDecision(Membership.TUCKER, gap / r, "radius match", k)
    return TuckerDecision(Membership.NOT_TUCKER, gap / r, "radius mismatch", k)
