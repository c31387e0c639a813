"""Named numerical checks for every claim about the circles.

A :class:`VerificationReport` holds a list of :class:`Check` objects, each
a measured value compared to a bound.  Residual checks are upper bounds;
separation checks (e.g. distance from the Tucker family) are lower bounds.
"""

from __future__ import annotations

import hashlib
import json
import math
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import errors
from .centers import (
    Triangle,
    circumcevian_triangle,
    random_triangle,
    reference_triangle,
    symmedian_point,
)
from .circles import (
    CONSTRUCTIONS,
    OPEN_SLOT,
    SPECTRUM,
    bui_circle,
    construct,
    new_circle,
)
from .kernel import (
    DEFAULT_TOL,
    Point,
    concyclicity_residual,
    cross_ratio_complex,
    dist,
    line_through,
    midpoint,
    perpendicular_bisector,
    pole_of_chord,
    power_of_point,
)
from .numeric import scalar
from .tucker import is_tucker, tucker_circle, tucker_hexagon, tucker_radius_at

log = logging.getLogger(__name__)

# separation floor for the converse sweep and exclusion radius around L
FAR_FIELD_FLOOR = 1e-4
EXCLUSION_RADIUS = 0.1
REFINE_TOL = 1e-6
GRID_MARGIN = 0.02
MIN_OL = 1e-3
COALESCE_TOL = 1e-6
ZERO_TOL = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    value: float | None
    limit: float
    upper: bool = True

    @property
    def passed(self) -> bool:
        if self.value is None:
            return not self.upper
        return self.value <= self.limit if self.upper else self.value > self.limit

    def to_dict(self) -> dict:
        return {"value": self.value, "limit": self.limit,
                "bound": "max" if self.upper else "min", "pass": self.passed}


@dataclass
class VerificationReport:
    claim_id: str
    checks: list[Check]
    inputs: dict
    outputs: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def residuals(self) -> dict:
        return {c.name: c.value for c in self.checks}

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "residuals": {c.name: c.to_dict() for c in self.checks},
            "pass": self.passed,
        }


def _f(x):
    return None if x is None else float(x)


def inputs_digest(t: Triangle, **extra) -> dict:
    d = {"triangle": t.as_lists(), **extra}
    blob = json.dumps(d, sort_keys=True, default=repr).encode()
    d["digest"] = hashlib.sha256(blob).hexdigest()[:16]
    return d


def _ol_guard(t: Triangle, min_ol: float) -> None:
    if dist(t.circum.o, symmedian_point(t)) <= min_ol * t.circum.radius:
        raise errors.EquilateralDegenerate("|O - L| below the near-equilateral guard")


def verify_theorem_new(t: Triangle, eps_rel: float = DEFAULT_TOL.eps_rel, check_tucker: bool = True,
                       min_ol: float = MIN_OL, **inputs) -> VerificationReport:
    """Concyclicity, center on OL at ratio 3/4, the three cyclic quadrilaterals,
    and distance from the Tucker family."""
    _ol_guard(t, min_ol)
    tol = t.tolerance(eps_rel)
    lim = 10 * eps_rel
    cfg = new_circle(t, symmedian_point(t), tol)
    p = cfg.points
    r = t.circum.radius
    quads = {
        "quad_BaBcCbCa": ("B_a", "B_c", "C_b", "C_a"),
        "quad_BaBcAcAb": ("B_a", "B_c", "A_c", "A_b"),
        "quad_AcAbCbCa": ("A_c", "A_b", "C_b", "C_a"),
    }
    checks = [
        Check("concyclic", _f(cfg.residual), lim),
        Check("axis_offset", _f(cfg.axis_offset), lim),
        Check("ratio_error", _f(abs(cfg.ratio - scalar(SPECTRUM["new"]))), lim),
    ]
    checks += [Check(name, _f(concyclicity_residual([p[k] for k in q], r, tol)), lim)
               for name, q in quads.items()]
    outputs = {"ratio": _f(cfg.ratio), "center": list(cfg.center.as_tuple()), "radius": _f(cfg.radius),
               "on_segments": cfg.trace.extra["on_segments"]}
    if check_tucker:
        dec = is_tucker(t, cfg.fitted, tol)
        checks.append(Check("non_tucker_margin", _f(dec.margin), 100 * eps_rel, upper=False))
        outputs["tucker_decision"] = dec.decision.value
    return VerificationReport("new_circle.theorem", checks, inputs_digest(t, **inputs), outputs)


def verify_lemma_circumcevian(t: Triangle, eps_rel: float = DEFAULT_TOL.eps_rel, **inputs) -> VerificationReport:
    """L is also the symmedian point of its circumcevian triangle, and the
    quadrilaterals A B A' C and A C' A' B' are harmonic."""
    lim = 10 * eps_rel
    l = symmedian_point(t)
    cev = circumcevian_triangle(t, l)
    r = t.circum.radius
    l2 = symmedian_point(cev.as_triangle())
    a, b, c = t.vertices()
    ap, bp, cp = cev.a_p, cev.b_p, cev.c_p

    def harmonic(w, x, y, z):
        re, im = cross_ratio_complex(w, x, y, z)
        return abs(re + 1) + abs(im)

    checks = [
        Check("symmedian_of_cevian", _f(dist(l2, l) / r), lim),
        Check("harmonic_A_Ap_C_B", _f(harmonic(a, ap, c, b)), lim),
        Check("harmonic_B_Bp_A_C", _f(harmonic(b, bp, a, c)), lim),
        Check("harmonic_C_Cp_B_A", _f(harmonic(c, cp, b, a)), lim),
        Check("harmonic_A_Ap_Bp_Cp", _f(harmonic(a, ap, bp, cp)), lim),
        Check("harmonic_B_Bp_Cp_Ap", _f(harmonic(b, bp, cp, ap)), lim),
        Check("harmonic_C_Cp_Ap_Bp", _f(harmonic(c, cp, ap, bp)), lim),
    ]
    outputs = {"cevian": {"A'": list(ap.as_tuple()), "B'": list(bp.as_tuple()), "C'": list(cp.as_tuple())}}
    return VerificationReport("new_circle.lemma", checks, inputs_digest(t, **inputs), outputs)


def proof_residuals(t: Triangle, pivot: Point | None = None, eps_rel: float = DEFAULT_TOL.eps_rel) -> dict:
    """Residuals of the intermediate facts used to prove concyclicity and the
    3/4 ratio, evaluated for an arbitrary pivot (all vanish at L)."""
    tol = t.tolerance(eps_rel)
    l = symmedian_point(t)
    pivot = l if pivot is None else pivot
    w = t.circum.omega
    o, r = t.circum.o, t.circum.radius
    cfg = new_circle(t, pivot, tol)
    bui = bui_circle(t, pivot, tol)
    cev = cfg.trace.cevian
    w1, w2, w3 = (cfg.trace.circles[k] for k in ("omega_1", "omega_2", "omega_3"))
    a, b, c = t.vertices()
    verts = {"A": (a, cev.a_p, cev.b_p, cev.c_p, w2, w3, w1, bui.trace.circles["omega_a"]),
             "B": (b, cev.b_p, cev.c_p, cev.a_p, w3, w1, w2, bui.trace.circles["omega_b"]),
             "C": (c, cev.c_p, cev.a_p, cev.b_p, w1, w2, w3, bui.trace.circles["omega_c"])}
    res = {}
    for name, (v, vp, q1, q2, wq1, wq2, wv, wb) in verts.items():
        res[f"radical_{name}"] = abs(power_of_point(v, wq1) - power_of_point(v, wq2)) / r ** 2
        x = pole_of_chord(w, q1, q2, tol)
        axis = line_through(vp, x, tol)
        res[f"pole_collinear_{name}"] = max(abs(axis.signed_distance(v)), abs(axis.signed_distance(pivot))) / r
        res[f"parallelogram_{name}"] = dist(midpoint(pivot, o), midpoint(wv.center, wb.center)) / r
        res[f"chord_parallel_{name}"] = bui.trace.extra["chord_tilt"][name]
    m5 = l + (o - l) * scalar(SPECTRUM["new"])
    pts = cfg.points
    for name, (p, q) in {"A": ("A_b", "A_c"), "B": ("B_a", "B_c"), "C": ("C_a", "C_b")}.items():
        bis = perpendicular_bisector(pts[p], pts[q], tol)
        res[f"bisector_through_M5_{name}"] = abs(bis.signed_distance(m5)) / r
    return res


def verify_proof_scaffold(t: Triangle, eps_rel: float = DEFAULT_TOL.eps_rel, pivot: Point | None = None,
                          **inputs) -> VerificationReport:
    lim = 10 * eps_rel
    res = proof_residuals(t, pivot, eps_rel)
    checks = [Check(k, _f(v), lim) for k, v in sorted(res.items())]
    if pivot is not None:
        inputs = {**inputs, "pivot": list(pivot.as_tuple())}
    return VerificationReport("new_circle.proof_steps", checks, inputs_digest(t, **inputs))


def verify_spectrum(t: Triangle, eps_rel: float = DEFAULT_TOL.eps_rel, min_ol: float = MIN_OL,
                    **inputs) -> VerificationReport:
    _ol_guard(t, min_ol)
    tol = t.tolerance(eps_rel)
    lim = 10 * eps_rel
    l = symmedian_point(t)
    checks, ratios = [], {}
    for kind in CONSTRUCTIONS:
        cfg = construct(kind, t, l, tol)
        ratios[kind] = _f(cfg.ratio)
        checks.append(Check(f"{kind}_concyclic", _f(cfg.residual), lim))
        checks.append(Check(f"{kind}_axis_offset", _f(cfg.axis_offset), lim))
        checks.append(Check(f"{kind}_ratio_error", _f(abs(cfg.ratio - scalar(SPECTRUM[kind]))), lim))
    slot = (ratios["second"] + ratios["third"]) / 2
    checks.append(Check("open_slot_error", abs(slot - float(OPEN_SLOT)), lim))
    outputs = {"ratios": ratios, "open_slot": slot, "expected": {k: float(v) for k, v in SPECTRUM.items()}}
    return VerificationReport("brocard.spectrum", checks, inputs_digest(t, **inputs), outputs)


def verify_tucker(t: Triangle, seeds, eps_rel: float = DEFAULT_TOL.eps_rel, **inputs) -> VerificationReport:
    """Chain closure and center-on-axis for the given seeds, plus reproduction
    of the First and Second Lemoine radii from the Tucker family."""
    tol = t.tolerance(eps_rel)
    r = t.circum.radius
    closure, axis, concyc = [], [], []
    for s in seeds:
        try:
            smp = tucker_circle(t, s, tol)
            hexagon = tucker_hexagon(t, s, tol)
        except errors.DegenerateStep:
            continue
        closure.append(hexagon.closure_residual)
        axis.append(smp.axis_offset)
        concyc.append(smp.concyclicity)
    l = symmedian_point(t)
    first = construct("first", t, l, tol).radius
    second = construct("second", t, l, tol).radius
    gap_first = min(abs(x - first) for x in tucker_radius_at(t, SPECTRUM["first"], tol=tol)) / r
    gap_second = min(abs(x - second) for x in tucker_radius_at(t, SPECTRUM["second"], tol=tol)) / r
    checks = [
        Check("closure_max", _f(max(closure)), eps_rel),
        Check("axis_offset_max", _f(max(axis)), 10 * eps_rel),
        Check("concyclic_max", _f(max(concyc)), 10 * eps_rel),
        Check("first_radius_gap", _f(gap_first), 10 * eps_rel),
        Check("second_radius_gap", _f(gap_second), 10 * eps_rel),
    ]
    outputs = {"seeds": len(seeds), "evaluated": len(closure)}
    return VerificationReport("tucker.family", checks, inputs_digest(t, **inputs), outputs)


@dataclass
class SweepResult:
    kind: str
    pivots: list
    residuals: list
    failures: int
    residual_at_l: float
    argmin: Point | None
    argmin_residual: float | None
    far_floor: float | None
    refined: Point | None = None
    refined_distance: float | None = None
    coalesced: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "nodes": len(self.pivots),
            "failures": self.failures,
            "residual_at_L": self.residual_at_l,
            "argmin": None if self.argmin is None else list(self.argmin.as_tuple()),
            "argmin_residual": self.argmin_residual,
            "far_field_floor": self.far_floor,
            "refined": None if self.refined is None else list(self.refined.as_tuple()),
            "refined_distance": self.refined_distance,
            "coalesced_minima": [list(p.as_tuple()) for p in self.coalesced],
        }


def barycentric_grid(t: Triangle, grid_n: int, margin: float = GRID_MARGIN) -> list[Point]:
    if grid_n < 3:
        raise ValueError("grid_n must be at least 3")
    span = 1 - 3 * margin
    nodes = []
    for i in range(grid_n):
        for j in range(grid_n - i):
            wa = margin + span * i / (grid_n - 1)
            wb = margin + span * j / (grid_n - 1)
            nodes.append(t.from_barycentric(wa, wb, 1 - wa - wb))
    return nodes


def _residual_or_none(kind: str, t: Triangle, p: Point):
    try:
        return float(construct(kind, t, p).residual)
    except errors.GeometryError:
        return None


def _separation(kind: str, t: Triangle, p: Point) -> float:
    try:
        pts = construct(kind, t, p).ordered()
    except errors.GeometryError:
        return math.inf
    r = float(t.circum.radius)
    return min(float(dist(u, v)) for i, u in enumerate(pts) for v in pts[i + 1:]) / r


def _descend(objective, x0, step, scale, rounds: int = 4):
    """Nelder-Mead restarted with shrinking simplexes; never worse than ``x0``."""
    best, best_v = x0, objective(x0)
    for _ in range(rounds):
        if best_v <= 1e-15:
            break
        simplex = np.array([best, best + [step, 0.0], best + [0.0, step]])
        sol = minimize(objective, best, method="Nelder-Mead",
                       options={"initial_simplex": simplex, "xatol": 1e-12 * scale, "fatol": 1e-15,
                                "maxiter": 2000, "maxfev": 3000})
        if sol.fun <= best_v:
            best, best_v = sol.x, sol.fun
        step *= 1e-2
    return best, best_v


def pivot_sweep(t: Triangle, kind: str = "new", grid_n: int = 33, refine: bool = True) -> SweepResult:
    """Residual of a generalized construction over a barycentric grid of pivots.

    The grid argmin (L itself excluded) seeds a Nelder-Mead descent; the
    residual is a max of radial deviations and is not smooth at its zero.
    """
    l = symmedian_point(t)
    r = float(t.circum.radius)
    nodes = barycentric_grid(t, grid_n)
    values = [_residual_or_none(kind, t, p) for p in nodes]
    ok = [(p, v) for p, v in zip(nodes, values) if v is not None]
    failures = len(nodes) - len(ok)
    at_l = float(construct(kind, t, l).residual)
    if not ok:
        return SweepResult(kind, nodes, values, failures, at_l, None, None, None)
    arg, arg_v = min(ok, key=lambda pv: pv[1])
    far = [v for p, v in ok if dist(p, l) > EXCLUSION_RADIUS * r]
    result = SweepResult(kind, nodes, values, failures, at_l, arg, arg_v, min(far) if far else None)
    if refine:
        def objective(xy):
            p = Point(float(xy[0]), float(xy[1]))
            # stay in the sampled region; pivots near a vertex collapse the configuration
            if min(float(w) for w in t.barycentric(p)) < GRID_MARGIN:
                return 1e3
            v = _residual_or_none(kind, t, p)
            return 1e3 if v is None else v

        starts = []
        for p, v in sorted(ok, key=lambda pv: pv[1]):
            if all(dist(p, q) > 0.15 * r for q, _ in starts):
                starts.append((p, v))
            if len(starts) == 4:
                break
        found = []
        for start, _ in starts:
            x, fx = _descend(objective, np.array(start.as_tuple()), 0.05 * r, r)
            p = Point(float(x[0]), float(x[1]))
            # six points merged into fewer are trivially concyclic and witness nothing
            found.append((fx, _separation(kind, t, p) <= COALESCE_TOL, p))
        # zeros before non-zeros, distinct-point zeros before coalesced ones
        found.sort(key=lambda f: (f[0] > ZERO_TOL, f[1], f[0]))
        best = found[0][2]
        result.coalesced = [p for fx, merged, p in found[1:] if merged and fx <= ZERO_TOL]
        result.refined = best
        result.refined_distance = float(dist(result.refined, l)) / r
    return result


def converse_sweep(t: Triangle, grid_n: int = 33, eps_rel: float = DEFAULT_TOL.eps_rel,
                   **inputs) -> VerificationReport:
    """Only L makes the six new-circle points concyclic (grid evidence)."""
    return _sweep_report("new_circle.converse", "new", t, grid_n, eps_rel, inputs)


def uniqueness_sweep(t: Triangle, kind: str, grid_n: int = 33, eps_rel: float = DEFAULT_TOL.eps_rel,
                     **inputs) -> VerificationReport:
    if kind not in ("first", "second", "third", "bui"):
        raise ValueError("uniqueness sweeps cover the four known circles")
    return _sweep_report(f"known_circles.uniqueness.{kind}", kind, t, grid_n, eps_rel, inputs)


def _sweep_report(claim_id, kind, t, grid_n, eps_rel, inputs) -> VerificationReport:
    sw = pivot_sweep(t, kind, grid_n)
    checks = [
        Check("residual_at_L", sw.residual_at_l, 10 * eps_rel),
        Check("far_field_floor", sw.far_floor, FAR_FIELD_FLOOR, upper=False),
        Check("refined_distance", sw.refined_distance, REFINE_TOL),
    ]
    return VerificationReport(claim_id, checks, inputs_digest(t, grid_n=grid_n, **inputs), sw.to_dict())


def run_all(t: Triangle | None = None, trials: int = 20, seed: int = 0, grid_n: int = 33,
            eps_rel: float = DEFAULT_TOL.eps_rel) -> list[VerificationReport]:
    """Every verifier on a fixed triangle (default the reference triangle)
    plus ``trials`` random well-conditioned triangles."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    fixed = reference_triangle() if t is None else t
    rng = np.random.default_rng(seed)
    reports = []

    def one(tri: Triangle, **tag):
        seeds = rng.uniform(0.05, 0.95, size=8)
        reports.append(verify_theorem_new(tri, eps_rel, **tag))
        reports.append(verify_lemma_circumcevian(tri, eps_rel, **tag))
        reports.append(verify_proof_scaffold(tri, eps_rel, **tag))
        reports.append(verify_spectrum(tri, eps_rel, **tag))
        reports.append(verify_tucker(tri, seeds, eps_rel, **tag))

    one(fixed, seed=seed, trial=-1)
    reports.append(converse_sweep(fixed, grid_n, eps_rel, seed=seed, trial=-1))
    for kind in ("first", "second", "third", "bui"):
        reports.append(uniqueness_sweep(fixed, kind, grid_n, eps_rel, seed=seed, trial=-1))
    for i in range(trials):
        one(random_triangle(rng, min_ol=0.01), seed=seed, trial=i)
    reports.sort(key=lambda rep: (rep.claim_id, rep.inputs.get("trial", 0)))
    return reports


def summarize(reports: list[VerificationReport]) -> dict:
    by_claim: dict[str, list[bool]] = {}
    for rep in reports:
        by_claim.setdefault(rep.claim_id, []).append(rep.passed)
    return {
        "pass": all(all(v) for v in by_claim.values()),
        "claims": {k: {"runs": len(v), "passed": sum(v)} for k, v in sorted(by_claim.items())},
    }
