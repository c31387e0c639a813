"""Command-line entry point: ``lemoine [options] COMMAND ...``.

Exit codes: 0 success / all claims pass, 1 a claim failed, 2 bad input or
a degenerate construction.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import errors
from .centers import (
    Triangle,
    brocard_axis,
    centroid,
    random_triangle,
    reference_triangle,
    symmedian_point,
)
from .circles import CONSTRUCTIONS, SPECTRUM, construct
from .kernel import DEFAULT_TOL, point
from .numeric import use_backend
from .plotting import CENTER_NAMES, FIGURES, plot_sweep, spectrum_chart, write_figure
from .serialize import dumps
from .tucker import tucker_circle, tucker_hexagon, tucker_solutions
from . import verify as V

log = logging.getLogger("lemoine")

VERIFY_CHOICES = ("all", "thm-new", "lemma", "scaffold", "converse", "uniqueness", "tucker", "spectrum")
CONCYCLIC_LIMIT = 1e-8


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    triangle: Triangle
    triangle_source: str
    seed: int
    eps_rel: float
    backend: str
    prec: int
    trials: int | None
    grid_n: int
    fmt: str
    out: Path | None
    figures: Path | None


def _floats(text: str, n: int) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"expected {n} comma-separated numbers, got {len(vals)}")
    return vals


def _triangle_from_json(path: str) -> Triangle:
    try:
        data = json.loads(Path(path).read_text())
        return Triangle.from_coords(*data["A"], *data["B"], *data["C"])
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read triangle from {path}: {exc}") from None


def _common(parser: argparse.ArgumentParser) -> None:
    s = argparse.SUPPRESS
    g = parser.add_argument_group("run options")
    g.add_argument("--triangle", default=s, help="ax,ay,bx,by,cx,cy")
    g.add_argument("--input", default=s, help='JSON file {"A": [x, y], "B": ..., "C": ...}')
    g.add_argument("--random", action="store_true", default=s, help="random well-conditioned triangle")
    g.add_argument("--seed", type=int, default=s, help="RNG seed (fallback: $LEMOINE_SEED, then 0)")
    g.add_argument("--eps", type=float, default=s, help="relative tolerance (default 1e-9)")
    g.add_argument("--backend", choices=("binary64", "bigfloat"), default=s)
    g.add_argument("--prec", type=int, default=s, help="bigfloat precision in bits")
    g.add_argument("--trials", type=int, default=s)
    g.add_argument("--grid", type=int, default=s, help="sweep grid size")
    g.add_argument("--out", default=s, help="output path")
    g.add_argument("--format", choices=("json", "text"), default=s)
    g.add_argument("--figures", default=s, help="directory for report figures")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lemoine", description="Lemoine-type circle constructions and checks")
    _common(parser)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centers", help="O, L, centroid, Brocard axis and the five circle centers")
    _common(p)

    p = sub.add_parser("circle", help="six-point configuration of one construction")
    p.add_argument("kind", choices=sorted(CONSTRUCTIONS) + ["tucker"])
    p.add_argument("--pivot", help="x,y (default: symmedian point)")
    p.add_argument("--s", type=float, help="Tucker seed parameter")
    _common(p)

    p = sub.add_parser("verify", help="run verifiers")
    p.add_argument("which", choices=VERIFY_CHOICES)
    p.add_argument("--kind", choices=("first", "second", "third", "bui"), help="uniqueness sweep target")
    _common(p)

    p = sub.add_parser("hunt-midpoint", help="Tucker circle(s) at the empty slot t = -1/4")
    _common(p)

    p = sub.add_parser("figure", help="render figure 1..8 as SVG")
    p.add_argument("fig_id", type=int)
    p.add_argument("--pivot", help="x,y pivot for figure 7")
    _common(p)
    return parser


def make_config(ns: argparse.Namespace) -> RunConfig:
    sources = [k for k in ("triangle", "input", "random") if getattr(ns, k, None)]
    if len(sources) > 1:
        raise UsageError("give exactly one of --triangle, --input, --random")
    env_seed = os.environ.get("LEMOINE_SEED")
    seed = getattr(ns, "seed", None)
    if seed is None:
        seed = int(env_seed) if env_seed else 0
    source = sources[0] if sources else "default"
    if source == "triangle":
        tri = Triangle.from_coords(*_floats(ns.triangle, 6))
    elif source == "input":
        tri = _triangle_from_json(ns.input)
    elif source == "random":
        tri = random_triangle(np.random.default_rng(seed), min_ol=0.01)
    else:
        tri = reference_triangle()
    backend = getattr(ns, "backend", "binary64")
    prec = getattr(ns, "prec", 128 if backend == "bigfloat" else 53)
    if backend == "bigfloat" and prec < 64:
        raise UsageError("--prec must be at least 64 for bigfloat")
    out = getattr(ns, "out", None)
    figs = getattr(ns, "figures", None)
    return RunConfig(
        triangle=tri,
        triangle_source=source,
        seed=seed,
        eps_rel=getattr(ns, "eps", DEFAULT_TOL.eps_rel),
        backend=backend,
        prec=prec,
        trials=getattr(ns, "trials", None),
        grid_n=getattr(ns, "grid", 33),
        fmt=getattr(ns, "format", "json"),
        out=Path(out) if out else None,
        figures=Path(figs) if figs else None,
    )


def _inputs(cfg: RunConfig, **extra) -> dict:
    return {"triangle": cfg.triangle.as_lists(), "source": cfg.triangle_source, "seed": cfg.seed,
            "eps_rel": cfg.eps_rel, "backend": cfg.backend, "prec": cfg.prec, **extra}


def _pt(p):
    return [float(p.x), float(p.y)]


def cmd_centers(cfg: RunConfig, ns) -> tuple[dict, int]:
    t = cfg.triangle
    o, l, g = t.circum.o, symmedian_point(t), centroid(t)
    tol = t.tolerance(cfg.eps_rel)
    centers = {}
    for kind, name in CENTER_NAMES.items():
        c = construct(kind, t, l, tol)
        centers[name] = {"kind": kind, "center": _pt(c.center), "ratio": c.ratio, "radius": c.radius,
                         "expected_ratio": float(SPECTRUM[kind])}
    try:
        ax = brocard_axis(t)
        axis = {"normal": [float(ax.nx), float(ax.ny)], "c": float(ax.c)}
    except errors.EquilateralDegenerate:
        axis = None
    doc = {"kind": "centers", "inputs": _inputs(cfg),
           "outputs": {"O": _pt(o), "L": _pt(l), "centroid": _pt(g), "R2": t.circum.r2,
                       "brocard_axis": axis, "centers": centers},
           "residuals": {}, "pass": True}
    return doc, 0


def _text_centers(doc: dict) -> str:
    out = doc["outputs"]
    lines = [f"O = ({out['O'][0]:.17g}, {out['O'][1]:.17g})",
             f"L = ({out['L'][0]:.17g}, {out['L'][1]:.17g})",
             f"centroid = ({out['centroid'][0]:.17g}, {out['centroid'][1]:.17g})",
             f"R^2 = {float(out['R2']):.17g}"]
    ax = out["brocard_axis"]
    lines.append("Brocard axis: undefined (O = L)" if ax is None else
                 f"Brocard axis: {ax['normal'][0]:.17g} x + {ax['normal'][1]:.17g} y = {ax['c']:.17g}")
    for name, c in out["centers"].items():
        ratio = "ratio: undefined (O = L)" if c["ratio"] is None else f"ratio: {float(c['ratio']):.17g}"
        lines.append(f"{name} ({c['kind']}) = ({c['center'][0]:.17g}, {c['center'][1]:.17g})  {ratio}")
    return "\n".join(lines)


def cmd_circle(cfg: RunConfig, ns) -> tuple[dict, int]:
    t = cfg.triangle
    tol = t.tolerance(cfg.eps_rel)
    if ns.kind == "tucker":
        if ns.s is None:
            raise UsageError("circle tucker needs --s")
        hexagon = tucker_hexagon(t, ns.s, tol)
        smp = tucker_circle(t, ns.s, tol)
        doc = {"kind": "tucker", "inputs": _inputs(cfg, s=ns.s),
               "outputs": {"vertices": {k: _pt(v) for k, v in hexagon.labeled().items()},
                           "closure_residual": hexagon.closure_residual, "fitted": smp.circle,
                           "t": smp.t, "radius": smp.radius, "axis_offset": smp.axis_offset,
                           "closure_ok": bool(hexagon.closure_residual <= cfg.eps_rel)},
               "residuals": {"closure": hexagon.closure_residual, "concyclic": smp.concyclicity},
               "pass": bool(hexagon.closure_residual <= cfg.eps_rel)}
        return doc, 0
    pivot = point(*_floats(ns.pivot, 2)) if ns.pivot else None
    c = construct(ns.kind, t, pivot, tol)
    concyclic = bool(c.residual <= CONCYCLIC_LIMIT)
    doc = {"kind": ns.kind,
           "inputs": _inputs(cfg, pivot=_pt(c.pivot)),
           "outputs": {"points": {k: _pt(v) for k, v in c.points.items()}, "fitted": c.fitted,
                       "least_squares": c.least_squares, "residual": c.residual, "ratio": c.ratio,
                       "axis_offset": c.axis_offset, "concyclic": concyclic, "radius": c.radius},
           "residuals": {"concyclic": c.residual},
           "pass": concyclic}
    return doc, 0


def _trial_triangles(cfg: RunConfig, default: int):
    n = default if cfg.trials is None else cfg.trials
    rng = np.random.default_rng(cfg.seed)
    return [(i, random_triangle(rng, min_ol=0.01)) for i in range(n)]


def cmd_verify(cfg: RunConfig, ns) -> tuple[dict, int]:
    t = cfg.triangle
    eps = cfg.eps_rel
    tag = {"seed": cfg.seed, "trial": -1}
    reports: list[V.VerificationReport] = []
    which = ns.which
    if which == "all":
        trials = 20 if cfg.trials is None else cfg.trials
        if trials < 1:
            raise UsageError("--trials must be >= 1")
        reports = V.run_all(t, trials=trials, seed=cfg.seed, grid_n=cfg.grid_n, eps_rel=eps)
    else:
        single = {
            "thm-new": lambda tri, **kw: [V.verify_theorem_new(tri, eps, **kw)],
            "lemma": lambda tri, **kw: [V.verify_lemma_circumcevian(tri, eps, **kw)],
            "scaffold": lambda tri, **kw: [V.verify_proof_scaffold(tri, eps, **kw)],
            "spectrum": lambda tri, **kw: [V.verify_spectrum(tri, eps, **kw)],
            "tucker": lambda tri, **kw: [V.verify_tucker(tri, np.linspace(0.05, 0.95, 19), eps, **kw)],
            "converse": lambda tri, **kw: [V.converse_sweep(tri, cfg.grid_n, eps, **kw)],
            "uniqueness": lambda tri, **kw: [V.uniqueness_sweep(tri, k, cfg.grid_n, eps, **kw)
                                             for k in ([ns.kind] if ns.kind else ("first", "second", "third", "bui"))],
        }[which]
        reports.extend(single(t, **tag))
        for i, tri in _trial_triangles(cfg, 0):
            reports.extend(single(tri, seed=cfg.seed, trial=i))
        reports.sort(key=lambda r: (r.claim_id, r.inputs.get("trial", 0)))
    summary = V.summarize(reports)
    if cfg.figures is not None:
        _report_figures(cfg, reports)
    doc = {"claim_id": which,
           "inputs": _inputs(cfg, trials=cfg.trials, grid_n=cfg.grid_n),
           "outputs": {"reports": [r.to_dict() for r in reports], "summary": summary},
           "residuals": summary["claims"],
           "pass": summary["pass"]}
    return doc, 0 if summary["pass"] else 1


def _report_figures(cfg: RunConfig, reports) -> None:
    cfg.figures.mkdir(parents=True, exist_ok=True)
    t = cfg.triangle
    for rep in reports:
        if rep.inputs.get("trial") != -1:
            continue
        if rep.claim_id == "brocard.spectrum":
            spectrum_chart(rep.outputs["ratios"], cfg.figures / "spectrum.svg")
            write_figure(8, t, cfg.figures / "fig8.svg")
        elif rep.claim_id == "new_circle.converse" or rep.claim_id.startswith("known_circles.uniqueness"):
            kind = rep.outputs["kind"]
            plot_sweep(t, V.pivot_sweep(t, kind, cfg.grid_n, refine=False), cfg.figures / f"sweep_{kind}.svg")


def cmd_hunt_midpoint(cfg: RunConfig, ns) -> tuple[dict, int]:
    t = cfg.triangle
    tol = t.tolerance(cfg.eps_rel)
    brocard_axis(t)  # EquilateralDegenerate -> exit 2
    target = (SPECTRUM["second"] + SPECTRUM["third"]) / 2
    sols = tucker_solutions(t, target, tol=tol)
    found = []
    for smp in sols:
        hexagon = tucker_hexagon(t, smp.seed, tol)
        found.append({"s": smp.seed, "radius": smp.radius, "center": _pt(smp.circle.center), "t": smp.t,
                      "vertices": {k: _pt(v) for k, v in hexagon.labeled().items()},
                      "closure_residual": hexagon.closure_residual})
    doc = {"kind": "hunt-midpoint", "inputs": _inputs(cfg, target_t=float(target)),
           "outputs": {"open_problem": True, "target_t": float(target), "solutions": found,
                       "count": len(found),
                       "finding": "Tucker circle(s) found" if found else "no Tucker circle at this center"},
           "residuals": {}, "pass": True}
    return doc, 0


def cmd_figure(cfg: RunConfig, ns) -> tuple[dict, int]:
    if ns.fig_id not in FIGURES:
        raise UsageError(f"figure id must be one of 1..8, got {ns.fig_id}")
    path = cfg.out or Path(f"fig{ns.fig_id}.svg")
    pivot = point(*_floats(ns.pivot, 2)) if ns.pivot else None
    write_figure(ns.fig_id, cfg.triangle, path, pivot)
    doc = {"kind": "figure", "inputs": _inputs(cfg, fig_id=ns.fig_id),
           "outputs": {"path": str(path), "title": FIGURES[ns.fig_id]}, "residuals": {}, "pass": True}
    return doc, 0


COMMANDS = {
    "centers": cmd_centers,
    "circle": cmd_circle,
    "verify": cmd_verify,
    "hunt-midpoint": cmd_hunt_midpoint,
    "figure": cmd_figure,
}


def _text(doc: dict) -> str:
    if doc.get("kind") == "centers":
        return _text_centers(doc)
    if "claim_id" in doc:
        lines = []
        for rep in doc["outputs"]["reports"]:
            status = "PASS" if rep["pass"] else "FAIL"
            worst = ", ".join(f"{k}={v['value']:.3g}" for k, v in sorted(rep["residuals"].items())
                              if v["value"] is not None and not v["pass"])
            lines.append(f"{status} {rep['claim_id']} trial={rep['inputs'].get('trial')} {worst}".rstrip())
        lines.append(f"overall: {'PASS' if doc['pass'] else 'FAIL'}")
        return "\n".join(lines)
    return dumps(doc)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    backend = getattr(ns, "backend", "binary64")
    prec = getattr(ns, "prec", 128 if backend == "bigfloat" else 53)
    fig_out = ns.command == "figure"
    try:
        with use_backend(backend, max(prec, 64) if backend == "bigfloat" else 53):
            cfg = make_config(ns)
            doc, code = COMMANDS[ns.command](cfg, ns)
    except (UsageError, errors.GeometryError, ValueError) as exc:
        print(f"lemoine: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = _text(doc) if cfg.fmt == "text" else dumps(doc)
    if cfg.out is not None and not fig_out:
        cfg.out.write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
