"""Matplotlib rendering of the circle constructions and sweep reports.

Every artist gets a ``gid`` naming its role (``triangle``, ``circumcircle``,
``tangent-circle-1``, ``six-point-circle``, ``brocard-axis``, ...), which
the SVG backend writes out as the ``id`` of the enclosing group.  SVG
output is byte-deterministic: fixed hash salt, no date stamp.
"""

from __future__ import annotations

import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib as mpl
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure
from matplotlib.patches import Circle as CirclePatch

from .centers import Triangle, centroid, symmedian_point
from .circles import LABELS, SPECTRUM, construct
from .kernel import Circle, Point

FIGURES = {
    1: "First Lemoine circle",
    2: "Second Lemoine circle",
    3: "Third Lemoine circle",
    4: "Bui circle",
    5: "New Lemoine-type circle with its tangent circles",
    6: "The six concyclic points",
    7: "Converse configuration at a non-symmedian pivot",
    8: "Circle centers along the Brocard axis",
}

STYLE = {
    "triangle": {"color": "#222222", "lw": 1.4},
    "circumcircle": {"color": "#555555", "lw": 1.0},
    "construction-circle": {"color": "#50a2d5", "lw": 0.9, "ls": "--"},
    "tangent-circle": {"color": "#76bb4b", "lw": 0.9},
    "construction-line": {"color": "#969696", "lw": 0.7, "ls": ":"},
    "six-point-circle": {"color": "#eb3920", "lw": 1.6},
    "brocard-axis": {"color": "#9370db", "lw": 1.0, "ls": "-."},
    "point": {"color": "#222222", "ms": 3.0},
    "center": {"color": "#eb3920", "ms": 4.0},
    "open-slot": {"color": "#ff8c00", "ms": 5.0},
}

RC = {
    "svg.hashsalt": "lemoine",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
    "font.size": 8,
    "path.simplify": False,
}

# no date stamp and no RDF block, so the bytes depend only on the drawing
SVG_METADATA = {"Date": None, "Creator": None, "Format": None, "Type": None}

CENTER_NAMES = {"first": "M1", "second": "M2", "third": "M3", "bui": "M4", "new": "M5"}


class _Canvas:
    """Collects drawables, then fits the viewport to their extent."""

    def __init__(self, title: str):
        self.fig = Figure(figsize=(6, 6))
        FigureCanvasSVG(self.fig)
        self.ax = self.fig.add_axes((0, 0, 1, 0.94))
        self.ax.set_axis_off()
        self.ax.set_aspect("equal")
        self.fig.suptitle(title, y=0.985)
        self.xs: list[float] = []
        self.ys: list[float] = []
        self._lines = []

    def _extent(self, x, y):
        self.xs.extend(x)
        self.ys.extend(y)

    def circle(self, c: Circle, gid: str, cls: str):
        st = STYLE[cls]
        cx, cy = c.center.as_tuple()
        r = float(c.radius)
        patch = CirclePatch((cx, cy), r, fill=False, color=st["color"], lw=st["lw"], ls=st.get("ls", "-"))
        patch.set_gid(gid)
        self.ax.add_patch(patch)
        self._extent([cx - r, cx + r], [cy - r, cy + r])

    def polygon(self, pts, gid: str, cls: str):
        st = STYLE[cls]
        xy = [p.as_tuple() for p in pts] + [pts[0].as_tuple()]
        (line,) = self.ax.plot(*zip(*xy), color=st["color"], lw=st["lw"])
        line.set_gid(gid)
        self._extent([x for x, _ in xy], [y for _, y in xy])

    def segment(self, p: Point, q: Point, gid: str, cls: str):
        st = STYLE[cls]
        (line,) = self.ax.plot([float(p.x), float(q.x)], [float(p.y), float(q.y)],
                               color=st["color"], lw=st["lw"], ls=st.get("ls", "-"))
        line.set_gid(gid)
        self._extent([float(p.x), float(q.x)], [float(p.y), float(q.y)])

    def infinite_line(self, p: Point, q: Point, gid: str, cls: str):
        self._lines.append((p, q, gid, cls))

    def mark(self, p: Point, label: str, gid: str, cls: str = "point", offset=(3, 3)):
        st = STYLE[cls]
        x, y = p.as_tuple()
        (m,) = self.ax.plot([x], [y], "o", color=st["color"], ms=st["ms"])
        m.set_gid(gid)
        txt = self.ax.annotate(label, (x, y), xytext=offset, textcoords="offset points")
        txt.set_gid(f"label-{gid}")
        self._extent([x], [y])

    def finish(self) -> Figure:
        x0, x1 = min(self.xs), max(self.xs)
        y0, y1 = min(self.ys), max(self.ys)
        side = max(x1 - x0, y1 - y0)
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        half = side * 1.05 / 2
        self.ax.set_xlim(cx - half, cx + half)
        self.ax.set_ylim(cy - half, cy + half)
        for p, q, gid, cls in self._lines:
            st = STYLE[cls]
            d = np.array((q - p).as_tuple())
            d /= np.linalg.norm(d)
            a = np.array(p.as_tuple())
            ends = np.array([a - 4 * half * d, a + 4 * half * d])
            (line,) = self.ax.plot(ends[:, 0], ends[:, 1], color=st["color"], lw=st["lw"], ls=st.get("ls", "-"))
            line.set_gid(gid)
        return self.fig


def _base(cv: _Canvas, t: Triangle, with_omega: bool = True):
    cv.polygon(list(t.vertices()), "triangle", "triangle")
    if with_omega:
        cv.circle(t.circum.omega, "circumcircle", "circumcircle")
    for name, v in zip("ABC", t.vertices()):
        cv.mark(v, name, f"vertex-{name}")


def _six(cv: _Canvas, cfg, circle_gid: str = "six-point-circle"):
    cv.circle(cfg.fitted, circle_gid, "six-point-circle")
    for k in LABELS:
        cv.mark(cfg.points[k], k.replace("_", ""), f"point-{k}")


def build_figure(fig_id: int, t: Triangle, pivot: Point | None = None) -> Figure:
    if fig_id not in FIGURES:
        raise ValueError(f"figure id must be 1..8, got {fig_id}")
    with mpl.rc_context(RC):
        cv = _Canvas(FIGURES[fig_id])
        l = symmedian_point(t)
        o = t.circum.o
        if fig_id in (1, 2):
            cfg = construct("first" if fig_id == 1 else "second", t, l)
            _base(cv, t)
            for i, (p, q) in enumerate((("A_b", "A_c"), ("B_c", "B_a"), ("C_a", "C_b")), 1):
                cv.segment(cfg.points[p], cfg.points[q], f"construction-line-{i}", "construction-line")
            _six(cv, cfg)
            cv.mark(l, "L", "symmedian-point")
        elif fig_id in (3, 4, 5):
            kind = {3: "third", 4: "bui", 5: "new"}[fig_id]
            cls = "construction-circle" if fig_id == 3 else "tangent-circle"
            cfg = construct(kind, t, l)
            _base(cv, t)
            for i, c in enumerate(cfg.trace.circles.values(), 1):
                cv.circle(c, f"{cls}-{i}", cls)
            _six(cv, cfg)
            cv.mark(l, "L", "symmedian-point")
            if cfg.trace.cevian is not None:
                cev = cfg.trace.cevian
                for name, v, vp in zip("ABC", t.vertices(), (cev.a_p, cev.b_p, cev.c_p)):
                    cv.segment(v, vp, f"cevian-{name}", "construction-line")
                    cv.mark(vp, name + "'", f"cevian-point-{name}")
        elif fig_id == 6:
            cfg = construct("new", t, l)
            _base(cv, t, with_omega=False)
            _six(cv, cfg)
        elif fig_id == 7:
            p = centroid(t) if pivot is None else pivot
            cfg = construct("new", t, p)
            _base(cv, t)
            for i, c in enumerate(cfg.trace.circles.values(), 1):
                cv.circle(c, f"tangent-circle-{i}", "tangent-circle")
            _six(cv, cfg, circle_gid="fitted-circle")
            cv.mark(p, "P", "pivot")
        else:
            _base(cv, t)
            cv.infinite_line(l, o, "brocard-axis", "brocard-axis")
            cv.mark(o, "O", "circumcenter")
            for kind, name in CENTER_NAMES.items():
                c = construct(kind, t, l).center
                cv.mark(c, name, f"center-{name}", "center", offset=(3, -9))
            slot = l + (o - l) * ((float(SPECTRUM["second"]) + float(SPECTRUM["third"])) / 2)
            cv.mark(slot, "?", "open-slot", "open-slot", offset=(3, -9))
        return cv.finish()


def svg_bytes(fig: Figure) -> bytes:
    buf = io.BytesIO()
    with mpl.rc_context(RC):
        fig.savefig(buf, format="svg", metadata=SVG_METADATA)
    return buf.getvalue()


def write_figure(fig_id: int, t: Triangle, path: str | Path, pivot: Point | None = None) -> Path:
    path = Path(path)
    data = svg_bytes(build_figure(fig_id, t, pivot))
    path.write_bytes(data)
    return path


def plot_sweep(t: Triangle, sweep, path: str | Path) -> Path:
    """Scatter of log10 residual over the pivot grid of a sweep."""
    path = Path(path)
    with mpl.rc_context(RC):
        fig = Figure(figsize=(6, 5))
        FigureCanvasSVG(fig)
        ax = fig.add_subplot(1, 1, 1)
        ax.set_aspect("equal")
        pts = [(p.as_tuple(), v) for p, v in zip(sweep.pivots, sweep.residuals) if v is not None]
        xy = np.array([p for p, _ in pts])
        val = np.log10(np.maximum([v for _, v in pts], 1e-18))
        sc = ax.scatter(xy[:, 0], xy[:, 1], c=val, s=6, cmap="viridis")
        sc.set_gid("sweep-nodes")
        fig.colorbar(sc, ax=ax, label="log10 residual")
        tri = [v.as_tuple() for v in t.vertices()]
        ax.plot(*zip(*(tri + tri[:1])), color=STYLE["triangle"]["color"], lw=1.0)
        l = symmedian_point(t)
        ax.plot([float(l.x)], [float(l.y)], "x", color=STYLE["center"]["color"], ms=6, label="L")
        if sweep.refined is not None:
            ax.plot([float(sweep.refined.x)], [float(sweep.refined.y)], "+", color="k", ms=8, label="refined")
        ax.legend(loc="upper right")
        ax.set_title(f"{sweep.kind} construction: residual over interior pivots")
        fig.savefig(path, format=path.suffix.lstrip(".") or "svg", metadata=SVG_METADATA if path.suffix == ".svg" else None)
    return path


def spectrum_chart(ratios: dict, path: str | Path) -> Path:
    """Directed ratios of the circle centers on a number line."""
    path = Path(path)
    with mpl.rc_context(RC):
        fig = Figure(figsize=(6, 1.8))
        FigureCanvasSVG(fig)
        ax = fig.add_subplot(1, 1, 1)
        ax.axhline(0, color=STYLE["brocard-axis"]["color"], lw=1.0)
        for kind, value in sorted(ratios.items(), key=lambda kv: kv[1]):
            ax.plot([value], [0], "o", color=STYLE["center"]["color"])
            ax.annotate(CENTER_NAMES.get(kind, kind), (value, 0), xytext=(0, 6), textcoords="offset points",
                        ha="center")
        slot = (float(SPECTRUM["second"]) + float(SPECTRUM["third"])) / 2
        ax.plot([slot], [0], "o", mfc="none", color=STYLE["open-slot"]["color"])
        ax.set_yticks([])
        ax.set_xlabel("t  (center = L + t (O - L))")
        lo = min(min(ratios.values()), slot) - 0.1
        hi = max(ratios.values()) + 0.1
        ax.set_xlim(lo, max(hi, 1.05))
        ax.plot([0, 1], [0, 0], "|", color="k", ms=10)
        fig.tight_layout()
        fig.savefig(path, format=path.suffix.lstrip(".") or "svg", metadata=SVG_METADATA if path.suffix == ".svg" else None)
    return path
