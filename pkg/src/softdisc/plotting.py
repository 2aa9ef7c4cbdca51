"""SVG rendering of configurations and of the auxiliary function g."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
# stable element ids so identical input gives identical SVG bytes
matplotlib.rcParams["svg.hashsalt"] = "softdisc"

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .bonds import build_bond_graph  # noqa: E402
from .config import Configuration, PotentialParams  # noqa: E402
from .faces import _CODES, EdgeClass, classify_faces, face_walks  # noqa: E402
from .lemmas import g_array, zmax  # noqa: E402

PX_PER_UNIT = 40
MARGIN = 1.0

EDGE_STYLE = {
    EdgeClass.INTERIOR: ("#4d4d4d", 1.0),
    EdgeClass.BOUNDARY: ("#1f4e9c", 2.6),
    EdgeClass.WIRE_EXT: ("#c0392b", 1.6),
    EdgeClass.WIRE_INT: ("#e67e22", 1.6),
}


def _figure(xy: np.ndarray):
    if len(xy):
        lo, hi = xy.min(axis=0) - MARGIN, xy.max(axis=0) + MARGIN
    else:
        lo, hi = np.array([-MARGIN, -MARGIN]), np.array([MARGIN, MARGIN])
    w, h = hi - lo
    # SVG output is at 72 units per inch
    fig = plt.figure(figsize=(w * PX_PER_UNIT / 72, h * PX_PER_UNIT / 72), dpi=72)
    ax = fig.add_axes((0, 0, 1, 1))
    ax.set_xlim(lo[0], hi[0])
    ax.set_ylim(lo[1], hi[1])
    ax.set_aspect("equal")
    ax.axis("off")
    return fig, ax


def render_configuration(c: Configuration, path, p: PotentialParams | None = None) -> dict:
    """Draw points, bonds coloured by class and shaded non-triangular faces.

    Returns a small summary of what was drawn.
    """
    p = p or PotentialParams(c.delta)
    g = build_bond_graph(c, p)
    d = classify_faces(g)
    xy = c.xy
    fig, ax = _figure(xy)

    walks = face_walks(g)
    shaded = 0
    for w, per in zip(d.face_walks.tolist(), d.face_perimeters.tolist()):
        if per > 3:
            ax.add_patch(Polygon(xy[list(walks[w].vertices)], closed=True, fc="#f3d9a4", ec="none", zorder=0))
            shaded += 1

    for code, cls in enumerate(_CODES):
        sel = d.edge_class_codes == code
        if not np.any(sel):
            continue
        color, lw = EDGE_STYLE[cls]
        segs = xy[g.edges[sel]]
        ax.add_collection(LineCollection(segs, colors=color, linewidths=lw, zorder=1))

    bverts = sorted(d.boundary_vertices)
    inner = np.setdiff1d(np.arange(len(c)), bverts)
    ax.scatter(xy[inner, 0], xy[inner, 1], s=18, c="black", zorder=2)
    ax.scatter(xy[bverts, 0], xy[bverts, 1], s=22, c="#1f4e9c", zorder=2)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return {"points": len(c), "bonds": g.m, "faces": d.n_faces, "shaded_faces": shaded}


def render_g_function(deltas, path, points: int = 400) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for delta in deltas:
        z = np.linspace(0.0, zmax(delta), points)
        ax.plot(z, g_array(z, delta), label=f"delta = {delta:.4g}")
    ax.axhline(0, color="grey", lw=0.6)
    ax.set_xlabel("z")
    ax.set_ylabel("g(z)")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
