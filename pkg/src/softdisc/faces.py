"""Faces of a planar bond graph.

Face walks come from the rotation system: after arriving at ``v`` along
``u -> v`` the walk leaves along the half-edge clockwise-adjacent to
``v -> u``.  Bounded regions are then traced counterclockwise (positive
signed area) and each connected component contributes one clockwise outer
walk.

A counterclockwise walk bounds a genuine face only if the region it encloses
is simply connected, i.e. no other connected component sits inside it.  Such
a component can only lie entirely inside, so one representative vertex per
component is tested.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .bonds import BondGraph, connected_components

SQRT3_4 = np.sqrt(3.0) / 4.0
AREA_EPS = 1e-12
GUARD = 1e-9


class EdgeClass(str, enum.Enum):
    INTERIOR = "interior"
    WIRE_EXT = "wire_ext"
    WIRE_INT = "wire_int"
    BOUNDARY = "boundary"


_CODES = (EdgeClass.INTERIOR, EdgeClass.WIRE_EXT, EdgeClass.WIRE_INT, EdgeClass.BOUNDARY)


@dataclass(frozen=True)
class Walk:
    half_edges: tuple[int, ...]
    vertices: tuple[int, ...]
    area: float

    @property
    def orientation(self) -> str:
        """``"ccw"`` for positive signed area; zero-area walks count as ``"cw"``."""
        return "ccw" if self.area > AREA_EPS else "cw"

    def __len__(self) -> int:
        return len(self.half_edges)


@dataclass(frozen=True)
class FaceRecord:
    walk: int
    boundary_edge_count: int
    wire_int_edge_count: int
    perimeter: int
    vertices: frozenset[int]

    def __post_init__(self):
        assert self.perimeter == self.boundary_edge_count + 2 * self.wire_int_edge_count
        assert self.perimeter >= 3


@dataclass(frozen=True, eq=False)
class FaceDecomposition:
    graph: BondGraph
    walk_label: np.ndarray
    walk_area: np.ndarray
    #: walk id, #Ed^bd(f), #Ed^wire,int(f) and perimeter of each genuine face
    face_walks: np.ndarray
    face_boundary_counts: np.ndarray
    face_wire_int_counts: np.ndarray
    face_perimeters: np.ndarray
    edge_class_codes: np.ndarray
    per_gr: int
    chi: int
    boundary_vertices: frozenset[int]
    component_labels: np.ndarray
    #: component -> innermost enclosing component (None at top level)
    nesting: dict[int, int | None] = field(default_factory=dict)
    nesting_depth: int = 1

    @cached_property
    def faces(self) -> tuple[FaceRecord, ...]:
        o = self.graph.he_origin
        order = np.argsort(self.walk_label, kind="stable")
        bounds = np.searchsorted(self.walk_label[order], np.arange(len(self.walk_area) + 1))
        out = []
        for w, b, wi, per in zip(
            self.face_walks.tolist(),
            self.face_boundary_counts.tolist(),
            self.face_wire_int_counts.tolist(),
            self.face_perimeters.tolist(),
        ):
            verts = frozenset(o[order[bounds[w]:bounds[w + 1]]].tolist())
            out.append(FaceRecord(w, b, wi, per, verts))
        return tuple(out)

    @cached_property
    def edge_classes(self) -> dict[tuple[int, int], EdgeClass]:
        return {
            (int(a), int(b)): _CODES[c]
            for (a, b), c in zip(self.graph.edges.tolist(), self.edge_class_codes.tolist())
        }

    def count(self, cls: EdgeClass) -> int:
        return int(np.count_nonzero(self.edge_class_codes == _CODES.index(cls)))

    @property
    def n_faces(self) -> int:
        return len(self.face_walks)

    @property
    def n_components(self) -> int:
        return int(self.component_labels.max()) + 1 if len(self.component_labels) else 0


def _next_half_edge(g: BondGraph) -> np.ndarray:
    twin = np.arange(2 * g.m, dtype=np.int64) ^ 1
    return g.rotation_prev[twin]


def _label_cycles(nxt: np.ndarray) -> tuple[int, np.ndarray]:
    h = len(nxt)
    if h == 0:
        return 0, np.empty(0, dtype=np.int64)
    perm = coo_matrix((np.ones(h), (np.arange(h), nxt)), shape=(h, h))
    k, labels = _cc(perm, directed=True, connection="weak")
    return k, labels.astype(np.int64)


def _twice_area_terms(g: BondGraph) -> np.ndarray:
    """Per-half-edge shoelace terms; exact integers in lattice coordinates."""
    o, t = g.he_origin, g.he_target
    if g.lattice is not None:
        P, Q = g.lattice[o], g.lattice[t]
    else:
        P, Q = g.xy[o], g.xy[t]
    return P[:, 0] * Q[:, 1] - Q[:, 0] * P[:, 1]


def _walk_areas(g: BondGraph, labels: np.ndarray, k: int) -> np.ndarray:
    terms = _twice_area_terms(g)
    if g.lattice is not None:
        a2 = np.zeros(k, dtype=np.int64)
        np.add.at(a2, labels, terms)
        return a2 * SQRT3_4
    return np.bincount(labels, weights=terms, minlength=k) * 0.5


def face_walks(g: BondGraph) -> list[Walk]:
    """Decompose all ``2 * #edges`` half-edges into closed walks."""
    nxt = _next_half_edge(g)
    k, labels = _label_cycles(nxt)
    areas = _walk_areas(g, labels, k)
    o = g.he_origin
    # lowest half-edge of each cycle is its starting point
    first = np.full(k, len(labels), dtype=np.int64)
    np.minimum.at(first, labels, np.arange(len(labels)))
    nxt_l = nxt.tolist()
    walks = []
    for w in range(k):
        h0 = int(first[w])
        seq = [h0]
        h = nxt_l[h0]
        while h != h0:
            seq.append(h)
            h = nxt_l[h]
        walks.append(Walk(tuple(seq), tuple(int(o[x]) for x in seq), float(areas[w])))
    return walks


def _inside_counts(g: BondGraph, point_xy, point_lattice, he_mask: np.ndarray, labels, k):
    """Winding number of one point w.r.t. every walk, restricted to ``he_mask``.

    Returns ``(winding, touching)`` arrays of length ``k``; ``touching`` marks
    walks passing within the guard band of the point.
    """
    hs = np.flatnonzero(he_mask)
    o, t = g.he_origin[hs], g.he_target[hs]
    if g.lattice is not None:
        P, Q, x = g.lattice[o], g.lattice[t], np.asarray(point_lattice)
        eps = 0
    else:
        P, Q, x = g.xy[o], g.xy[t], np.asarray(point_xy)
        eps = GUARD
    left = (Q[:, 0] - P[:, 0]) * (x[1] - P[:, 1]) - (x[0] - P[:, 0]) * (Q[:, 1] - P[:, 1])
    up = (P[:, 1] <= x[1]) & (x[1] < Q[:, 1]) & (left > 0)
    down = (Q[:, 1] <= x[1]) & (x[1] < P[:, 1]) & (left < 0)
    contrib = up.astype(np.int64) - down.astype(np.int64)
    # on-segment guard
    d = Q - P
    l2 = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    tpar = (x[0] - P[:, 0]) * d[:, 0] + (x[1] - P[:, 1]) * d[:, 1]
    if eps:
        dist_line = np.abs(left) / np.sqrt(np.maximum(l2, 1e-300))
        touch = (dist_line <= eps) & (tpar >= -eps) & (tpar <= l2 + eps)
    else:
        touch = (left == 0) & (tpar >= 0) & (tpar <= l2)
    lab = labels[hs]
    winding = np.bincount(lab, weights=contrib, minlength=k)
    touching = np.bincount(lab, weights=touch, minlength=k) > 0
    return np.rint(winding).astype(np.int64), touching


def classify_faces(g: BondGraph, walks: list[Walk] | None = None) -> FaceDecomposition:
    """Genuine faces, edge classes, graph perimeter, Euler characteristic, boundary."""
    if walks is None:
        nxt = _next_half_edge(g)
        k, labels = _label_cycles(nxt)
        areas = _walk_areas(g, labels, k)
    else:
        k = len(walks)
        labels = np.empty(2 * g.m, dtype=np.int64)
        for w, walk in enumerate(walks):
            labels[list(walk.half_edges)] = w
        areas = np.array([w.area for w in walks], dtype=float)
    lengths = np.bincount(labels, minlength=k) if k else np.zeros(0, dtype=np.int64)

    comps = connected_components(g)
    comp = comps.labels
    n_comp = len(comps)
    candidate = areas > AREA_EPS
    walk_comp = np.full(k, -1, dtype=np.int64)
    if k:
        walk_comp[labels] = comp[g.he_origin]

    disqualified = np.zeros(k, dtype=bool)
    nesting: dict[int, int | None] = {c: None for c in range(n_comp)}
    if n_comp > 1 and candidate.any():
        he_cand = candidate[labels]
        for c, block in enumerate(comps.blocks):
            r = min(block)
            mask = he_cand & (walk_comp[labels] != c)
            if not mask.any():
                continue
            px = g.xy[r]
            pl = g.lattice[r] if g.lattice is not None else None
            winding, touching = _inside_counts(g, px, pl, mask, labels, k)
            inside = (winding != 0) & ~touching & candidate & (walk_comp != c)
            if inside.any():
                disqualified |= inside
                ws = np.flatnonzero(inside)
                nesting[c] = int(walk_comp[ws[np.argmin(areas[ws])]])
    genuine = candidate & ~disqualified

    m = g.m
    if m:
        l0, l1 = labels[0::2], labels[1::2]
        g0, g1 = genuine[l0], genuine[l1]
        codes = np.full(m, 1, dtype=np.int64)  # wire_ext
        codes[g0 & g1 & (l0 != l1)] = 0
        codes[g0 & g1 & (l0 == l1)] = 2
        codes[g0 ^ g1] = 3
    else:
        codes = np.zeros(0, dtype=np.int64)

    n_boundary = int(np.count_nonzero(codes == 3))
    n_wire_ext = int(np.count_nonzero(codes == 1))
    per_gr = n_boundary + 2 * n_wire_ext
    face_ids = np.flatnonzero(genuine)
    chi = g.n - m + len(face_ids)
    on_bd = (codes == 3) | (codes == 1)
    bverts = frozenset(np.unique(g.edges[on_bd].reshape(-1)).tolist()) if m else frozenset()

    if len(face_ids):
        twin_same = np.repeat(labels[0::2] == labels[1::2], 2)
        once = np.bincount(labels, weights=~twin_same, minlength=k).astype(np.int64)
        twice = np.bincount(labels, weights=twin_same, minlength=k).astype(np.int64)
        f_once, f_wint, f_per = once[face_ids], twice[face_ids] // 2, lengths[face_ids]
        assert np.all(f_per == f_once + 2 * f_wint) and np.all(f_per >= 3)
    else:
        f_once = f_wint = f_per = np.zeros(0, dtype=np.int64)

    depth = 1
    for c in nesting:
        d, cur = 1, nesting[c]
        while cur is not None:
            d += 1
            cur = nesting[cur]
        depth = max(depth, d)

    return FaceDecomposition(
        graph=g,
        walk_label=labels,
        walk_area=areas,
        face_walks=face_ids,
        face_boundary_counts=f_once,
        face_wire_int_counts=f_wint,
        face_perimeters=f_per,
        edge_class_codes=codes,
        per_gr=per_gr,
        chi=chi,
        boundary_vertices=bverts,
        component_labels=comp,
        nesting=nesting,
        nesting_depth=depth,
    )


def has_simple_closed_boundary(d: FaceDecomposition) -> bool:
    """O(G) is nonempty with a single simple closed polygon as boundary, and no wires."""
    if d.n_faces == 0:
        return False
    codes = d.edge_class_codes
    if np.any((codes == 1) | (codes == 2)):
        return False
    be = d.graph.edges[codes == 3]
    if len(be) < 3:
        return False
    deg = np.bincount(be.reshape(-1), minlength=d.graph.n)
    touched = deg > 0
    if np.any(deg[touched] != 2):
        return False
    n = d.graph.n
    adj = coo_matrix((np.ones(len(be)), (be[:, 0], be[:, 1])), shape=(n, n))
    _, lab = _cc(adj, directed=False)
    return len(np.unique(lab[touched])) == 1
