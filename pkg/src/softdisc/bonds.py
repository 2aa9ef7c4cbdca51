"""Bond graph generated by a configuration.

Two points are bonded when their distance lies in ``[1, 1 + delta]``.  The
graph carries a rotation system: around every vertex the outgoing half-edges
are sorted counterclockwise, which is all the face traversal needs.

Half-edge ``2e`` runs ``edges[e, 0] -> edges[e, 1]`` and ``2e + 1`` is its twin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .config import (
    DIRECTION_INDEX,
    NEIGHBOR_OFFSETS,
    Configuration,
    PotentialParams,
)
from .errors import InfeasibleConfiguration

_KEY_SHIFT = np.int64(1 << 31)
_DIRECTION_TABLE = np.full((3, 3), -1, dtype=np.int64)
for (_da, _db), _k in DIRECTION_INDEX.items():
    _DIRECTION_TABLE[_da + 1, _db + 1] = _k


def candidate_pairs(xy: np.ndarray, cutoff: float) -> tuple[np.ndarray, np.ndarray]:
    """All pairs ``i < j`` with ``|xy[i] - xy[j]| <= cutoff``.

    Uniform-grid spatial hash with cell size ``cutoff``; expected O(N) work
    for point sets of bounded density.
    """
    n = len(xy)
    if n < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    cell = np.floor((xy - xy.min(axis=0)) / cutoff).astype(np.int64)
    height = int(cell[:, 1].max()) + 3
    key = cell[:, 0] * height + cell[:, 1]
    order = np.argsort(key, kind="stable")
    skey = key[order]
    idx = np.arange(n, dtype=np.int64)
    out_i, out_j = [], []
    for dx, dy in ((0, 0), (1, -1), (1, 0), (1, 1), (0, 1)):
        target = key + dx * height + dy
        lo = np.searchsorted(skey, target, side="left")
        hi = np.searchsorted(skey, target, side="right")
        counts = hi - lo
        total = int(counts.sum())
        if total == 0:
            continue
        starts = np.cumsum(counts) - counts
        within = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
        j = order[np.repeat(lo, counts) + within]
        i = np.repeat(idx, counts)
        if dx == 0 and dy == 0:
            keep = i < j
            i, j = i[keep], j[keep]
        out_i.append(i)
        out_j.append(j)
    if not out_i:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    i = np.concatenate(out_i)
    j = np.concatenate(out_j)
    d = np.hypot(*(xy[i] - xy[j]).T)
    keep = d <= cutoff
    i, j = i[keep], j[keep]
    lo_, hi_ = np.minimum(i, j), np.maximum(i, j)
    order = np.lexsort((hi_, lo_))
    return lo_[order], hi_[order]


def _lattice_keys(lc: np.ndarray) -> np.ndarray:
    return lc[:, 0] * _KEY_SHIFT + lc[:, 1]


def lattice_bonds(lc: np.ndarray) -> np.ndarray:
    """Unit-distance pairs of a lattice point set, via exact offset lookup."""
    n = len(lc)
    if n < 2:
        return np.empty((0, 2), dtype=np.int64)
    keys = _lattice_keys(lc)
    order = np.argsort(keys)
    skeys = keys[order]
    pairs = []
    for da, db in ((1, 0), (0, 1), (1, -1)):
        target = keys + da * _KEY_SHIFT + db
        pos = np.searchsorted(skeys, target)
        pos_c = np.minimum(pos, n - 1)
        hit = skeys[pos_c] == target
        i = np.nonzero(hit)[0]
        pairs.append(np.stack([i, order[pos_c[hit]]], axis=1))
    e = np.concatenate(pairs)
    e = np.sort(e, axis=1)
    return e[np.lexsort((e[:, 1], e[:, 0]))]


def _upper(x, y) -> bool:
    return y > 0 or (y == 0 and x > 0)


def _exact_direction_cmp(u: tuple[int, int], v: tuple[int, int]) -> int:
    # lattice vector (a, b) -> Euclidean direction of (2a + b, sqrt(3) b)
    ux, uy = 2 * u[0] + u[1], u[1]
    vx, vy = 2 * v[0] + v[1], v[1]
    hu, hv = _upper(ux, uy), _upper(vx, vy)
    if hu != hv:
        return -1 if hu else 1
    cross = ux * vy - uy * vx
    return -1 if cross > 0 else (1 if cross < 0 else 0)


@dataclass(frozen=True, eq=False)
class BondGraph:
    """Vertices, bonds and the counterclockwise rotation system."""

    xy: np.ndarray
    edges: np.ndarray
    lattice: np.ndarray | None = None
    lengths: np.ndarray | None = None

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        object.__setattr__(self, "edges", edges)
        if self.lengths is None:
            d = self.xy[edges[:, 1]] - self.xy[edges[:, 0]]
            object.__setattr__(self, "lengths", np.hypot(d[:, 0], d[:, 1]))

    @classmethod
    def from_edges(cls, config: Configuration, edges: Sequence[Sequence[int]]) -> "BondGraph":
        """A graph with prescribed edges, bypassing the bond rule (for tests)."""
        e = np.sort(np.asarray(list(edges), dtype=np.int64).reshape(-1, 2), axis=1)
        return cls(config.xy, e, config.lattice_coords)

    @property
    def n(self) -> int:
        return len(self.xy)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def he_origin(self) -> np.ndarray:
        return self.edges.reshape(-1).copy()

    @cached_property
    def he_target(self) -> np.ndarray:
        return self.edges[:, ::-1].reshape(-1).copy()

    @cached_property
    def degree(self) -> np.ndarray:
        return np.bincount(self.edges.reshape(-1), minlength=self.n)

    @cached_property
    def _angle_key(self) -> np.ndarray:
        o, t = self.he_origin, self.he_target
        if self.lattice is not None:
            d = self.lattice[t] - self.lattice[o]
            norm2 = d[:, 0] ** 2 + d[:, 0] * d[:, 1] + d[:, 1] ** 2
            if np.all(norm2 == 1):
                return _DIRECTION_TABLE[d[:, 0] + 1, d[:, 1] + 1]
            offs = {tuple(map(int, row)) for row in np.unique(d, axis=0)}
            ranked = sorted(offs, key=cmp_to_key(_exact_direction_cmp))
            rank = {}
            r = -1
            for k, off in enumerate(ranked):
                if k == 0 or _exact_direction_cmp(ranked[k - 1], off) != 0:
                    r += 1
                rank[off] = r
            return np.array([rank[tuple(map(int, row))] for row in d], dtype=np.int64)
        d = self.xy[t] - self.xy[o]
        ang = np.arctan2(d[:, 1], d[:, 0])
        return np.where(ang < 0, ang + 2 * math.pi, ang)

    @cached_property
    def _rotation(self) -> tuple[np.ndarray, np.ndarray]:
        o, t = self.he_origin, self.he_target
        order = np.lexsort((t, self._angle_key, o))
        deg = self.degree
        start = np.cumsum(deg) - deg
        pos = np.empty(len(order), dtype=np.int64)
        pos[order] = np.arange(len(order)) - start[o[order]]
        d = deg[o]
        prev = order[start[o] + (pos - 1) % np.maximum(d, 1)]
        nxt = order[start[o] + (pos + 1) % np.maximum(d, 1)]
        return prev, nxt

    @property
    def rotation_prev(self) -> np.ndarray:
        """Half-edge clockwise-adjacent to each half-edge around its origin."""
        return self._rotation[0]

    @property
    def rotation_next(self) -> np.ndarray:
        return self._rotation[1]

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbours of each vertex in counterclockwise order."""
        o, t = self.he_origin, self.he_target
        order = np.lexsort((t, self._angle_key, o))
        out: list[list[int]] = [[] for _ in range(self.n)]
        for h in order.tolist():
            out[o[h]].append(int(t[h]))
        return tuple(tuple(a) for a in out)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in self.edges}


def build_bond_graph(c: Configuration, p: PotentialParams | None = None) -> BondGraph:
    """Bond graph of ``c``; raises :class:`InfeasibleConfiguration` on overlap."""
    p = p or PotentialParams(c.delta)
    lc = c.lattice_coords
    if lc is not None:
        # distinct lattice points are >= 1 apart and 1 + delta < sqrt(3)
        e = lattice_bonds(lc)
        return BondGraph(c.xy, e, lc, np.ones(len(e)))
    xy = c.xy
    i, j = candidate_pairs(xy, p.bond_max)
    d = np.hypot(*(xy[i] - xy[j]).T) if len(i) else np.empty(0)
    bad = d < p.contact_min
    if bad.any():
        k = np.flatnonzero(bad)
        k = k[np.argmin(d[k])]
        raise InfeasibleConfiguration((int(i[k]), int(j[k])), float(d[k]))
    keep = d >= p.contact_min
    e = np.stack([i[keep], j[keep]], axis=1)
    return BondGraph(xy, e, None, d[keep])


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple[frozenset[int], ...]
    labels: np.ndarray

    def __len__(self) -> int:
        return len(self.blocks)


def connected_components(g: BondGraph) -> ComponentPartition:
    n = g.n
    if n == 0:
        return ComponentPartition((), np.empty(0, dtype=np.int64))
    e = g.edges
    adj = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
    k, labels = _cc(adj, directed=False)
    labels = labels.astype(np.int64)
    members: list[list[int]] = [[] for _ in range(k)]
    for v, lab in enumerate(labels.tolist()):
        members[lab].append(v)
    return ComponentPartition(tuple(frozenset(b) for b in members), labels)


# ---------------------------------------------------------------------------
# planarity


def _sign(v: np.ndarray, eps: float) -> np.ndarray:
    return np.where(v > eps, 1, np.where(v < -eps, -1, 0))


def segments_cross(p1, p2, q1, q2, eps: float = 0.0) -> np.ndarray:
    """Vectorised test whether the open segments ``(p1, p2)`` and ``(q1, q2)`` meet.

    Integer inputs are evaluated exactly; float inputs use ``eps`` as the
    collinearity guard on the orientation determinants.
    """
    def orient(a, b, c):
        return (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])

    s1 = _sign(orient(p1, p2, q1), eps)
    s2 = _sign(orient(p1, p2, q2), eps)
    s3 = _sign(orient(q1, q2, p1), eps)
    s4 = _sign(orient(q1, q2, p2), eps)
    proper = (s1 * s2 < 0) & (s3 * s4 < 0)
    colin = (s1 == 0) & (s2 == 0) & (s3 == 0) & (s4 == 0)
    d = p2 - p1
    l2 = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    t1 = (q1 - p1)[:, 0] * d[:, 0] + (q1 - p1)[:, 1] * d[:, 1]
    t2 = (q2 - p1)[:, 0] * d[:, 0] + (q2 - p1)[:, 1] * d[:, 1]
    lo = np.maximum(np.minimum(t1, t2), 0)
    hi = np.minimum(np.maximum(t1, t2), l2)
    overlap = (hi - lo) > eps * np.maximum(l2, 1)
    return proper | (colin & overlap)


def assert_planar(g: BondGraph) -> bool:
    """True iff no two open bond segments intersect (shared endpoints allowed)."""
    if g.m < 2:
        return True
    e = g.edges
    if g.lattice is not None:
        # (a, b) -> (2a + b, b) is a positive-determinant image of the plane
        pts = np.stack([2 * g.lattice[:, 0] + g.lattice[:, 1], g.lattice[:, 1]], axis=1)
        eps = 0
    else:
        pts = g.xy
        eps = 1e-12
    mid = 0.5 * (g.xy[e[:, 0]] + g.xy[e[:, 1]])
    # two segments that meet have midpoints within the longer length
    i, j = candidate_pairs(mid, float(g.lengths.max()) * (1 + 1e-9))
    if len(i) == 0:
        return True
    cross = segments_cross(pts[e[i, 0]], pts[e[i, 1]], pts[e[j, 0]], pts[e[j, 1]], eps)
    return not bool(cross.any())
