"""Minimality certification at small N.

Exhaustive search runs over connected subsets of the triangular lattice
("lattice animals") up to the 12 lattice isometries.  Animals are grown one
site at a time with canonical augmentation: a child is kept only if it is
the canonical parent of itself, so every isometry class is emitted exactly
once without a global table.  Stochastic search samples the continuum and
greedily descends.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .canonical import canonical_configuration, canonical_energy
from .config import (
    DEFAULT_DELTA,
    NEIGHBOR_OFFSETS,
    Configuration,
    LatticePoint,
    PotentialParams,
    normal_form,
    serialize_configuration,
)
from .energy import total_energy
from .errors import CapacityError, DomainError, InvariantViolation, SaturationError

ENUMERATION_CAP = 12
MAX_REJECTIONS = 10**6
MOVE_RADIUS = 0.3
ENERGY_SLACK = 1e-9

Form = tuple[tuple[int, int], ...]


# ---------------------------------------------------------------------------
# exhaustive lattice search


def _connected(cells: set[tuple[int, int]]) -> bool:
    if not cells:
        return True
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        a, b = stack.pop()
        for da, db in NEIGHBOR_OFFSETS:
            q = (a + da, b + db)
            if q in cells and q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(cells)


def canonical_parent(form: Form) -> Form | None:
    """Normal form after deleting the last non-cut site of ``form``."""
    if len(form) <= 1:
        return None
    cells = set(form)
    for p in reversed(form):
        cells.discard(p)
        if _connected(cells):
            return normal_form(cells)
        cells.add(p)
    raise AssertionError("a finite connected set always has a non-cut vertex")


def _children(form: Form) -> list[Form]:
    cells = set(form)
    frontier = {(a + da, b + db) for a, b in form for da, db in NEIGHBOR_OFFSETS} - cells
    out = set()
    for c in frontier:
        child = normal_form(form + (c,))
        if child not in out and canonical_parent(child) == form:
            out.add(child)
    return sorted(out)


def _walk(form: Form, n: int) -> Iterator[Form]:
    if len(form) == n:
        yield form
        return
    for child in _children(form):
        yield from _walk(child, n)


def animal_forms(n: int) -> Iterator[Form]:
    """Normal forms of all lattice animals with ``n`` sites, in DFS order."""
    if n < 1:
        raise DomainError("N must be positive")
    if n > ENUMERATION_CAP:
        raise CapacityError(f"exhaustive enumeration is capped at N={ENUMERATION_CAP}")
    yield from _walk(((0, 0),), n)


def enumerate_lattice_animals(n: int, delta: float = DEFAULT_DELTA) -> Iterator[Configuration]:
    for form in animal_forms(n):
        yield Configuration(tuple(LatticePoint(a, b) for a, b in form), delta, _validated=False)


def lattice_bond_count(cells) -> int:
    s = set(cells)
    return sum((a + da, b + db) in s for a, b in s for da, db in ((1, 0), (0, 1), (1, -1)))


@dataclass
class SearchReport:
    n: int
    best_energy: float
    best_configurations: list[Configuration]
    states_visited: int
    method: str
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "best_energy": self.best_energy,
            "best_configurations": [serialize_configuration(c) for c in self.best_configurations],
            "states_visited": self.states_visited,
            "method": self.method,
            "seed": self.seed,
            **self.extra,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _scan(forms) -> tuple[int, list[Form], int]:
    best = None
    winners: list[Form] = []
    count = 0
    for form in forms:
        count += 1
        e = -lattice_bond_count(form)
        if best is None or e < best:
            best, winners = e, [form]
        elif e == best:
            winners.append(form)
    return best, winners, count


def _scan_branch(args) -> tuple[int, list[Form], int]:
    form, n = args
    return _scan(_walk(form, n))


def _branches(n: int, depth: int) -> list[Form]:
    level = [((0, 0),)]
    for _ in range(depth - 1):
        level = [c for f in level for c in _children(f)]
    return level


def lattice_minimum(n: int, delta: float = DEFAULT_DELTA, threads: int = 1) -> SearchReport:
    """Minimum energy over all lattice animals of size ``n``, with all minimisers.

    Lattice energies are ``-#unit bonds`` independently of delta.  With
    ``threads > 1`` disjoint subtrees are scanned in worker processes; the
    result does not depend on the worker count.
    """
    if n > ENUMERATION_CAP:
        raise CapacityError(f"exhaustive enumeration is capped at N={ENUMERATION_CAP}")
    if threads > 1 and n >= 6:
        branches = _branches(n, 5)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_scan_branch, [(b, n) for b in branches]))
        # some prefixes have no descendants of size n
        parts = [p for p in parts if p[0] is not None]
        best = min(p[0] for p in parts)
        winners = [f for p in parts if p[0] == best for f in p[1]]
        count = sum(p[2] for p in parts)
    else:
        best, winners, count = _scan(animal_forms(n))
    winners.sort()
    configs = [
        Configuration(tuple(LatticePoint(a, b) for a, b in f), delta, _validated=False)
        for f in winners
    ]
    return SearchReport(n, float(best), configs, count, "exhaustive")


def canonical_normal_form(n: int) -> Form:
    c = canonical_configuration(n)
    return normal_form((p.a, p.b) for p in c.points)


# ---------------------------------------------------------------------------
# stochastic search


def random_feasible_configuration(
    n: int,
    box_side: float,
    rng_seed=None,
    delta: float = DEFAULT_DELTA,
) -> Configuration:
    """Sequential rejection sampling of ``n`` hard discs in ``[0, box_side]^2``."""
    if box_side * box_side < 4 * n - 1e-9:
        raise SaturationError(f"box of side {box_side} is too small for {n} hard discs")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    pts = np.empty((n, 2))
    placed = 0
    rejections = 0
    while placed < n:
        q = rng.uniform(0.0, box_side, size=2)
        if placed:
            d2 = ((pts[:placed] - q) ** 2).sum(axis=1)
            if d2.min() < 1.0:
                rejections += 1
                if rejections >= MAX_REJECTIONS:
                    raise SaturationError(f"{MAX_REJECTIONS} consecutive rejections after {placed} points")
                continue
        pts[placed] = q
        placed += 1
        rejections = 0
    return Configuration.from_xy(pts, delta)


def _pair_potential(r: np.ndarray, p: PotentialParams) -> np.ndarray:
    v = np.zeros_like(r)
    bond = (r >= p.contact_min) & (r <= p.bond_max)
    if p.delta == 0.0:
        v[bond] = -1.0
    else:
        v[bond] = -1.0 + np.maximum(r[bond] - 1.0, 0.0) / p.delta
    v[r < p.contact_min] = np.inf
    return v


def _point_energy(pts: np.ndarray, i: int, q: np.ndarray, p: PotentialParams) -> float:
    r = np.hypot(pts[:, 0] - q[0], pts[:, 1] - q[1])
    r[i] = np.inf
    return float(_pair_potential(r, p).sum())


def basin_hop(
    n: int,
    params: PotentialParams | None = None,
    rng_seed: int | None = 0,
    iterations: int = 50,
    steps: int | None = None,
    box_side: float | None = None,
) -> SearchReport:
    """Random restarts followed by greedy single-point moves.

    A move displaces one point uniformly within a disc of radius 0.3 and is
    accepted iff the energy strictly decreases.  Finishing below the
    canonical energy raises :class:`InvariantViolation`.
    """
    if iterations < 1:
        raise DomainError("iterations must be >= 1")
    p = params or PotentialParams()
    steps = 200 * n if steps is None else steps
    box = math.sqrt(4 * n) if box_side is None else box_side
    rng = np.random.default_rng(rng_seed)
    best_e = math.inf
    best_pts = None
    visited = 0
    for _ in range(iterations):
        pts = random_feasible_configuration(n, box, rng, p.delta).xy.copy()
        e = total_energy(Configuration.from_xy(pts, p.delta), p)
        visited += 1
        if n >= 2:
            for _ in range(steps):
                i = int(rng.integers(n))
                rad = MOVE_RADIUS * math.sqrt(rng.random())
                ang = 2 * math.pi * rng.random()
                q = pts[i] + (rad * math.cos(ang), rad * math.sin(ang))
                new = _point_energy(pts, i, q, p)
                visited += 1
                if not math.isfinite(new):
                    continue
                old = _point_energy(pts, i, pts[i], p)
                if new < old:
                    pts[i] = q
                    e += new - old
        if e < best_e:
            best_e, best_pts = e, pts.copy()
    best = Configuration.from_xy(best_pts, p.delta)
    best_e = total_energy(best, p)
    bound = canonical_energy(n)
    if best_e < bound - ENERGY_SLACK:
        raise InvariantViolation(f"basin_hop found E={best_e!r} below canonical {bound} at N={n}")
    return SearchReport(n, best_e, [best], visited, "basin_hop", rng_seed)


def random_sample_minimum(
    n: int,
    samples: int,
    box_side: float | None = None,
    rng_seed: int | None = 0,
    params: PotentialParams | None = None,
) -> SearchReport:
    """Lowest energy among ``samples`` independent random feasible configurations."""
    p = params or PotentialParams()
    box = math.sqrt(4 * n) if box_side is None else box_side
    rng = np.random.default_rng(rng_seed)
    best_e, best = math.inf, None
    for _ in range(samples):
        c = random_feasible_configuration(n, box, rng, p.delta)
        e = total_energy(c, p)
        if e < best_e:
            best_e, best = e, c
    bound = canonical_energy(n)
    if best_e < bound - ENERGY_SLACK:
        raise InvariantViolation(f"random sample found E={best_e!r} below canonical {bound} at N={n}")
    return SearchReport(n, best_e, [best], samples, "random_sample", rng_seed)
