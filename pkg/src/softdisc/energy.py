"""Soft-disc energy and its exact geometric decomposition.

For every finite-energy configuration

    E = -3 N + Per_gr + mu + 3 chi + E_el,

and the excess ``F = Per_gr + mu + 3 chi + E_el`` is what the canonical
configurations minimise.  :func:`decompose` evaluates both sides independently
(a pair scan for ``E``, face combinatorics for the right-hand side) and
reports the residual.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .bonds import BondGraph, build_bond_graph, candidate_pairs
from .config import Configuration, PotentialParams
from .faces import FaceDecomposition, classify_faces

INF = math.inf


def potential_value(p: PotentialParams, r: float) -> float:
    """V(r): +inf below contact, linear on the bond interval, 0 beyond."""
    if r < p.contact_min:
        return INF
    if r <= 1.0:
        return -1.0
    if p.delta == 0.0:
        return -1.0 if r <= p.bond_max else 0.0
    if r <= p.bond_max:
        return -1.0 + (r - 1.0) / p.delta
    return 0.0


def _params(c: Configuration, p: PotentialParams | None) -> PotentialParams:
    return p if p is not None else PotentialParams(c.delta)


def total_energy(c: Configuration, p: PotentialParams | None = None) -> float:
    """Half the double sum of pair potentials (each unordered pair once)."""
    p = _params(c, p)
    if len(c) < 2:
        return 0.0
    if c.is_lattice:
        lc = c.lattice_coords
        i, j = candidate_pairs(c.xy, 1.5)
        d = lc[i] - lc[j]
        norm2 = d[:, 0] ** 2 + d[:, 0] * d[:, 1] + d[:, 1] ** 2
        return -float(np.count_nonzero(norm2 == 1))
    xy = c.xy
    i, j = candidate_pairs(xy, p.bond_max)
    if len(i) == 0:
        return 0.0
    r = np.hypot(*(xy[i] - xy[j]).T)
    if np.any(r < p.contact_min):
        return INF
    if p.delta == 0.0:
        return -float(len(r))
    v = np.where(r <= 1.0, -1.0, -1.0 + (r - 1.0) / p.delta)
    return float(v.sum())


def elastic_energy(g: BondGraph, p: PotentialParams) -> float:
    """Sum of ``(r - 1) / delta`` over bonds strictly longer than 1."""
    if p.delta == 0.0 or g.lattice is not None or g.m == 0:
        return 0.0
    r = g.lengths
    stretched = r > 1.0
    return float(((r[stretched] - 1.0) / p.delta).sum())


def defect_measure(d: FaceDecomposition) -> int:
    per = d.face_perimeters
    return int((per[per >= 4] - 3).sum())


@dataclass(frozen=True)
class EnergyBreakdown:
    total: float
    n: int
    per_gr: int
    mu: int
    chi: int
    elastic: float
    excess: float
    residual: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def decompose(
    c: Configuration,
    p: PotentialParams | None = None,
    faces: FaceDecomposition | None = None,
) -> EnergyBreakdown:
    """Evaluate every term of the decomposition; raises on infeasible input."""
    p = _params(c, p)
    if faces is None:
        faces = classify_faces(build_bond_graph(c, p))
    el = elastic_energy(faces.graph, p)
    mu = defect_measure(faces)
    excess = faces.per_gr + mu + 3 * faces.chi + el
    total = total_energy(c, p)
    residual = total - (-3 * len(c) + excess)
    return EnergyBreakdown(
        total=total,
        n=len(c),
        per_gr=faces.per_gr,
        mu=mu,
        chi=faces.chi,
        elastic=el,
        excess=excess,
        residual=residual,
    )


def excess(c: Configuration, p: PotentialParams | None = None) -> float:
    return decompose(c, p).excess
