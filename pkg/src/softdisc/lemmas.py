"""Numerical probes of the analytic inequalities behind the crystallization proof.

* per-vertex bound: for a boundary vertex with spokes ``e_0 .. e_{I-1}``
  (``e_0`` and ``e_{I-1}`` on the boundary) spanning the inner angle ``alpha``,
  ``V(e_0)/2 + V(e_{I-1})/2 + sum_inner V(e) >= -3 alpha / pi``;
* the auxiliary function ``g`` and the long-bond length bound;
* the shelling inequality ``F(X) >= F(X \\ boundary) + 6``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bonds import build_bond_graph, connected_components
from .config import DEFAULT_DELTA, DELTA_MAX, Configuration, PotentialParams
from .energy import decompose
from .errors import DomainError, PreconditionError
from .faces import classify_faces, has_simple_closed_boundary

MARGIN_TOL = 1e-12
EQUALITY_TOL = 1e-9
SHAPE_TOL = 1e-6


def zmax(delta: float) -> float:
    """Largest relative angle deficit ``z`` compatible with bonds of length <= 1 + delta."""
    if not 0.0 <= delta <= DELTA_MAX:
        raise DomainError(f"delta must lie in [0, {DELTA_MAX:.6f}], got {delta}")
    return 1.0 - (6.0 / math.pi) * math.asin(1.0 / (2.0 * (1.0 + delta)))


def _check_z(z: float, delta: float) -> None:
    if not delta > 0:
        raise DomainError("g is defined for delta > 0 only")
    top = zmax(delta)
    if not (0.0 <= z <= top * (1 + 1e-12)):
        raise DomainError(f"z={z} outside [0, {top}]")


def g_function(z: float, delta: float) -> float:
    _check_z(z, delta)
    return -1.0 / (2 * delta) + 1.0 / (4 * delta * math.sin((1 - z) * math.pi / 6)) - z


def g_prime(z: float, delta: float) -> float:
    _check_z(z, delta)
    t = (1 - z) * math.pi / 6
    return math.pi / (24 * delta) * math.cos(t) / math.sin(t) ** 2 - 1


def g_second(z: float, delta: float) -> float:
    _check_z(z, delta)
    t = (1 - z) * math.pi / 6
    return math.pi**2 / (144 * delta) * (1 + math.cos(t) ** 2) / math.sin(t) ** 3


def g_array(z: np.ndarray, delta: float) -> np.ndarray:
    return -1.0 / (2 * delta) + 1.0 / (4 * delta * np.sin((1 - z) * np.pi / 6)) - z


def min_long_bond_length(z: float) -> float:
    """Lower bound on the longer spoke around an angle of ``(1 - z) pi/3``."""
    if not 0.0 <= z < 1.0:
        raise DomainError(f"z must lie in [0, 1), got {z}")
    return 1.0 / (2.0 * math.sin((1 - z) * math.pi / 6))


def spoke_bound_f(abar: float, alpha: float) -> float:
    """``sin(abar) + cos(abar) tan(alpha - abar)``; its reciprocal bounds the long spoke."""
    return math.sin(abar) + math.cos(abar) * math.tan(alpha - abar)


# ---------------------------------------------------------------------------
# vertex fans


@dataclass(frozen=True)
class VertexFan:
    """Spokes around a boundary vertex at the origin.

    ``angles`` are absolute, increasing and measured inside the configuration;
    the first and last spoke are the two boundary edges.
    """

    lengths: tuple[float, ...]
    angles: tuple[float, ...]

    @property
    def alpha(self) -> float:
        return self.angles[-1] - self.angles[0]

    @property
    def boundary_flags(self) -> tuple[bool, ...]:
        k = len(self.lengths)
        return tuple(i == 0 or i == k - 1 for i in range(k))

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.angles)

    def endpoints(self) -> np.ndarray:
        a = np.asarray(self.angles)
        return np.asarray(self.lengths)[:, None] * np.stack([np.cos(a), np.sin(a)], axis=1)

    def to_dict(self) -> dict:
        return {"lengths": list(self.lengths), "angles": list(self.angles), "alpha": self.alpha}


@dataclass(frozen=True)
class LemmaProbeResult:
    margin: float
    witness: object


def _validate_fan(fan: VertexFan, p: PotentialParams) -> None:
    if len(fan.lengths) < 2 or len(fan.lengths) != len(fan.angles):
        raise DomainError("a fan needs at least two spokes with matching angles")
    if np.any(np.diff(fan.angles) <= 0):
        raise DomainError("angles must be strictly increasing")
    lo, hi = p.contact_min, p.bond_max
    if any(not (lo <= r <= hi) for r in fan.lengths):
        raise DomainError("spoke lengths must lie in [1, 1 + delta]")
    pts = fan.endpoints()
    d = np.hypot(*(pts[:, None, :] - pts[None, :, :]).transpose(2, 0, 1))
    iu = np.triu_indices(len(pts), 1)
    if d[iu].min() < lo:
        raise DomainError("infeasible fan: two spoke endpoints closer than 1")


def _v(lengths: np.ndarray, delta: float) -> np.ndarray:
    if delta == 0:
        return -np.ones_like(lengths)
    return -1.0 + np.maximum(lengths - 1.0, 0.0) / delta


def vertex_inequality_probe(fan: VertexFan, p: PotentialParams | None = None) -> LemmaProbeResult:
    p = p or PotentialParams()
    _validate_fan(fan, p)
    v = _v(np.asarray(fan.lengths), p.delta)
    lhs = 0.5 * (v[0] + v[-1]) + v[1:-1].sum()
    return LemmaProbeResult(float(lhs + 3.0 * fan.alpha / math.pi), fan)


def _fan_margins(lengths: np.ndarray, alpha: np.ndarray, delta: float) -> np.ndarray:
    v = _v(lengths, delta)
    return 0.5 * (v[:, 0] + v[:, -1]) + v[:, 1:-1].sum(axis=1) + 3.0 * alpha / np.pi


def sample_fans(rng: np.random.Generator, count: int, delta: float, spokes: int):
    """Rejection-sample feasible fans with a fixed spoke count.

    Returns ``(lengths, angles)`` arrays of shape ``(m, spokes)``, ``m <= count``.
    About a tenth of the proposals sit next to the lattice equality case.
    """
    # no two spokes can be closer in angle than this, and the closing gap
    # between the last and first spoke obeys the same bound
    tight = 2 * math.asin(1 / (2 * (1 + delta)))
    gap_lo = tight - 0.02
    gap_hi = (2 * math.pi - tight) / (spokes - 1) + 0.02
    near = rng.random(count) < 0.1
    lengths = rng.uniform(1.0, 1.0 + delta, size=(count, spokes))
    gaps = rng.uniform(gap_lo, gap_hi, size=(count, spokes - 1))
    lengths[near] = 1.0 + np.abs(rng.normal(0, 1e-12, size=(near.sum(), spokes)))
    gaps[near] = np.pi / 3 + np.abs(rng.normal(0, 1e-10, size=(near.sum(), spokes - 1)))
    angles = np.concatenate([np.zeros((count, 1)), np.cumsum(gaps, axis=1)], axis=1)
    ok = angles[:, -1] < 2 * np.pi
    pts = lengths[..., None] * np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    for a in range(spokes):
        for b in range(a + 1, spokes):
            ok &= np.hypot(*(pts[:, a] - pts[:, b]).T) >= 1.0
    return lengths[ok], angles[ok]


def vertex_inequality_suite(delta: float, samples: int = 10**5, seed: int = 0) -> dict:
    """Monte Carlo over ``samples`` feasible fans with 2..6 spokes."""
    rng = np.random.default_rng(seed)
    per = -(-samples // 5)
    min_margin, witness = math.inf, None
    total = 0
    near = 0
    near_ok = True
    for spokes in range(2, 7):
        want = min(per, samples - total)
        got_l, got_a = [], []
        have = 0
        while have < want:
            l, a = sample_fans(rng, 2 * (want - have) + 16, delta, spokes)
            got_l.append(l)
            got_a.append(a)
            have += len(l)
        lengths = np.concatenate(got_l)[:want]
        angles = np.concatenate(got_a)[:want]
        total += len(lengths)
        margins = _fan_margins(lengths, angles[:, -1] - angles[:, 0], delta)
        k = int(np.argmin(margins))
        if margins[k] < min_margin:
            min_margin = float(margins[k])
            witness = VertexFan(tuple(lengths[k].tolist()), tuple(angles[k].tolist()))
        eq = np.abs(margins) <= EQUALITY_TOL
        near += int(eq.sum())
        if eq.any():
            gaps = np.diff(angles[eq], axis=1)
            near_ok &= bool(np.all(np.abs(gaps - np.pi / 3) <= SHAPE_TOL))
            near_ok &= bool(np.all(np.abs(lengths[eq] - 1.0) <= SHAPE_TOL))
    return {
        "delta": delta,
        "samples": total,
        "min_margin": min_margin,
        "passed": min_margin >= -MARGIN_TOL and near_ok,
        "near_equality": near,
        "near_equality_shape_ok": near_ok,
        "witness": witness.to_dict() if witness else None,
    }


def g_suite(delta: float, points: int = 10**4) -> dict:
    z = np.linspace(0.0, zmax(delta), points)
    g = g_array(z, delta)
    d1 = np.diff(g)
    d2 = np.diff(g, 2)
    g0 = g_function(0.0, delta)
    return {
        "delta": delta,
        "g0": g0,
        "min_g": float(g.min()),
        "min_increment": float(d1.min()),
        "min_second_difference": float(d2.min()),
        "passed": abs(g0) <= 1e-14 and bool(g.min() >= -1e-14) and bool(d1.min() >= 0) and bool(d2.min() >= -1e-13),
    }


# ---------------------------------------------------------------------------
# shelling


@dataclass(frozen=True)
class ShellingResult:
    lhs: float
    rhs: float
    holds: bool
    equality: bool
    mu: int
    mu_inner: int


def shelling_check(c: Configuration, p: PotentialParams | None = None) -> ShellingResult:
    """Compare the excess of ``c`` with that of ``c`` minus its boundary points."""
    p = p or PotentialParams(c.delta)
    g = build_bond_graph(c, p)
    if len(connected_components(g)) != 1:
        raise PreconditionError("connected", "the bond graph must be connected")
    faces = classify_faces(g)
    if not has_simple_closed_boundary(faces):
        raise PreconditionError("simple_closed_boundary", "O(G) must have a simple closed polygonal boundary")
    inner = [i for i in range(len(c)) if i not in faces.boundary_vertices]
    if not inner:
        raise PreconditionError("nonempty_interior", "removing the boundary leaves nothing")
    outer = decompose(c, p, faces)
    shell = decompose(c.subset(inner), p)
    lhs, rhs = outer.excess, shell.excess + 6
    equality = abs(lhs - rhs) <= EQUALITY_TOL
    holds = lhs >= rhs - EQUALITY_TOL and (not equality or outer.mu == shell.mu)
    return ShellingResult(lhs, rhs, holds, equality, outer.mu, shell.mu)


__all__ = [
    "DEFAULT_DELTA",
    "LemmaProbeResult",
    "ShellingResult",
    "VertexFan",
    "g_function",
    "g_prime",
    "g_second",
    "g_suite",
    "min_long_bond_length",
    "shelling_check",
    "spoke_bound_f",
    "vertex_inequality_probe",
    "vertex_inequality_suite",
    "zmax",
]
