"""The acceptance battery: ten numbered checks, each returning a :class:`CriterionResult`.

``max_n`` caps every size range (a quick smoke run uses e.g. ``max_n=30``);
``None`` runs the full battery.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .bonds import build_bond_graph
from .canonical import (
    boundary_growth_check,
    canonical_boundary_count,
    canonical_configuration,
    canonical_energy,
    harborth_energy,
    hexagonal_number,
)
from .config import DEFAULT_DELTA, NEIGHBOR_OFFSETS, Configuration, PotentialParams
from .energy import decompose
from .errors import InvariantViolation, PreconditionError
from .faces import EdgeClass, classify_faces
from .lemmas import g_suite, shelling_check, vertex_inequality_suite
from .search import basin_hop, canonical_normal_form, lattice_minimum, random_feasible_configuration, random_sample_minimum

RESIDUAL_TOL = 1e-9


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title} ({self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return asdict(self)


def _cap(limit: int, max_n: int | None) -> int:
    return limit if max_n is None else min(limit, max_n)


def _timed(number: int, title: str, fn) -> CriterionResult:
    t = time.perf_counter()
    passed, details = fn()
    return CriterionResult(number, title, bool(passed), time.perf_counter() - t, details)


# --- 1 ---------------------------------------------------------------------


def exhaustive_minimality(max_n=None, delta=DEFAULT_DELTA, threads=1) -> CriterionResult:
    def run():
        bad = []
        energies = {}
        for n in range(1, _cap(10, max_n) + 1):
            rep = lattice_minimum(n, delta, threads)
            energies[n] = rep.best_energy
            forms = {tuple((p.a, p.b) for p in c.points) for c in rep.best_configurations}
            ok = rep.best_energy == canonical_energy(n) == harborth_energy(n)
            if not ok or canonical_normal_form(n) not in forms:
                bad.append(n)
        return not bad, {"failures": bad, "best_energies": energies}

    return _timed(1, "exhaustive minimality", run)


# --- 2 ---------------------------------------------------------------------


def _random_animal(rng: np.random.Generator, n: int) -> list[tuple[int, int]]:
    cells = [(0, 0)]
    seen = {(0, 0)}
    while len(cells) < n:
        a, b = cells[rng.integers(len(cells))]
        da, db = NEIGHBOR_OFFSETS[rng.integers(6)]
        q = (a + da, b + db)
        if q not in seen:
            seen.add(q)
            cells.append(q)
    return cells


def perturbed_lattice_configuration(rng: np.random.Generator, n: int, delta: float) -> Configuration:
    """A random lattice animal, scaled into the bond range, rotated and jittered.

    Scaling by ``1 + delta/2`` with jitter below ``delta/5`` keeps every
    lattice bond inside ``[1, 1 + delta]`` and every non-bond beyond reach.
    With ``delta = 0`` only the rotation is applied.
    """
    cells = np.array(_random_animal(rng, n), dtype=float)
    xy = np.stack([cells[:, 0] + cells[:, 1] / 2, cells[:, 1] * math.sqrt(3) / 2], axis=1)
    theta = rng.uniform(0, 2 * math.pi)
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    xy = xy @ rot.T
    if delta > 0:
        xy *= 1 + delta / 2
        r = delta / 5 * np.sqrt(rng.random(n)) * 0.999
        phi = rng.uniform(0, 2 * math.pi, n)
        xy += np.stack([r * np.cos(phi), r * np.sin(phi)], axis=1)
    return Configuration.from_xy(xy, delta)


def random_test_configurations(count: int, max_points: int, delta: float, seed: int = 0):
    """Seeded mix of sequentially sampled and perturbed-lattice configurations
    with no nesting of components."""
    rng = np.random.default_rng(seed)
    p = PotentialParams(delta)
    made = 0
    while made < count:
        n = int(rng.integers(2, max_points + 1))
        if made % 2:
            c = perturbed_lattice_configuration(rng, n, delta)
        else:
            c = random_feasible_configuration(n, math.sqrt(4 * n), rng, delta)
        faces = classify_faces(build_bond_graph(c, p))
        if faces.nesting_depth > 1:
            continue
        made += 1
        yield c, faces


def decomposition_identity(max_n=None, delta=DEFAULT_DELTA, samples=1000) -> CriterionResult:
    def run():
        p = PotentialParams(delta)
        worst = 0.0
        bad = []
        for n in range(1, _cap(500, max_n) + 1):
            r = abs(decompose(canonical_configuration(n, delta), p).residual)
            worst = max(worst, r)
            if not r <= RESIDUAL_TOL:
                bad.append(n)
        worst_random = 0.0
        for i, (c, faces) in enumerate(random_test_configurations(samples, _cap(30, max_n), delta)):
            r = abs(decompose(c, p, faces).residual)
            worst_random = max(worst_random, r)
            if not r <= RESIDUAL_TOL:
                bad.append(("random", i))
        return not bad, {"failures": bad[:20], "max_residual_canonical": worst, "max_residual_random": worst_random}

    return _timed(2, "decomposition identity", run)


# --- 3, 4 ------------------------------------------------------------------


def boundary_formula(max_n=None, delta=DEFAULT_DELTA) -> CriterionResult:
    def run():
        p = PotentialParams(delta)
        bad = []
        for n in range(1, _cap(2000, max_n) + 1):
            faces = classify_faces(build_bond_graph(canonical_configuration(n, delta), p))
            if len(faces.boundary_vertices) != canonical_boundary_count(n):
                bad.append(n)
        return not bad, {"failures": bad[:20]}

    return _timed(3, "boundary formula", run)


def canonical_cleanliness(max_n=None, delta=DEFAULT_DELTA) -> CriterionResult:
    def run():
        p = PotentialParams(delta)
        bad = []
        for n in range(1, _cap(2000, max_n) + 1):
            faces = classify_faces(build_bond_graph(canonical_configuration(n, delta), p))
            br = decompose(canonical_configuration(n, delta), p, faces)
            wires = faces.count(EdgeClass.WIRE_EXT) + faces.count(EdgeClass.WIRE_INT)
            if br.mu != 0 or br.elastic != 0 or br.chi != 1 or (n >= 3 and wires):
                bad.append(n)
        return not bad, {"failures": bad[:20]}

    return _timed(4, "canonical cleanliness", run)


# --- 5 ---------------------------------------------------------------------


def boundary_growth(max_n=None) -> CriterionResult:
    def run():
        bad = []
        nine = None
        for n in range(2, _cap(10**4, max_n) + 1):
            g = boundary_growth_check(n)
            if n == 9:
                nine = (g.ineq_i, g.ineq_ii, g.gap_i)
                if g.ineq_i or g.gap_i != 8:
                    bad.append(n)
            elif not (g.ineq_i and g.ineq_ii):
                bad.append(n)
        return not bad, {"failures": bad[:20], "n9": nine}

    return _timed(5, "boundary-growth inequalities", run)


# --- 6, 7 ------------------------------------------------------------------


def vertex_inequality(samples=10**5) -> CriterionResult:
    def run():
        reports = [vertex_inequality_suite(d, samples, seed=k) for k, d in enumerate((1 / 24, 0.10))]
        return all(r["passed"] for r in reports), {"suites": reports}

    return _timed(6, "vertex inequality", run)


def g_function_shape() -> CriterionResult:
    def run():
        reports = [g_suite(d) for d in (1 / 24, 0.10, 0.15)]
        return all(r["passed"] for r in reports), {"suites": reports}

    return _timed(7, "g-function sign and monotonicity", run)


# --- 8 ---------------------------------------------------------------------


def shelling(max_n=None, delta=DEFAULT_DELTA) -> CriterionResult:
    def run():
        p = PotentialParams(delta)
        top = _cap(500, max_n)
        # s <= 12 gives hexagonal numbers up to 469, all inside the range
        hexagonal = {hexagonal_number(s) for s in range(1, 13)}
        bad, checked, skipped = [], 0, 0
        for n in range(1, top + 1):
            try:
                r = shelling_check(canonical_configuration(n, delta), p)
            except PreconditionError:
                skipped += 1
                continue
            checked += 1
            if not r.holds or (n in hexagonal and not r.equality):
                bad.append(n)
        # N = 7 is the first canonical size with a nonempty interior
        return not bad and (checked > 0 or top < 7), {"failures": bad, "checked": checked, "skipped": skipped}

    return _timed(8, "shelling inequality", run)


# --- 9 ---------------------------------------------------------------------


def _stochastic_one(args):
    n, delta, restarts, samples = args
    p = PotentialParams(delta)
    try:
        bh = basin_hop(n, p, rng_seed=n, iterations=restarts)
        rs = random_sample_minimum(n, samples, rng_seed=10**6 + n, params=p)
    except InvariantViolation as exc:
        return n, None, None, str(exc)
    return n, bh.best_energy, rs.best_energy, None


def stochastic_lower_bound(max_n=None, delta=DEFAULT_DELTA, restarts=50, samples=1000, threads=1) -> CriterionResult:
    """Raises :class:`InvariantViolation` if any run beats the canonical energy."""

    def run():
        jobs = [(n, delta, restarts, samples) for n in range(3, _cap(20, max_n) + 1)]
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                out = list(pool.map(_stochastic_one, jobs))
        else:
            out = [_stochastic_one(j) for j in jobs]
        for n, _, _, err in out:
            if err:
                raise InvariantViolation(err)
        best = {n: {"basin_hop": bh, "random_sample": rs, "canonical": canonical_energy(n)} for n, bh, rs, _ in out}
        return True, {"best": best}

    return _timed(9, "stochastic lower bound", run)


# --- 10 --------------------------------------------------------------------


def sticky_disc_mode(max_n=None, threads=1) -> CriterionResult:
    def run():
        parts = [
            exhaustive_minimality(max_n, 0.0, threads),
            decomposition_identity(max_n, 0.0),
            boundary_formula(max_n, 0.0),
            canonical_cleanliness(max_n, 0.0),
        ]
        return all(r.passed for r in parts), {r.title: r.passed for r in parts}

    return _timed(10, "sticky-disc mode reruns 1-4", run)


def run_battery(max_n: int | None = None, threads: int = 1, only=None) -> list[CriterionResult]:
    checks = {
        1: lambda: exhaustive_minimality(max_n, threads=threads),
        2: lambda: decomposition_identity(max_n),
        3: lambda: boundary_formula(max_n),
        4: lambda: canonical_cleanliness(max_n),
        5: lambda: boundary_growth(max_n),
        6: lambda: vertex_inequality(),
        7: lambda: g_function_shape(),
        8: lambda: shelling(max_n),
        9: lambda: stochastic_lower_bound(max_n, threads=threads),
        10: lambda: sticky_disc_mode(max_n, threads),
    }
    return [checks[k]() for k in sorted(checks) if only is None or k in only]
