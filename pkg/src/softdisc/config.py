"""Point configurations on the triangular lattice and in the Euclidean plane.

A lattice point ``(a, b)`` stands for ``a*u + b*w`` with ``u = (1, 0)`` and
``w = (1/2, sqrt(3)/2)``.  Lattice points keep exact integer coordinates so
that adjacency and energies of lattice subsets are computed without rounding.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Sequence, Union

import numpy as np
from scipy.spatial import cKDTree

from .errors import ConfigFormatError, DomainError, ValidationError

SQRT3_2 = math.sqrt(3.0) / 2.0

#: Upper bound (exclusive) on the bond-length slack delta.
DELTA_MAX = 1.0 / (2.0 * math.sin(math.pi / 7.0)) - 1.0
DEFAULT_DELTA = 1.0 / 24.0

#: The six nearest-neighbour offsets, in counterclockwise angular order
#: starting from angle 0.
NEIGHBOR_OFFSETS: tuple[tuple[int, int], ...] = (
    (1, 0),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (0, -1),
    (1, -1),
)
DIRECTION_INDEX = {off: k for k, off in enumerate(NEIGHBOR_OFFSETS)}


@dataclass(frozen=True, slots=True)
class LatticePoint:
    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, (int, np.integer)) and isinstance(self.b, (int, np.integer))):
            raise ValidationError(f"lattice coordinates must be integers, got {self.a!r}, {self.b!r}")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))


@dataclass(frozen=True, slots=True)
class EuclidPoint:
    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValidationError(f"non-finite coordinates ({self.x!r}, {self.y!r})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


Point = Union[LatticePoint, EuclidPoint]


def lattice_to_euclid(p: LatticePoint) -> EuclidPoint:
    return EuclidPoint(p.a + 0.5 * p.b, SQRT3_2 * p.b)


def lattice_norm2(da: int, db: int) -> int:
    """Squared Euclidean length of the lattice vector ``da*u + db*w`` (exact)."""
    return da * da + da * db + db * db


def check_delta(delta: float) -> float:
    delta = float(delta)
    if not (0.0 <= delta < DELTA_MAX):
        raise DomainError(f"delta must satisfy 0 <= delta < {DELTA_MAX:.6f}, got {delta}")
    return delta


@dataclass(frozen=True)
class PotentialParams:
    """Parameters of the soft-disc potential.

    ``hard_core_tolerance`` widens the contact distance downwards: a pair at
    distance in ``[1 - tol, 1)`` is treated as touching rather than
    overlapping.  ``bond_tolerance`` widens the bond cutoff ``1 + delta``.
    """

    delta: float = DEFAULT_DELTA
    hard_core_tolerance: float = 1e-9
    bond_tolerance: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "delta", check_delta(self.delta))
        for name in ("hard_core_tolerance", "bond_tolerance"):
            tol = getattr(self, name)
            if not tol > 0:
                raise DomainError(f"{name} must be positive")
            if self.delta > 0 and tol >= self.delta / 10:
                raise DomainError(f"{name} must be < delta/10")

    @property
    def contact_min(self) -> float:
        return 1.0 - self.hard_core_tolerance

    @property
    def bond_max(self) -> float:
        return 1.0 + self.delta + self.bond_tolerance


@dataclass(frozen=True)
class Configuration:
    """An ordered finite point set together with its delta.

    Points may mix lattice and Euclidean tags; exact lattice arithmetic is
    used only when every point is a lattice point.
    """

    points: tuple[Point, ...]
    delta: float = DEFAULT_DELTA
    _validated: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "delta", check_delta(self.delta))
        for p in self.points:
            if not isinstance(p, (LatticePoint, EuclidPoint)):
                raise ValidationError(f"not a point: {p!r}")
        if self._validated:
            self._check_distinct()

    def _check_distinct(self):
        if self.is_lattice:
            keys = [(p.a, p.b) for p in self.points]
        else:
            keys = [tuple(row) for row in self.xy.tolist()]
        seen: dict[tuple, int] = {}
        for i, key in enumerate(keys):
            if key in seen:
                raise ValidationError(f"points {seen[key]} and {i} coincide at {key}")
            seen[key] = i

    @classmethod
    def from_lattice(cls, coords: Iterable[Sequence[int]], delta: float = DEFAULT_DELTA) -> "Configuration":
        return cls(tuple(LatticePoint(int(a), int(b)) for a, b in coords), delta)

    @classmethod
    def from_xy(cls, xy: Iterable[Sequence[float]], delta: float = DEFAULT_DELTA) -> "Configuration":
        return cls(tuple(EuclidPoint(x, y) for x, y in xy), delta)

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def is_lattice(self) -> bool:
        return all(isinstance(p, LatticePoint) for p in self.points)

    @cached_property
    def lattice_coords(self) -> np.ndarray | None:
        """``(N, 2)`` int64 array when every point is a lattice point, else None."""
        if not self.is_lattice:
            return None
        return np.array([(p.a, p.b) for p in self.points], dtype=np.int64).reshape(-1, 2)

    @cached_property
    def xy(self) -> np.ndarray:
        out = np.empty((len(self.points), 2), dtype=float)
        for i, p in enumerate(self.points):
            if isinstance(p, LatticePoint):
                out[i] = (p.a + 0.5 * p.b, SQRT3_2 * p.b)
            else:
                out[i] = (p.x, p.y)
        return out

    def subset(self, indices: Iterable[int]) -> "Configuration":
        return Configuration(tuple(self.points[i] for i in indices), self.delta, _validated=False)

    def with_delta(self, delta: float) -> "Configuration":
        return Configuration(self.points, delta, _validated=False)

    def to_euclid(self) -> "Configuration":
        return Configuration.from_xy(self.xy, self.delta)


# ---------------------------------------------------------------------------
# text format


def parse_configuration(text: str | bytes | IO) -> Configuration:
    """Parse the line-based configuration format.

    ``#`` starts a comment line, ``delta <value>`` is an optional header and
    each data line is ``L <a> <b>`` or ``E <x> <y>``.
    """
    if hasattr(text, "read"):
        text = text.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    points: list[Point] = []
    delta = DEFAULT_DELTA
    seen_delta = False
    index_line: dict[tuple, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "delta":
            if seen_delta or points:
                raise ConfigFormatError("delta header must appear once, before any point", lineno)
            if len(fields) != 2:
                raise ConfigFormatError("expected 'delta <value>'", lineno)
            try:
                delta = check_delta(float(fields[1]))
            except ValueError as exc:
                raise ConfigFormatError(str(exc), lineno) from None
            seen_delta = True
            continue
        if tag not in ("L", "E") or len(fields) != 3:
            raise ConfigFormatError(f"expected 'L <a> <b>' or 'E <x> <y>', got {line!r}", lineno)
        try:
            if tag == "L":
                p: Point = LatticePoint(int(fields[1]), int(fields[2]))
                key: tuple = (p.a + 0.5 * p.b, SQRT3_2 * p.b)
            else:
                p = EuclidPoint(float(fields[1]), float(fields[2]))
                key = (p.x, p.y)
        except ValueError as exc:
            raise ConfigFormatError(str(exc), lineno) from None
        if key in index_line:
            raise ValidationError(f"line {lineno}: duplicate point (line {index_line[key]})")
        index_line[key] = lineno
        points.append(p)
    return Configuration(tuple(points), delta, _validated=False)


def format_real(x: float) -> str:
    return format(float(x), ".17g")


def serialize_configuration(c: Configuration, header: bool = True) -> str:
    buf = io.StringIO()
    if header:
        buf.write(f"delta {format_real(c.delta)}\n")
    for p in c.points:
        if isinstance(p, LatticePoint):
            buf.write(f"L {p.a} {p.b}\n")
        else:
            buf.write(f"E {format_real(p.x)} {format_real(p.y)}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# metric queries


def min_pairwise_distance(c: Configuration) -> float:
    if len(c) < 2:
        raise DomainError("need at least two points")
    if c.is_lattice:
        lc = c.lattice_coords
        # nearest lattice pairs are found among Euclidean nearest neighbours
        tree = cKDTree(c.xy)
        _, idx = tree.query(c.xy, k=2)
        d = lc[idx[:, 1]] - lc
        return math.sqrt(int(min(lattice_norm2(int(x), int(y)) for x, y in d)))
    tree = cKDTree(c.xy)
    dist, _ = tree.query(c.xy, k=2)
    return float(dist[:, 1].min())


# ---------------------------------------------------------------------------
# lattice isometries


def rotate60(a: int, b: int) -> tuple[int, int]:
    """Counterclockwise rotation by pi/3 in lattice coordinates."""
    return -b, a + b


def lattice_isometries() -> list:
    """The 12 point-group elements of the triangular lattice as callables."""
    ops = []
    for reflect in (False, True):
        for r in range(6):
            def op(p, r=r, reflect=reflect):
                a, b = (p[1], p[0]) if reflect else p
                for _ in range(r):
                    a, b = -b, a + b
                return a, b
            ops.append(op)
    return ops


def normal_form(cells: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Lexicographically least translate-normalised image under the 12 isometries.

    Each image is translated so that its lexicographically smallest point
    sits at the origin.
    """
    pts = list(cells)
    best = None
    for reflect in (False, True):
        cur = [(b, a) for a, b in pts] if reflect else pts
        for r in range(6):
            if r:
                cur = [(-b, a + b) for a, b in cur]
            srt = sorted(cur)
            a0, b0 = srt[0]
            cand = tuple([(a - a0, b - b0) for a, b in srt])
            if best is None or cand < best:
                best = cand
    return best if best is not None else ()


def canonicalize_isometry(c: Configuration) -> Configuration:
    if not c.is_lattice:
        raise DomainError("canonicalize_isometry requires lattice points only")
    nf = normal_form((p.a, p.b) for p in c.points)
    return Configuration(tuple(LatticePoint(a, b) for a, b in nf), c.delta, _validated=False)
