"""Canonical spiral configurations and their closed-form boundary counts.

Every ``N >= 1`` is written uniquely as ``N = 3s^2 + 3s + 1 + (s+1)k + j`` with
``0 <= k <= 5`` and ``0 <= j <= s``.  The canonical configuration is the filled
side-``s`` hexagon, ``k`` complete sides of the next ring, and ``j`` points of
the following side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_DELTA, Configuration, LatticePoint
from .errors import DomainError


@dataclass(frozen=True)
class CanonicalIndex:
    s: int
    k: int
    j: int

    @property
    def n(self) -> int:
        return hexagonal_number(self.s) + (self.s + 1) * self.k + self.j

    @property
    def is_hexagonal(self) -> bool:
        return self.k == 0 and self.j == 0


def hexagonal_number(s: int) -> int:
    return 3 * s * s + 3 * s + 1


def canonical_index(n: int) -> CanonicalIndex:
    if n < 1:
        raise DomainError(f"N must be positive, got {n}")
    # largest s with 3s^2 + 3s + 1 <= n
    s = (math.isqrt(12 * n - 3) - 3) // 6
    while hexagonal_number(s + 1) <= n:
        s += 1
    while hexagonal_number(s) > n:
        s -= 1
    k, j = divmod(n - hexagonal_number(s), s + 1)
    idx = CanonicalIndex(s, k, j)
    assert 0 <= k <= 5 and 0 <= j <= s and idx.n == n
    return idx


def hex_norm(a: int, b: int) -> int:
    return max(abs(a), abs(b), abs(a + b))


def hexagon_points(s: int) -> list[LatticePoint]:
    """Lattice points of the side-``s`` hexagon centred at the origin."""
    if s < 0:
        raise DomainError("side length must be nonnegative")
    return [
        LatticePoint(a, b)
        for a in range(-s, s + 1)
        for b in range(max(-s, -a - s), min(s, -a + s) + 1)
    ]


def _rotate(a: int, b: int, r: int) -> tuple[int, int]:
    for _ in range(r % 6):
        a, b = -b, a + b
    return a, b


def _side(s: int, r: int, count: int) -> list[LatticePoint]:
    # alpha_1 + alpha_2 * w with alpha_1 + alpha_2 = s + 1 and 1 <= alpha_2 <= count
    return [LatticePoint(*_rotate(s + 1 - a2, a2, r)) for a2 in range(1, count + 1)]


def canonical_configuration(n: int, delta: float = DEFAULT_DELTA) -> Configuration:
    idx = canonical_index(n)
    pts = hexagon_points(idx.s)
    for r in range(idx.k):
        pts += _side(idx.s, r, idx.s + 1)
    pts += _side(idx.s, idx.k, idx.j)
    assert len(pts) == n
    return Configuration(tuple(pts), delta, _validated=False)


def canonical_boundary_count(n: int) -> int:
    """Number of boundary points (= graph perimeter) of the canonical configuration.

    ``n = 0`` (the empty configuration) is accepted and gives 0.
    """
    if n == 0 or n == 1:
        return 0
    idx = canonical_index(n)
    if idx.is_hexagonal:
        return 6 * idx.s
    return 6 * idx.s + idx.k + 1


def canonical_energy(n: int) -> int:
    if n < 1:
        raise DomainError(f"N must be positive, got {n}")
    if n == 1:
        return 0
    return -3 * n + canonical_boundary_count(n) + 3


def harborth_energy(n: int) -> int:
    """``-floor(3N - sqrt(12N - 3))`` in exact integer arithmetic."""
    if n < 1:
        raise DomainError(f"N must be positive, got {n}")
    m = 12 * n - 3
    r = math.isqrt(m)
    ceil_sqrt = r if r * r == m else r + 1
    return -(3 * n - ceil_sqrt)


@dataclass(frozen=True)
class GrowthCheck:
    n: int
    n_tilde: int
    ineq_i: bool
    ineq_ii: bool
    gap_i: int


def boundary_growth_check(n: int) -> GrowthCheck:
    """Both boundary-growth inequalities for the canonical family at ``n``.

    With ``m = n - #bd(n)``: (i) ``#bd(n) <= #bd(m) + 7`` and
    (ii) ``#bd(n) <= #bd(m + 1) + 6``.  For ``n <= 6`` the shell is empty
    (``m = 0``) and the empty configuration has no boundary.
    """
    if n < 2:
        raise DomainError(f"N must be at least 2, got {n}")
    bd = canonical_boundary_count(n)
    m = n - bd
    if m < 0:
        raise DomainError(f"negative shell size for N={n}")
    bd_m = canonical_boundary_count(m)
    bd_m1 = canonical_boundary_count(m + 1)
    return GrowthCheck(n, m, bd <= bd_m + 7, bd <= bd_m1 + 6, bd - bd_m)
