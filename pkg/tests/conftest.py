import math

import numpy as np
import pytest

from softdisc.config import NEIGHBOR_OFFSETS, Configuration


def brute_energy(xy, delta):
    """O(N^2) reference pair sum."""
    e = 0.0
    n = len(xy)
    for i in range(n):
        for j in range(i + 1, n):
            r = math.dist(xy[i], xy[j])
            if r < 1 - 1e-9:
                return math.inf
            if r <= 1 + delta + 1e-9:
                e += -1.0 if delta == 0 else -1.0 + max(r - 1.0, 0.0) / delta
    return e


def brute_bonds(xy, delta):
    n = len(xy)
    return {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if math.dist(xy[i], xy[j]) <= 1 + delta + 1e-9
    }


def random_animal(rng, n):
    cells = [(0, 0)]
    seen = {(0, 0)}
    while len(cells) < n:
        a, b = cells[rng.integers(len(cells))]
        da, db = NEIGHBOR_OFFSETS[rng.integers(6)]
        if (a + da, b + db) not in seen:
            seen.add((a + da, b + db))
            cells.append((a + da, b + db))
    return cells


def ring(k, center=(0.0, 0.0), side=1.0):
    radius = side / (2 * math.sin(math.pi / k))
    t = 2 * math.pi * np.arange(k) / k
    return np.stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)], axis=1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def lattice(cells, delta=1 / 24):
    return Configuration.from_lattice(cells, delta)
