import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from softdisc.canonical import (
    CanonicalIndex,
    boundary_growth_check,
    canonical_boundary_count,
    canonical_configuration,
    canonical_energy,
    canonical_index,
    harborth_energy,
    hexagon_points,
)
from softdisc.config import LatticePoint
from softdisc.errors import DomainError


@pytest.mark.parametrize("n, idx", [(7, (1, 0, 0)), (12, (1, 2, 1)), (21, (2, 0, 2)), (1, (0, 0, 0)), (2, (0, 1, 0))])
def test_index_examples(n, idx):
    assert canonical_index(n) == CanonicalIndex(*idx)


@given(st.integers(1, 10**7))
def test_index_reconstructs(n):
    i = canonical_index(n)
    assert i.n == n and 0 <= i.k <= 5 and 0 <= i.j <= i.s


@pytest.mark.parametrize("s, size", [(0, 1), (1, 7), (3, 37)])
def test_hexagon_sizes(s, size):
    assert len(hexagon_points(s)) == size == 3 * s * s + 3 * s + 1


def test_configuration_examples():
    assert set(canonical_configuration(1).points) == {LatticePoint(0, 0)}
    c7 = canonical_configuration(7)
    assert {(p.a, p.b) for p in c7.points} == {(0, 0), (1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)}
    c9 = {(p.a, p.b) for p in canonical_configuration(9).points}
    assert c9 - {(p.a, p.b) for p in c7.points} == {(1, 1), (0, 2)}


def test_spiral_is_nested():
    prev = set()
    for n in range(1, 200):
        cur = set(canonical_configuration(n).points)
        assert prev < cur and len(cur) == n
        prev = cur


@pytest.mark.parametrize("n, bd", [(7, 6), (10, 8), (2, 2), (1, 0), (19, 12), (0, 0)])
def test_boundary_examples(n, bd):
    assert canonical_boundary_count(n) == bd


@pytest.mark.parametrize("n, e", [(7, -12), (4, -5), (1, 0)])
def test_energy_examples(n, e):
    assert canonical_energy(n) == e


@pytest.mark.parametrize("n, e", [(7, -12), (2, -1), (12, -24)])
def test_harborth_examples(n, e):
    assert harborth_energy(n) == e


def test_harborth_matches_float_formula():
    for n in range(1, 3000):
        assert harborth_energy(n) == -math.floor(3 * n - math.sqrt(12 * n - 3))


def test_canonical_energy_equals_harborth():
    for n in range(1, 10**4):
        assert canonical_energy(n) == harborth_energy(n)


@pytest.mark.parametrize("n, want", [(19, (True, True, 6)), (8, (True, True, 7))])
def test_growth_examples(n, want):
    g = boundary_growth_check(n)
    assert (g.ineq_i, g.ineq_ii, g.gap_i) == want


def test_growth_n9():
    g = boundary_growth_check(9)
    assert g.ineq_i is False and g.gap_i == 8 and g.n_tilde == 1


def test_domain_errors():
    for f in (canonical_index, canonical_configuration, canonical_energy, harborth_energy):
        with pytest.raises(DomainError):
            f(0)
    with pytest.raises(DomainError):
        boundary_growth_check(1)
    with pytest.raises(DomainError):
        hexagon_points(-1)
