import json
import math

import numpy as np
import pytest

from softdisc.canonical import canonical_configuration, canonical_energy
from softdisc.config import NEIGHBOR_OFFSETS, Configuration, PotentialParams, min_pairwise_distance, normal_form
from softdisc.energy import total_energy
from softdisc.errors import CapacityError, DomainError, SaturationError
from softdisc.search import (
    animal_forms,
    basin_hop,
    canonical_normal_form,
    enumerate_lattice_animals,
    lattice_minimum,
    random_feasible_configuration,
    random_sample_minimum,
)

# free polyhexes (OEIS A000228) and fixed polyhexes (OEIS A001207)
FREE = [1, 1, 3, 7, 22, 82, 333, 1448]
FIXED = [1, 3, 11, 44, 186, 814, 3652]


def _fixed_animals(n):
    """Translation classes by naive growth; shares no code with the enumerator."""
    level = {frozenset([(0, 0)])}
    for _ in range(n - 1):
        nxt = set()
        for cells in level:
            for a, b in cells:
                for da, db in NEIGHBOR_OFFSETS:
                    q = (a + da, b + db)
                    if q in cells:
                        continue
                    grown = cells | {q}
                    a0, b0 = min(grown)
                    nxt.add(frozenset((x - a0, y - b0) for x, y in grown))
        level = nxt
    return level


@pytest.mark.parametrize("n", range(1, 8))
def test_fixed_counts_oracle(n):
    assert len(_fixed_animals(n)) == FIXED[n - 1]


@pytest.mark.parametrize("n", range(1, 9))
def test_free_counts(n):
    forms = list(animal_forms(n))
    assert len(forms) == FREE[n - 1]
    assert len(set(forms)) == len(forms)


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_oracle_up_to_isometry(n):
    want = {normal_form(f) for f in _fixed_animals(n)}
    assert set(animal_forms(n)) == want


def test_enumeration_is_deterministic_and_capped():
    assert list(animal_forms(6)) == list(animal_forms(6))
    with pytest.raises(CapacityError):
        list(animal_forms(13))
    with pytest.raises(DomainError):
        list(animal_forms(0))
    assert all(len(c) == 4 for c in enumerate_lattice_animals(4))


@pytest.mark.parametrize("n, e", [(3, -3), (7, -12)])
def test_lattice_minimum_examples(n, e):
    rep = lattice_minimum(n)
    assert rep.best_energy == e == canonical_energy(n)
    assert canonical_normal_form(n) in {tuple((p.a, p.b) for p in c.points) for c in rep.best_configurations}
    if n == 3:
        assert len(rep.best_configurations) == 1


def test_worker_count_does_not_change_result():
    a = lattice_minimum(8, threads=1).to_json()
    b = lattice_minimum(8, threads=3).to_json()
    assert a == b


def test_gluing_halves_lowers_energy():
    tri = canonical_configuration(3).xy
    apart = Configuration.from_xy(np.vstack([tri, tri + [10.0, 0.0]]))
    glued = Configuration.from_xy(np.vstack([tri, tri + [2.0, 0.0]]))
    assert total_energy(apart) == -6
    assert total_energy(glued) < total_energy(apart)


def test_random_feasible():
    assert len(random_feasible_configuration(1, 2.0, 0)) == 1
    c = random_feasible_configuration(5, 10.0, 7)
    assert min_pairwise_distance(c) >= 1
    assert random_feasible_configuration(5, 10.0, 7).points == c.points
    with pytest.raises(SaturationError):
        random_feasible_configuration(50, 8.0, 0)
    with pytest.raises(SaturationError):
        random_feasible_configuration(10, 5.0, 0)


def test_basin_hop_two_points():
    rep = basin_hop(2, PotentialParams(1 / 24), rng_seed=0, iterations=50)
    assert -1 <= rep.best_energy < -0.9


def test_basin_hop_bound_and_determinism():
    rep = basin_hop(7, rng_seed=1, iterations=10)
    assert rep.best_energy >= -12 - 1e-9
    a = basin_hop(13, rng_seed=5, iterations=3).to_json()
    b = basin_hop(13, rng_seed=5, iterations=3).to_json()
    assert a == b
    assert json.loads(a)["method"] == "basin_hop"
    with pytest.raises(DomainError):
        basin_hop(3, iterations=0)


def test_random_sample_minimum_bound():
    rep = random_sample_minimum(6, 200, rng_seed=2)
    assert rep.best_energy >= canonical_energy(6) - 1e-9
    assert rep.states_visited == 200
