import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_energy
from softdisc.bonds import build_bond_graph
from softdisc.canonical import canonical_configuration
from softdisc.config import Configuration, PotentialParams
from softdisc.energy import decompose, elastic_energy, potential_value, total_energy
from softdisc.errors import InfeasibleConfiguration
from softdisc.search import random_feasible_configuration
from softdisc.verify import perturbed_lattice_configuration

D = 1 / 24


@pytest.mark.parametrize("r, v", [(1.0, -1.0), (1 + D / 2, -0.5), (2.0, 0.0), (0.9, math.inf), (1 + D, 0.0)])
def test_potential_values(r, v):
    assert potential_value(PotentialParams(D), r) == pytest.approx(v, abs=1e-12)


def test_sticky_potential():
    p = PotentialParams(0.0)
    assert potential_value(p, 1.0) == -1.0
    assert potential_value(p, 1.0 + 1e-6) == 0.0


def test_total_energy_examples():
    assert total_energy(Configuration.from_xy([(0, 0), (1, 0)])) == -1
    assert total_energy(Configuration.from_xy([(0, 0), (1.5, 0)])) == 0
    assert total_energy(canonical_configuration(7)) == -12
    assert total_energy(Configuration.from_xy([(0, 0), (0.5, 0)])) == math.inf
    assert total_energy(Configuration.from_xy([(3, 3)])) == 0


def test_elastic_examples():
    assert elastic_energy(build_bond_graph(canonical_configuration(19)), PotentialParams(D)) == 0
    for stretch, want in ((D, 1.0), (D / 4, 0.25)):
        c = Configuration.from_xy([(0, 0), (1 + stretch, 0)])
        p = PotentialParams(D)
        assert elastic_energy(build_bond_graph(c, p), p) == pytest.approx(want, abs=1e-9)


def test_decompose_examples():
    br = decompose(canonical_configuration(19))
    assert (br.per_gr, br.mu, br.chi, br.elastic, br.total, br.residual) == (12, 0, 1, 0.0, -42.0, 0.0)
    assert br.excess == 15
    one = decompose(Configuration.from_xy([(0, 0)]))
    assert (one.total, one.per_gr, one.chi, one.residual) == (0.0, 0, 1, 0.0)
    with pytest.raises(InfeasibleConfiguration):
        decompose(Configuration.from_xy([(0, 0), (0.99, 0)]))


def test_random_float_configuration_n20():
    c = random_feasible_configuration(20, 10.0, 5)
    assert abs(decompose(c).residual) <= 1e-9


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 30), st.sampled_from([1 / 24, 0.1, 0.0]), st.integers(0, 2**31), st.booleans())
def test_energy_matches_brute_force_and_identity(n, delta, seed, dense):
    rng = np.random.default_rng(seed)
    if dense:
        c = perturbed_lattice_configuration(rng, n, delta)
    else:
        c = random_feasible_configuration(n, math.sqrt(4 * n), rng, delta)
    e = total_energy(c)
    assert e == pytest.approx(brute_energy(c.xy, delta), abs=1e-9)
    br = decompose(c)
    assert abs(br.residual) <= 1e-9
    assert br.excess >= 0


def test_lattice_energy_independent_of_delta():
    c = canonical_configuration(30)
    assert total_energy(c.with_delta(0.0)) == total_energy(c.with_delta(0.15)) == pytest.approx(total_energy(c.to_euclid()), abs=1e-9)


def test_breakdown_json_is_stable():
    a = decompose(canonical_configuration(12)).to_json(sort_keys=True)
    b = decompose(canonical_configuration(12)).to_json(sort_keys=True)
    assert a == b and '"residual": 0.0' in a
