import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from softdisc.canonical import canonical_configuration
from softdisc.config import DELTA_MAX, Configuration, PotentialParams
from softdisc.errors import DomainError, PreconditionError
from softdisc.lemmas import (
    VertexFan,
    _fan_margins,
    g_function,
    g_prime,
    g_second,
    g_suite,
    min_long_bond_length,
    sample_fans,
    shelling_check,
    spoke_bound_f,
    vertex_inequality_probe,
    vertex_inequality_suite,
    zmax,
)

mpmath.mp.dps = 40


def _zmax_mp(delta):
    return 1 - 6 / mpmath.pi * mpmath.asin(1 / (2 * (1 + mpmath.mpf(delta))))


def test_zmax_values():
    assert zmax(0.0) == pytest.approx(0.0, abs=1e-15)
    assert zmax(1e-12) < 1e-11
    assert zmax(1 / 24) == pytest.approx(float(_zmax_mp(mpmath.mpf(1) / 24)), abs=1e-10)
    assert zmax(1 / 24) == pytest.approx(0.0438199328627, abs=1e-12)
    assert zmax(DELTA_MAX) == pytest.approx(1 / 7, abs=1e-12)
    for bad in (-0.01, 0.2):
        with pytest.raises(DomainError):
            zmax(bad)


def test_long_bond_length():
    assert min_long_bond_length(0.0) == pytest.approx(1.0, abs=1e-15)
    assert min_long_bond_length(0.5) == pytest.approx(float(1 / (2 * mpmath.sin(mpmath.pi / 12))), abs=1e-12)
    assert min_long_bond_length(0.5) == pytest.approx(1.9319, abs=1e-4)
    for d in (1 / 24, 0.1, 0.15):
        assert min_long_bond_length(zmax(d)) == pytest.approx(1 + d, abs=1e-12)
    with pytest.raises(DomainError):
        min_long_bond_length(1.0)


def test_spoke_bound_helper():
    for alpha in np.linspace(0.3, 2.0, 9):
        assert spoke_bound_f(alpha / 2, alpha) == pytest.approx(2 * math.sin(alpha / 2), abs=1e-12)


@pytest.mark.parametrize("delta", [1 / 24, 0.1, 0.15])
def test_g_values(delta):
    assert abs(g_function(0.0, delta)) <= 1e-14
    assert g_function(zmax(delta), delta) > 0
    assert g_prime(0.0, delta) == pytest.approx(math.sqrt(3) * math.pi / (12 * delta) - 1, rel=1e-12)
    assert g_prime(0.0, delta) > 0
    with pytest.raises(DomainError):
        g_function(zmax(delta) + 1e-3, delta)
    with pytest.raises(DomainError):
        g_function(-1e-3, delta)


def test_g_at_zmax_default():
    assert g_function(zmax(1 / 24), 1 / 24) == pytest.approx(0.45618006713729, abs=1e-10)


def test_g_needs_positive_delta():
    with pytest.raises(DomainError):
        g_function(0.0, 0.0)


def _g_mp(z, delta):
    delta = mpmath.mpf(delta)
    return -1 / (2 * delta) + 1 / (4 * delta * mpmath.sin((1 - z) * mpmath.pi / 6)) - z


@settings(max_examples=50)
@given(st.floats(0.01, 0.15), st.floats(0.0, 1.0))
def test_derivatives_match_high_precision(delta, frac):
    z = frac * zmax(delta)
    assert g_function(z, delta) == pytest.approx(float(_g_mp(mpmath.mpf(z), delta)), abs=1e-13)
    assert g_prime(z, delta) == pytest.approx(float(mpmath.diff(lambda t: _g_mp(t, delta), z, 1)), rel=1e-10)
    assert g_second(z, delta) == pytest.approx(float(mpmath.diff(lambda t: _g_mp(t, delta), z, 2)), rel=1e-10)


def test_fan_equality_cases():
    p = PotentialParams(1 / 24)
    two = VertexFan((1.0, 1.0), (0.0, math.pi / 3))
    assert vertex_inequality_probe(two, p).margin == pytest.approx(0.0, abs=1e-15)
    four = VertexFan((1.0,) * 4, tuple(k * math.pi / 3 for k in range(4)))
    assert four.alpha == pytest.approx(math.pi)
    assert four.boundary_flags == (True, False, False, True)
    assert vertex_inequality_probe(four, p).margin == pytest.approx(0.0, abs=1e-14)


def test_fan_domain_errors():
    p = PotentialParams(1 / 24)
    with pytest.raises(DomainError):
        vertex_inequality_probe(VertexFan((1.0, 1.0), (0.0, 0.5)), p)
    with pytest.raises(DomainError):
        vertex_inequality_probe(VertexFan((1.0, 1.2), (0.0, 1.5)), p)
    with pytest.raises(DomainError):
        vertex_inequality_probe(VertexFan((1.0,), (0.0,)), p)


def test_stretched_fan_has_positive_margin():
    p = PotentialParams(0.1)
    fan = VertexFan((1.05, 1.0, 1.08), (0.0, 1.1, 2.3))
    assert vertex_inequality_probe(fan, p).margin > 0


@pytest.mark.parametrize("spokes", range(2, 7))
def test_vectorised_margins_match_probe(spokes):
    rng = np.random.default_rng(spokes)
    p = PotentialParams(0.1)
    lengths, angles = sample_fans(rng, 400, 0.1, spokes)
    assert len(lengths) > 0
    m = _fan_margins(lengths, angles[:, -1] - angles[:, 0], 0.1)
    for k in range(min(40, len(lengths))):
        fan = VertexFan(tuple(lengths[k]), tuple(angles[k]))
        assert vertex_inequality_probe(fan, p).margin == pytest.approx(m[k], abs=1e-12)


def test_small_suites():
    for d in (1 / 24, 0.1):
        rep = vertex_inequality_suite(d, 5000, seed=1)
        assert rep["passed"] and rep["samples"] == 5000
    assert g_suite(0.1, 500)["passed"]


@pytest.mark.parametrize("n, lhs", [(19, 15.0), (37, 21.0)])
def test_shelling_equality_for_hexagons(n, lhs):
    r = shelling_check(canonical_configuration(n))
    assert r.lhs == lhs and r.rhs == lhs and r.holds and r.equality
    assert r.mu == r.mu_inner == 0


def test_shelling_strict_for_stretched_bond():
    xy = canonical_configuration(19).xy.copy()
    corner = int(np.argmax(xy[:, 0]))
    xy[corner, 0] += 0.02
    r = shelling_check(Configuration.from_xy(xy))
    assert r.holds and r.lhs > r.rhs + 1e-6


def test_shelling_preconditions():
    with pytest.raises(PreconditionError) as exc:
        shelling_check(Configuration.from_xy([(0, 0), (1, 0), (5, 5), (6, 5)]))
    assert exc.value.hypothesis == "connected"
    with pytest.raises(PreconditionError) as exc:
        shelling_check(Configuration.from_lattice([(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)]))
    assert exc.value.hypothesis == "simple_closed_boundary"
    with pytest.raises(PreconditionError) as exc:
        shelling_check(canonical_configuration(6))
    assert exc.value.hypothesis == "nonempty_interior"
