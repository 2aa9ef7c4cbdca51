"""The ten acceptance criteria at full size; one PASS/FAIL line each."""

import os

import pytest

from softdisc import verify

THREADS = max(1, min(4, os.cpu_count() or 1))

BUDGET = {1: 300, 2: 120, 3: 120, 9: 600}

CRITERIA = {
    1: lambda: verify.exhaustive_minimality(threads=THREADS),
    2: lambda: verify.decomposition_identity(),
    3: lambda: verify.boundary_formula(),
    4: lambda: verify.canonical_cleanliness(),
    5: lambda: verify.boundary_growth(),
    6: lambda: verify.vertex_inequality(),
    7: lambda: verify.g_function_shape(),
    8: lambda: verify.shelling(),
    9: lambda: verify.stochastic_lower_bound(threads=THREADS),
    10: lambda: verify.sticky_disc_mode(threads=THREADS),
}


_results = {}


def _result(number):
    if number not in _results:
        _results[number] = CRITERIA[number]()
    return _results[number]


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = _result(number)
    ok = result.passed and result.seconds < BUDGET.get(number, float("inf"))
    with capsys.disabled():
        print(f"\n{result.line()}{'' if ok else '  ' + str(result.details)[:400]}")
    assert result.passed, result.details
    assert result.seconds < BUDGET.get(number, float("inf"))


def test_criterion_1_values():
    result = _result(1)
    assert list(result.details["best_energies"].values()) == [0, -1, -3, -5, -7, -9, -12, -14, -16, -19]


def test_criterion_5_n9_detail():
    assert verify.boundary_growth(max_n=20).details["n9"] == (False, True, 8)
