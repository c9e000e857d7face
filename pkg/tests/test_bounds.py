"""Gap sweeps, Hofer lower bounds, nondegeneracy certificates."""

import numpy as np
import pytest

from eggbeater.actions import analytic_flip_gap
from eggbeater.bounds import (GapSweep, gap_sweep_and_fit, hofer_norm_bound,
                              hofer_power_bound, nondegeneracy_check,
                              smallest_prime_divisor)
from eggbeater.errors import ConfigError
from eggbeater.orbits import HomotopyClassSpec, census
from eggbeater.profiles import TwistParams
from eggbeater.words import parse_word, power_word, to_even_form

EPS = 0.01
SWEEP_NS = (500, 1000, 2000)


def test_smallest_prime_divisor():
    assert smallest_prime_divisor(2) == 2
    assert smallest_prime_divisor(9) == 3
    assert smallest_prime_divisor(13) == 13
    assert smallest_prime_divisor(4) == 2
    with pytest.raises(ValueError):
        smallest_prime_divisor(1)


def test_gap_sweep_fit_against_analytic_slope():
    sweep = gap_sweep_and_fit(parse_word("ab"), 1, EPS, SWEEP_NS)
    assert sweep.fit_r2 > 0.99
    ref = analytic_flip_gap(EPS / 4, 1, EPS)
    assert sweep.fitted_slope == pytest.approx(ref, rel=0.1)
    assert all(d > 0 for d in sweep.D_values)
    assert list(sweep.D_values) == sorted(sweep.D_values)


def test_gap_sweep_needs_enough_points():
    with pytest.raises(ConfigError):
        gap_sweep_and_fit(parse_word("ab"), 1, EPS, (500, 1000))


def test_gap_sweep_rejects_power_core():
    with pytest.raises(ConfigError):
        gap_sweep_and_fit(parse_word("a^2"), 1, EPS, SWEEP_NS)


def test_power_bound_monotone_and_prime_reduction():
    word2 = power_word(parse_word("ab"), 2)
    sweep = gap_sweep_and_fit(word2, 1, EPS, SWEEP_NS,
                              class_rule="midrange-distinct")
    assert sweep.symmetry_free
    table2 = hofer_power_bound(2, sweep)
    assert table2.k_prime == 2
    assert table2.monotone_increasing
    assert all(b > 0 for b in table2.bounds)
    # k = 4 reduces to the same prime divisor, hence the same bounds.
    table4 = hofer_power_bound(4, sweep)
    assert table4.k_prime == 2
    np.testing.assert_allclose(table4.bounds, table2.bounds)


def test_power_bound_requires_symmetry_free():
    sweep = gap_sweep_and_fit(power_word(parse_word("ab"), 2), 1, EPS,
                              SWEEP_NS, class_rule="quarter")
    assert not sweep.symmetry_free
    with pytest.raises(ConfigError):
        hofer_power_bound(2, sweep)


def test_norm_certificate_kinds():
    even = hofer_norm_bound(parse_word("ab"), 1, EPS, SWEEP_NS)
    assert even.kind == "even"
    assert all(b > 0 for b in even.bounds)

    conj = hofer_norm_bound(parse_word("b^2ab^-1"), 1, EPS, SWEEP_NS)
    assert conj.kind == "conjugate"
    # A conjugate inherits the core word's certificate unchanged.
    np.testing.assert_allclose(conj.bounds, even.bounds)

    power = hofer_norm_bound(parse_word("a^2"), 1, EPS, SWEEP_NS)
    assert power.kind == "power"
    assert all(b > 0 for b in power.bounds)
    # The commutator route halves the sweep gap.
    assert power.slope < even.slope


def test_nondegeneracy_of_census_records():
    params = TwistParams.make(n=1, epsilon=EPS, N=1000)
    form = to_even_form(parse_word("ab"))[1]
    cls = HomotopyClassSpec.midrange(form.m, params)
    for rec in census(form, params, cls):
        rep = nondegeneracy_check(rec)
        assert rep.passed


def test_sweep_fitted_evaluation():
    sweep = gap_sweep_and_fit(parse_word("ab"), 1, EPS, SWEEP_NS)
    assert isinstance(sweep, GapSweep)
    pred = sweep.fitted(1000)
    actual = sweep.D_values[list(sweep.N_values).index(1000)]
    assert pred == pytest.approx(actual, rel=0.05)
