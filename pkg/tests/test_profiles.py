"""Twist profile and Hamiltonian invariants."""

import numpy as np
import pytest

from eggbeater.profiles import (TwistParams, check_hamiltonian_derivative,
                                default_delta, eval_h, eval_rho,
                                eval_rho_prime, profile_for)

PARAMS = TwistParams.make(n=1, epsilon=0.01, N=1000)


def test_params_validation():
    with pytest.raises(ValueError):
        TwistParams.make(n=0, epsilon=0.01, N=100)
    with pytest.raises(ValueError):
        TwistParams.make(n=1, epsilon=0.02, N=100)  # above the cap
    with pytest.raises(ValueError):
        TwistParams.make(n=1, epsilon=0.01, N=0)


def test_default_delta_rule():
    assert default_delta(1000, 0.01) == pytest.approx(1e-6)
    # capped for small N
    assert default_delta(10, 0.01) < min(1e-4, 0.01 / 100)


def test_unsmoothed_plateau_ramp_tail():
    e = PARAMS.epsilon
    assert eval_rho(0.0, PARAMS, smoothed=False) == 1.0
    assert eval_rho(e / 4, PARAMS, smoothed=False) == 1.0
    assert eval_rho(0.75 * e, PARAMS, smoothed=False) == pytest.approx(0.5)
    assert eval_rho(1.5 * e, PARAMS, smoothed=False) == 0.0


def test_hamiltonian_plateau_values():
    e = PARAMS.epsilon
    assert eval_h(0.0, PARAMS, smoothed=False) == pytest.approx(
        -7 * e * e / 24)
    assert eval_h(e / 2, PARAMS, smoothed=False) == pytest.approx(
        -e * e / 6)
    assert eval_h(2 * e, PARAMS, smoothed=False) == 0.0


def test_smoothed_profile_range_and_monotonicity():
    r = np.linspace(0.0, 1.5 * PARAMS.epsilon, 4001)
    rho = np.array([eval_rho(x, PARAMS) for x in r])
    assert rho.min() >= 0.0 and rho.max() <= 1.0
    assert (np.diff(rho) <= 1e-15).all()


def test_smoothed_matches_unsmoothed_outside_blend_zones():
    e, d = PARAMS.epsilon, PARAMS.delta
    for r in np.linspace(0.0, 1.4 * e, 1777):
        if min(abs(r - e / 2), abs(r - e)) > d:
            assert eval_rho(r, PARAMS) == pytest.approx(
                eval_rho(r, PARAMS, smoothed=False), abs=1e-14)
            assert eval_h(r, PARAMS) == pytest.approx(
                eval_h(r, PARAMS, smoothed=False), abs=1e-12)


def test_hamiltonian_derivative_is_r_rho():
    assert check_hamiltonian_derivative(PARAMS) < 1e-8
    assert check_hamiltonian_derivative(PARAMS, smoothed=False) < 1e-8


def test_rho_prime_consistency():
    d = PARAMS.delta
    for r in np.linspace(1e-4, 1.2 * PARAMS.epsilon, 613):
        h = 1e-9
        fd = (eval_rho(r + h, PARAMS) - eval_rho(r - h, PARAMS)) / (2 * h)
        assert eval_rho_prime(r, PARAMS) == pytest.approx(fd, abs=5e-5)


def test_profile_peak_near_half_epsilon():
    r_peak, c_peak = profile_for(PARAMS).peak()
    e = PARAMS.epsilon
    assert abs(r_peak - e / 2) < 2 * PARAMS.delta
    assert abs(c_peak - e / 2) < 2 * PARAMS.delta


def test_threshold_rule():
    assert PARAMS.threshold(1) == max(10 * 1 / 0.01, 200.0)
    assert not PARAMS.above_threshold(1)  # N=1000 is not strictly above
    big = TwistParams.make(n=1, epsilon=0.01, N=2000)
    assert big.above_threshold(1)
    small = TwistParams.make(n=1, epsilon=0.01, N=500)
    assert not small.above_threshold(2)  # needs N > 1600
