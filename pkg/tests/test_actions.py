"""Symplectic actions, gaps, and the analytic flip-gap check."""

import numpy as np
import pytest

from eggbeater.actions import (action_closed, action_exact, action_gap,
                               analytic_flip_gap)
from eggbeater.orbits import HomotopyClassSpec, census
from eggbeater.profiles import TwistParams
from eggbeater.sympath import cz_index_closed
from eggbeater.words import parse_word, to_even_form

FORM = to_even_form(parse_word("ab"))[1]


def make_census(N, n=1):
    params = TwistParams.make(n=n, epsilon=0.01, N=N)
    cls = HomotopyClassSpec.quarter(FORM.m, params)
    return params, cls, census(FORM, params, cls)


def test_exact_matches_closed_at_leading_order():
    params, cls, records = make_census(2000)
    for rec in records:
        a_exact = action_exact(rec).total
        a_closed = action_closed(rec).total
        # The closed form omits only rounding of the winding band and the
        # smoothing correction, both far below the action scale N eps^2.
        assert a_exact == pytest.approx(a_closed, abs=1e-6)
        assert len(action_exact(rec).segments) == 2 * FORM.m


def test_transition_shift_invariance():
    _, _, records = make_census(1000)
    rec = records[0]
    base = action_exact(rec, transition_shift=0.0).total
    for s in (0.25, 0.5, 1.0):
        assert action_exact(rec, transition_shift=s).total == pytest.approx(
            base, rel=1e-12)


def test_analytic_flip_gap_value():
    # Reference value for c = eps/4, k = 1, eps = 0.01.
    val = analytic_flip_gap(0.0025, 1, 0.01)
    assert val == pytest.approx(3.919522603955158e-05, rel=1e-12)
    assert analytic_flip_gap(0.0025, -2, 0.01) == pytest.approx(2 * val)


def test_gap_scales_linearly_and_matches_analytic():
    # At N = 2000 the quarter-band winding is exactly N eps / 4, so the
    # census gap per unit N lands on the analytic flip gap.
    params, cls, records = make_census(2000)
    indices = {r.signs: cz_index_closed(r).doubled for r in records}
    res = action_gap(records, indices)
    assert res.extremal_is_max or res.extremal_index_doubled == min(
        indices.values())
    per_N = res.gap / params.N
    assert per_N == pytest.approx(analytic_flip_gap(0.0025, 1, 0.01),
                                  rel=1e-6)


def test_gap_grows_with_N():
    gaps = []
    for N in (500, 1000, 2000):
        _, _, records = make_census(N)
        indices = {r.signs: cz_index_closed(r).doubled for r in records}
        gaps.append(action_gap(records, indices).gap)
    assert gaps[0] < gaps[1] < gaps[2]
