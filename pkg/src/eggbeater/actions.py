"""Symplectic action of the localized fixed-point orbits.

Each orbit consists of 2m unit-time twist segments.  A segment with
coefficient kN contributes the (constant) Hamiltonian value kN h(|u|)
plus the line integral of the canonical one-form of its own chart,
fiber . d(base), taken along the lifted motion; switching primitive
between charts is an exact-form correction that telescopes around a
closed loop.  Orientation of the two gluing directions is fixed so the
two contributions of a segment carry the same sign, which is the
convention under which single-branch flips change the action by

    N |k| (h(r+) - h(r-)) + |winding| (|r+| - |r-|)  > 0.

Concretely, with the solved slot points:

    b-segment j:  N kb_j h(|v_j|)     + v_j . (N kb_j rho(|v_j|) v_j)
    a-segment j:  N ka_j h(|x_{j+1}|) + x_{j+1} . (N ka_j rho(|x_{j+1}|) x_{j+1})

The leading closed form replaces the line integrals by
sign(k) |root| |winding| and is kept as a cross-check; the two differ by
the bounded off-root corrections v_j.(x_{j+1}-x_j) etc.

Action values carry an overall class-dependent normalization constant;
only differences within one class are compared anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orbits import FixedPointRecord, SignPattern
from .profiles import eval_h, eval_rho, h as h_unsmoothed, \
    rho as rho_unsmoothed

GAUSS_ORDER = 64
QUADRATURE_REL_TOL = 1.0e-12


@dataclass(frozen=True)
class ActionBreakdown:
    """Per-segment action values in the order the segments act
    (b-segment then a-segment for each step)."""

    segments: tuple[float, ...]
    total: float
    method: str


def _gauss_integral(f, order: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    t = 0.5 * (nodes + 1.0)
    return float(0.5 * np.sum(weights * np.array([f(ti) for ti in t])))


def _segment_pairs(rec: FixedPointRecord):
    steps = rec.form.step_exponents()
    for j, (kb_j, ka_j) in enumerate(steps):
        yield j, kb_j, ka_j, rec.vs[j], rec.xs[(j + 1) % rec.m]


def action_exact(rec: FixedPointRecord, smoothed: bool = True,
                 quad_order: int = GAUSS_ORDER,
                 transition_shift: float = 0.0) -> ActionBreakdown:
    """Action from per-segment quadrature of H + lambda(gamma').

    Both integrands are constant in time (the twists are autonomous and
    move the base at constant speed), so the quadrature converges at the
    first order doubling; the doubling check is still performed.

    ``transition_shift`` moves the instant within each segment at which
    the integration switches from the segment's own primitive to the
    neighbouring chart's primitive plus the exact-form correction
    d(fiber . base).  The base of the neighbouring chart is frozen along
    the segment, so its primitive contributes nothing and the correction
    supplies the remainder; the total is independent of the shift.
    """
    if not 0.0 <= transition_shift <= 1.0:
        raise ValueError("transition_shift must lie in [0, 1]")
    N, params = rec.params.N, rec.params
    s = transition_shift
    segs = []
    for j, kb_j, ka_j, v_j, x_next in _segment_pairs(rec):
        for k, u in ((kb_j, v_j), (ka_j, x_next)):
            r = float(np.linalg.norm(u))
            ham = k * N * eval_h(r, params, smoothed)
            lam_rate = k * N * eval_rho(r, params, smoothed) * r * r

            def integrand(t, val=ham + lam_rate * (1.0 - s)):
                return val

            coarse = _gauss_integral(integrand, quad_order)
            fine = _gauss_integral(integrand, 2 * quad_order)
            scale = max(1.0, abs(fine))
            if abs(fine - coarse) > QUADRATURE_REL_TOL * scale:
                raise RuntimeError("segment quadrature failed to settle")
            # Exact-form correction for the tail [1-s, 1] covered by the
            # neighbouring chart's (constant-base, hence silent) primitive.
            segs.append(fine + lam_rate * s)
    total = float(np.sum(segs))
    return ActionBreakdown(segments=tuple(segs), total=total, method="exact")


def action_closed(rec: FixedPointRecord, smoothed: bool = True
                  ) -> ActionBreakdown:
    """Leading closed form: N k h(|root|) + sign(k) |root| |winding|,
    evaluated with the solved radii in place of the box-center roots."""
    N, params, n = rec.params.N, rec.params, rec.params.n
    segs = []
    for j, kb_j, ka_j, v_j, x_next in _segment_pairs(rec):
        alpha = rec.cls.alpha_vec(j, n)
        beta = rec.cls.beta_vec(j, n)
        for k, u, wind in ((kb_j, v_j, alpha), (ka_j, x_next, beta)):
            r = float(np.linalg.norm(u))
            segs.append(k * N * eval_h(r, params, smoothed)
                        + np.sign(k) * r * float(np.linalg.norm(wind)))
    total = float(np.sum(segs))
    return ActionBreakdown(segments=tuple(segs), total=total, method="closed")


def analytic_flip_gap(c: float, k: int, epsilon: float) -> float:
    """Per-unit-N action change from flipping one branch sign, from the
    unsmoothed profile roots at |c| = |winding| / (|k| N):

        |k| (h(r+) - h(r-)) + |c| |k| (r+ - r-).
    """
    cc = abs(c)
    r_minus = cc
    r_plus = (epsilon + np.sqrt(epsilon**2 - 2 * cc * epsilon)) / 2
    dh = h_unsmoothed(r_plus, epsilon) - h_unsmoothed(r_minus, epsilon)
    return abs(k) * (dh + cc * (r_plus - r_minus))


@dataclass(frozen=True)
class GapResult:
    gap: float
    extremal: SignPattern
    extremal_index_doubled: int
    extremal_is_max: bool
    witness: SignPattern
    # Index adjacency is taken over single-sign flips; all of them sit on
    # one side of the extremal index, and the minimum is reported.
    side_note: str = "minimum over single-flip neighbours (both index sides)"


def action_gap(records: list[FixedPointRecord],
               indices: dict[SignPattern, int],
               smoothed: bool = True) -> GapResult:
    """Minimal action distance between the extremal-index fixed point and
    its single-flip neighbours.

    ``indices`` maps each census sign pattern to its doubled index.
    """
    by_pattern = {rec.signs: rec for rec in records}
    form = records[0].form
    ext = SignPattern.extremal(form)
    ext_idx = indices[ext]
    others = [indices[p] for p in by_pattern if p != ext]
    is_max = all(ext_idx >= i for i in others)
    is_min = all(ext_idx <= i for i in others)
    if not (is_max or is_min):
        raise RuntimeError("expected extremal pattern is not extremal")
    a_ext = action_exact(by_pattern[ext], smoothed).total
    best, witness = np.inf, None
    for which in ("sigma", "xi"):
        for j in range(form.m):
            p = ext.flipped(which, j)
            d = abs(action_exact(by_pattern[p], smoothed).total - a_ext)
            if d < best:
                best, witness = d, p
    return GapResult(gap=float(best), extremal=ext,
                     extremal_index_doubled=ext_idx,
                     extremal_is_max=is_max, witness=witness)
