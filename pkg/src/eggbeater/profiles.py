"""Radial twist profile, its C^2 smoothing, and the associated Hamiltonian.

The unsmoothed profile is

    rho(r) = 1                  for r <= eps/2,
             2(eps - r)/eps     for eps/2 < r <= eps,
             0                  for r > eps,

and the Hamiltonian h with h'(r) = r*rho(r), normalized so h vanishes
outside the support:

    h(r) = r^2/2 - 7 eps^2/24            for r <= eps/2,
           r^2 - 2 r^3/(3 eps) - eps^2/3 for eps/2 < r <= eps,
           0                             for r > eps.

The smoothing rho_delta replaces rho by a C^2 function that agrees with
rho outside delta-neighborhoods of the two slope breaks at eps/2 and eps.
Inside each neighborhood the *slope* of rho is blended with the quintic
smoothstep 6u^5 - 15u^4 + 10u^3 and integrated back.  Blending the slope
rather than the value keeps rho_delta monotone with range [0, 1]; the
direct two-point quintic Hermite interpolant overshoots 1 near the convex
break.  Because the smoothstep integrates to 1/2 the blended profile
rejoins rho exactly at each neighborhood boundary.

h_delta(r) = -int_r^infty s rho_delta(s) ds is piecewise polynomial, so
it is evaluated from exact piecewise antiderivatives rather than
quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial

# Hard caps on the smoothing width: delta must stay well below both the
# absolute cap and the distance between the two slope breaks.
DELTA_ABS_CAP = 1.0e-4
DELTA_EPS_FRACTION = 100.0
EPSILON_CAP = 0.01

DERIVATIVE_CHECK_TOL = 1.0e-8


def default_delta(N: int, epsilon: float) -> float:
    """Smoothing width 1/N^2, capped strictly below min(1e-4, eps/100)."""
    cap = min(DELTA_ABS_CAP, epsilon / DELTA_EPS_FRACTION)
    return min(1.0 / N**2, 0.999 * cap)


@dataclass(frozen=True)
class TwistParams:
    """Model parameters: torus dimension n, profile width eps, twist
    strength N, smoothing width delta."""

    n: int
    epsilon: float
    N: int
    delta: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (0.0 < self.epsilon <= EPSILON_CAP):
            raise ValueError(f"epsilon must lie in (0, {EPSILON_CAP}]")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        cap = min(DELTA_ABS_CAP, self.epsilon / DELTA_EPS_FRACTION)
        if not (0.0 < self.delta < cap):
            raise ValueError(
                f"delta must lie in (0, {cap}) for epsilon={self.epsilon}")

    @classmethod
    def make(cls, n: int, epsilon: float, N: int,
             delta: float | None = None) -> "TwistParams":
        if delta is None:
            if N < 1:
                raise ValueError("N must be >= 1")
            delta = default_delta(N, epsilon)
        return cls(n=n, epsilon=epsilon, N=N, delta=delta)

    def threshold(self, max_abs_exponent: int) -> float:
        """Twist strength above which the localization estimates are
        guaranteed: the larger of 10*max|k|/eps and 200*max|k|^3."""
        k = max_abs_exponent
        return max(10.0 * k / self.epsilon, 200.0 * k**3)

    def above_threshold(self, max_abs_exponent: int) -> bool:
        return self.N > self.threshold(max_abs_exponent)


# ----------------------------------------------------------------------
# Unsmoothed profile.

def rho(r, epsilon: float):
    """Unsmoothed profile at radius ``r`` (vectorized, uses |r|)."""
    r = np.abs(np.asarray(r, dtype=float))
    out = np.zeros_like(r)
    out = np.where(r <= epsilon / 2, 1.0, out)
    mid = (r > epsilon / 2) & (r <= epsilon)
    out = np.where(mid, 2.0 * (epsilon - r) / epsilon, out)
    return out if out.shape else float(out)


def rho_prime(r, epsilon: float):
    """One-sided derivative of the unsmoothed profile in |r|."""
    r = np.abs(np.asarray(r, dtype=float))
    out = np.where((r > epsilon / 2) & (r <= epsilon), -2.0 / epsilon, 0.0)
    return out if out.shape else float(out)


def h(r, epsilon: float):
    """Unsmoothed Hamiltonian well, h'(r) = r rho(r), h = 0 outside."""
    r = np.abs(np.asarray(r, dtype=float))
    e = epsilon
    out = np.zeros_like(r)
    out = np.where(r <= e / 2, r**2 / 2 - 7 * e**2 / 24, out)
    mid = (r > e / 2) & (r <= e)
    out = np.where(mid, r**2 - 2 * r**3 / (3 * e) - e**2 / 3, out)
    return out if out.shape else float(out)


# ----------------------------------------------------------------------
# Smoothed profile: exact piecewise polynomials.

def _smoothstep_quintic() -> Polynomial:
    return Polynomial([0.0, 0.0, 0.0, 10.0, -15.0, 6.0])


@dataclass(frozen=True)
class LocalPiece:
    """Polynomial in the local coordinate u = (r - a) / w.

    Keeping blend pieces in their own coordinate avoids the coefficient
    blow-up (and cancellation) of expanding powers of 1/delta in r.
    """

    poly: Polynomial
    a: float
    w: float

    def __call__(self, r):
        return self.poly((np.asarray(r, dtype=float) - self.a) / self.w)

    def deriv(self) -> "LocalPiece":
        return LocalPiece(self.poly.deriv() / self.w, self.a, self.w)

    def antideriv_of_r_times(self) -> "LocalPiece":
        # Antiderivative in r of r * piece(r); expressed in u again.
        u = Polynomial([0.0, 1.0])
        integrand = (self.a + self.w * u) * self.poly * self.w
        return LocalPiece(integrand.integ(), self.a, self.w)


@dataclass(frozen=True)
class SmoothedProfile:
    """Piecewise-polynomial rho_delta, rho_delta', and h_delta."""

    epsilon: float
    delta: float
    breaks: tuple[float, ...] = field(repr=False)
    rho_pieces: tuple[LocalPiece, ...] = field(repr=False)
    drho_pieces: tuple[LocalPiece, ...] = field(repr=False)
    h_pieces: tuple[LocalPiece, ...] = field(repr=False)

    def _eval(self, pieces, r):
        arr = np.abs(np.atleast_1d(np.asarray(r, dtype=float)))
        idx = np.searchsorted(self.breaks, arr, side="right")
        out = np.empty_like(arr)
        for i, p in enumerate(pieces):
            mask = idx == i
            if np.any(mask):
                out[mask] = p(arr[mask])
        out[idx == len(pieces)] = 0.0
        if np.isscalar(r) or np.asarray(r).shape == ():
            return float(out[0])
        return out

    def rho(self, r):
        return self._eval(self.rho_pieces, r)

    def drho(self, r):
        return self._eval(self.drho_pieces, r)

    def h(self, r):
        return self._eval(self.h_pieces, r)

    def peak(self) -> tuple[float, float]:
        """Argmax and max of g(r) = r rho_delta(r) on r >= 0.

        g increases with slope 1 up to the first blend zone and decays
        beyond it, so the peak sits inside the first zone where g' flips.
        """
        from scipy.optimize import brentq
        e, d = self.epsilon, self.delta
        lo, hi = e / 2 - d, e / 2 + d

        def gp(r):
            return self.rho(r) + r * self.drho(r)

        r_star = brentq(gp, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps)
        return r_star, r_star * self.rho(r_star)


@lru_cache(maxsize=64)
def smoothed_profile(epsilon: float, delta: float) -> SmoothedProfile:
    e, d = epsilon, delta
    S = _smoothstep_quintic()

    # Breakpoints partition [0, inf): piece i covers (breaks[i-1], breaks[i]].
    b1, b2, b3, b4 = e / 2 - d, e / 2 + d, e - d, e + d
    breaks = (b1, b2, b3, b4)

    slope_mid = -2.0 / e
    drho_pieces = (
        LocalPiece(Polynomial([0.0]), 0.0, 1.0),
        LocalPiece(slope_mid * S, b1, 2 * d),
        LocalPiece(Polynomial([slope_mid]), 0.0, 1.0),
        LocalPiece(slope_mid * (1.0 - S), b3, 2 * d),
    )

    # Integrate the slope from 0 with rho(0) = 1, keeping each piece in
    # its own local coordinate.
    rho_pieces = []
    value = 1.0
    left = 0.0
    for dp, right in zip(drho_pieces, breaks):
        anti = dp.poly.integ() * dp.w  # antiderivative in r, local coords
        piece = LocalPiece(value - anti((left - dp.a) / dp.w) + anti,
                           dp.a, dp.w)
        rho_pieces.append(piece)
        value = piece(right)
        left = right
    rho_pieces = tuple(rho_pieces)

    # h_delta(r) = -int_r^inf s rho_delta(s) ds, accumulated right to left.
    h_pieces = []
    value = 0.0
    right = b4
    for i in range(len(rho_pieces) - 1, -1, -1):
        anti = rho_pieces[i].antideriv_of_r_times()
        piece = LocalPiece(value - anti.poly((right - anti.a) / anti.w)
                           + anti.poly, anti.a, anti.w)
        h_pieces.append(piece)
        left = breaks[i - 1] if i > 0 else 0.0
        value = piece(left)
        right = left
    h_pieces = tuple(reversed(h_pieces))

    return SmoothedProfile(epsilon=e, delta=d, breaks=breaks,
                           rho_pieces=rho_pieces, drho_pieces=drho_pieces,
                           h_pieces=h_pieces)


def profile_for(params: TwistParams) -> SmoothedProfile:
    return smoothed_profile(params.epsilon, params.delta)


def eval_rho(r, params: TwistParams, smoothed: bool = True):
    if smoothed:
        return profile_for(params).rho(r)
    return rho(r, params.epsilon)


def eval_rho_prime(r, params: TwistParams, smoothed: bool = True):
    if smoothed:
        return profile_for(params).drho(r)
    return rho_prime(r, params.epsilon)


def eval_h(r, params: TwistParams, smoothed: bool = True):
    if smoothed:
        return profile_for(params).h(r)
    return h(r, params.epsilon)


def check_hamiltonian_derivative(params: TwistParams, samples: int = 400,
                                 smoothed: bool = True) -> float:
    """Max deviation of (d/dr) h from r rho over a central-difference grid.

    Returns the worst absolute error; callers compare against
    DERIVATIVE_CHECK_TOL * epsilon.
    """
    e = params.epsilon
    step = e * 1e-7
    r = np.linspace(step, 1.2 * e, samples)
    hp = (eval_h(r + step, params, smoothed) -
          eval_h(r - step, params, smoothed)) / (2 * step)
    target = r * eval_rho(r, params, smoothed)
    return float(np.max(np.abs(hp - target)))
