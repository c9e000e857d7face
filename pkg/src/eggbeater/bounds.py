"""Lower-bound pipelines built on the action gaps.

The index-adjacent action gap D(N) of a census grows affinely in N.  This
module runs the gap over a sweep of amplifications, fits D(N) ~ slope * N
+ intercept, and turns the fit into the downstream quantities: Hofer
distances from the k-th power subgroup are bounded below by D(N)/(4 k')
with k' the smallest prime divisor of k, and per-word Hofer norm
certificates follow from the gap of the word's even-alternating core
(conjugates inherit the identical bound by bi-invariance; pure generator
powers go through the commutator word, which halves the gap).

The Floer-theoretic inequalities connecting the gap to boundary depth and
Hofer distance are applied as arithmetic; their checkable hypotheses
(nondegeneracy of the linearized return map, symmetry-freeness of the
winding class for power words) are verified numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .orbits import (FixedPointRecord, HomotopyClassSpec, census)
from .profiles import TwistParams
from .sympath import cz_index_closed, gamma_endpoint
from .actions import action_gap, GapResult
from .words import (EvenWord, PowerCase, Syllable, Word, parse_word,
                    reduce_word, to_even_form)

NONDEG_DET_REL_TOL = 1.0e-6
MIN_SWEEP_POINTS = 3


@dataclass(frozen=True)
class GapSweep:
    """Index-adjacent action gaps D(N) over an amplification sweep with an
    affine least-squares fit."""

    word: Word
    n: int
    epsilon: float
    N_values: tuple[int, ...]
    D_values: tuple[float, ...]
    fitted_slope: float
    fitted_intercept: float
    fit_r2: float
    symmetry_free: bool
    class_rule: str

    def __post_init__(self):
        if len(self.N_values) < MIN_SWEEP_POINTS:
            raise ConfigError("gap sweep needs at least "
                              f"{MIN_SWEEP_POINTS} amplifications")
        if any(b <= a for a, b in zip(self.N_values, self.N_values[1:])):
            raise ConfigError("sweep amplifications must strictly increase")

    def fitted(self, N: float) -> float:
        return self.fitted_slope * N + self.fitted_intercept


def _class_for_rule(rule: str, m: int, params: TwistParams) -> HomotopyClassSpec:
    if rule == "quarter":
        return HomotopyClassSpec.quarter(m, params)
    if rule == "midrange":
        return HomotopyClassSpec.midrange(m, params)
    if rule == "midrange-distinct":
        return HomotopyClassSpec.midrange(m, params, distinct=True)
    raise ConfigError(f"unknown class rule {rule!r}")


def _symmetry_free(cls: HomotopyClassSpec) -> bool:
    """No nontrivial cyclic shift fixes the winding tuple."""
    return all(cls.shifted(s) != cls for s in range(1, cls.m))


def _affine_fit(Ns: np.ndarray, Ds: np.ndarray) -> tuple[float, float, float]:
    A = np.vstack([Ns, np.ones_like(Ns)]).T
    coef, res, _, _ = np.linalg.lstsq(A, Ds, rcond=None)
    ss_tot = float(np.sum((Ds - Ds.mean()) ** 2))
    ss_res = float(res[0]) if len(res) else 0.0
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(coef[0]), float(coef[1]), r2


def gap_sweep_and_fit(word: Word, n: int, epsilon: float,
                      N_values: tuple[int, ...] | list[int],
                      class_rule: str = "quarter",
                      smoothed: bool = True,
                      threads: int = 1) -> GapSweep:
    """Census + actions + indices per amplification, gap per point, affine
    least-squares fit.  The word must have an even-alternating core."""
    if len(N_values) < MIN_SWEEP_POINTS:
        raise ConfigError("gap sweep needs at least "
                          f"{MIN_SWEEP_POINTS} amplifications")
    _, core = to_even_form(word)
    if isinstance(core, PowerCase):
        raise ConfigError("gap sweep needs an even-alternating core; "
                          "pure generator powers go through "
                          "hofer_norm_bound's commutator route")
    Ds = []
    sym_free = True
    for N in N_values:
        params = TwistParams.make(n=n, epsilon=epsilon, N=int(N))
        cls = _class_for_rule(class_rule, core.m, params)
        sym_free = sym_free and _symmetry_free(cls)
        recs = census(core, params, cls, smoothed=smoothed, threads=threads)
        indices = {r.signs: cz_index_closed(r).doubled for r in recs}
        Ds.append(action_gap(recs, indices, smoothed=smoothed).gap)
    Ns = np.asarray(N_values, dtype=float)
    slope, intercept, r2 = _affine_fit(Ns, np.asarray(Ds))
    return GapSweep(word=word, n=n, epsilon=epsilon,
                    N_values=tuple(int(N) for N in N_values),
                    D_values=tuple(Ds), fitted_slope=slope,
                    fitted_intercept=intercept, fit_r2=r2,
                    symmetry_free=sym_free, class_rule=class_rule)


# ----------------------------------------------------------------------
# Hofer distance to the k-th power subgroup.

def smallest_prime_divisor(k: int) -> int:
    if k < 2:
        raise ValueError("k must be at least 2")
    d = 2
    while d * d <= k:
        if k % d == 0:
            return d
        d += 1
    return k


@dataclass(frozen=True)
class PowerBoundTable:
    """Per-amplification lower bounds D(N)/(4 k') on the Hofer distance
    from the subgroup of k-th powers."""

    k: int
    k_prime: int
    N_values: tuple[int, ...]
    bounds: tuple[float, ...]

    @property
    def monotone_increasing(self) -> bool:
        return all(b > a for a, b in zip(self.bounds, self.bounds[1:]))


def hofer_power_bound(k: int, sweep: GapSweep) -> PowerBoundTable:
    """Bounds D(N)/(4 k') with k' the smallest prime divisor of k.

    The sweep must come from a symmetry-free winding class, so that the
    fixed points in the class form full orbits of the word's primitive
    root and the distinguished-orbit argument applies.
    """
    if not sweep.symmetry_free:
        raise ConfigError("power bounds need a symmetry-free winding class")
    kp = smallest_prime_divisor(k)
    bounds = tuple(d / (4.0 * kp) for d in sweep.D_values)
    return PowerBoundTable(k=k, k_prime=kp, N_values=sweep.N_values,
                           bounds=bounds)


# ----------------------------------------------------------------------
# Per-word Hofer norm certificates.

@dataclass(frozen=True)
class NormCertificate:
    """Linear-in-N lower bound on the Hofer norm of tau(N, word)."""

    word: Word
    kind: str  # "even", "conjugate", or "power"
    core_word: Word
    sweep: GapSweep
    N_values: tuple[int, ...]
    bounds: tuple[float, ...]
    slope: float


def _commutator_word(power: PowerCase) -> Word:
    """[other, gen^k]: the even-alternating commutator whose norm bounds
    the power's norm from below after halving."""
    other = "b" if power.gen == "a" else "a"
    return reduce_word([Syllable(other, 1), Syllable(power.gen, power.exp),
                        Syllable(other, -1), Syllable(power.gen, -power.exp)])


def hofer_norm_bound(word: Word, n: int, epsilon: float,
                     N_values: tuple[int, ...] | list[int],
                     class_rule: str = "quarter",
                     smoothed: bool = True,
                     threads: int = 1) -> NormCertificate:
    """Certificate per word shape.

    Even-alternating words are bounded by their own gap sweep D(N);
    conjugates u w u^{-1} inherit the core's bound unchanged
    (bi-invariance of the Hofer norm); pure powers of one generator are
    bounded through the commutator word at half its gap.
    """
    word = reduce_word(word.syllables)
    if not word.syllables:
        raise ConfigError("identity word carries no norm bound")
    conjugator, core = to_even_form(word)
    if isinstance(core, PowerCase):
        comm = _commutator_word(core)
        sweep = gap_sweep_and_fit(comm, n, epsilon, N_values,
                                  class_rule=class_rule, smoothed=smoothed,
                                  threads=threads)
        bounds = tuple(0.5 * d for d in sweep.D_values)
        return NormCertificate(word=word, kind="power", core_word=comm,
                               sweep=sweep, N_values=sweep.N_values,
                               bounds=bounds, slope=0.5 * sweep.fitted_slope)
    sweep = gap_sweep_and_fit(core.as_word(), n, epsilon, N_values,
                              class_rule=class_rule, smoothed=smoothed,
                              threads=threads)
    kind = "conjugate" if conjugator.syllables else "even"
    return NormCertificate(word=word, kind=kind, core_word=core.as_word(),
                           sweep=sweep, N_values=sweep.N_values,
                           bounds=sweep.D_values, slope=sweep.fitted_slope)


# ----------------------------------------------------------------------
# Nondegeneracy of the linearized return map.

@dataclass(frozen=True)
class NondegeneracyReport:
    det_abs: float
    scale: float
    passed: bool


def nondegeneracy_check(rec: FixedPointRecord,
                        smoothed: bool = True) -> NondegeneracyReport:
    """|det(Gamma(1) - I)| against a singular-value scale: the product of
    max(1, sigma_i) keeps the relative threshold meaningful when the
    amplified monodromy has huge leading singular values."""
    G = gamma_endpoint(rec, smoothed)
    sv = np.linalg.svd(G - np.eye(G.shape[0]), compute_uv=False)
    det_abs = float(np.prod(sv))
    scale = float(np.prod(np.maximum(1.0, sv)))
    return NondegeneracyReport(det_abs=det_abs, scale=scale,
                               passed=det_abs > NONDEG_DET_REL_TOL * scale)
