"""Fixed points of amplified linked twist maps in prescribed classes.

For an even word a^{k_1} b^{k_2} ... b^{k_2m} the composed map is tracked
in the chart-2 frame (v, x).  Step j (the steps act in word-reversed
order, so step j uses kb_j = k_{2m-2j} and ka_j = k_{2m-2j-1}) reads

    x_{j+1} = x_j + N kb_j rho(|v_j|) v_j - alpha_j,
    v_{j+1} = v_j - N ka_j rho(|x_{j+1}|) x_{j+1} - beta_j,

with indices mod m and integer windings alpha_j, beta_j specifying the
homotopy class.  For admissible classes every one of the 2^{2m} choices
of profile branch (one sign per v_j and per x_j) contains exactly one
solution, localized in a ball of radius max|k|/N around the branch root
direction.  The solver is a damped Newton iteration from the box centers
with a contraction sweep as fallback; iterates leaving the doubled boxes
abort with an escape error.
"""

from __future__ import annotations

import itertools
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import (EscapedBoxError, IllConditionedWarning,
                     NoRootError, NonConvergenceError, SingularJacobianError)
from .profiles import TwistParams, eval_rho, eval_rho_prime, profile_for
from .twist import ChartPoint, apply_word, chart_transition
from .words import EvenWord, power_word, parse_word, to_even_form

RESIDUAL_TOL = 5.0e-15
RESIDUAL_REQUIRED = 1.0e-10
BOX_ESCAPE_FACTOR = 2.0
MAX_NEWTON_ITERS = 60

# Admissible winding band: N eps/4 <= |alpha|, |beta| <= N eps/3.
BAND_LO, BAND_HI = 0.25, 1.0 / 3.0
MIDRANGE = 7.0 / 24.0  # midpoint of the band


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


# ----------------------------------------------------------------------
# Profile roots.

def solve_profile_root(c: float, branch: int, params: TwistParams,
                       smoothed: bool = True) -> float:
    """Signed root of r * rho(|r|) = c on the given branch.

    branch -1 is the inner root (|r| below the profile peak, identity
    region for small |c|); branch +1 the outer root on the decaying leg.
    Roots inherit the sign of c.  Raises NoRootError when |c| is at or
    above the peak value; warns IllConditionedWarning when the two
    branches are within the smoothing width of merging.
    """
    if branch not in (-1, 1):
        raise ValueError("branch must be -1 or +1")
    if c == 0.0:
        raise NoRootError("c must be nonzero")
    sgn, cc = np.sign(c), abs(c)
    e = params.epsilon
    if not smoothed:
        if cc >= e / 2:
            raise NoRootError(f"|c|={cc} at or above profile peak {e / 2}")
        if branch == -1:
            return float(sgn * cc)
        return float(sgn * (e + np.sqrt(e * e - 2 * cc * e)) / 2)
    prof = profile_for(params)
    r_peak, c_peak = prof.peak()
    if cc >= c_peak:
        raise NoRootError(f"|c|={cc} at or above profile peak {c_peak}")
    if c_peak - cc < params.delta:
        warnings.warn(
            f"|c|={cc} within {params.delta} of branch merge at {c_peak}",
            IllConditionedWarning)

    def g(r):
        return r * prof.rho(r) - cc

    if branch == -1:
        lo, hi = 0.0, r_peak
    else:
        lo, hi = r_peak, e + params.delta
    root = brentq(g, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps)
    return float(sgn * root)


# ----------------------------------------------------------------------
# Classes, sign patterns, boxes.

@dataclass(frozen=True)
class HomotopyClassSpec:
    """Windings as integer multiples of a fixed primitive direction (the
    first coordinate vector): alpha_j for the x-steps, beta_j for the
    v-steps, j = 0..m-1."""

    alphas: tuple[int, ...]
    betas: tuple[int, ...]

    def __post_init__(self):
        if len(self.alphas) != len(self.betas) or not self.alphas:
            raise ValueError("need equal, positive numbers of windings")
        if any(a == 0 for a in self.alphas + self.betas):
            raise ValueError("windings must be nonzero")

    @property
    def m(self) -> int:
        return len(self.alphas)

    def alpha_vec(self, j: int, n: int) -> np.ndarray:
        out = np.zeros(n)
        out[0] = self.alphas[j % self.m]
        return out

    def beta_vec(self, j: int, n: int) -> np.ndarray:
        out = np.zeros(n)
        out[0] = self.betas[j % self.m]
        return out

    def admissible(self, params: TwistParams) -> bool:
        lo = BAND_LO * params.N * params.epsilon
        hi = BAND_HI * params.N * params.epsilon
        return all(lo <= abs(w) <= hi for w in self.alphas + self.betas)

    def shifted(self, s: int) -> "HomotopyClassSpec":
        m = self.m
        return HomotopyClassSpec(
            alphas=tuple(self.alphas[(j + s) % m] for j in range(m)),
            betas=tuple(self.betas[(j + s) % m] for j in range(m)))

    @classmethod
    def midrange(cls, m: int, params: TwistParams,
                 distinct: bool = False) -> "HomotopyClassSpec":
        """Windings at the middle of the admissible band, rounded to the
        nearest integer (at least 1).  With ``distinct`` the last alpha
        is bumped by one so the winding sequence has no cyclic symmetry.
        """
        base = max(1, _round_half_up(MIDRANGE * params.N * params.epsilon))
        alphas = [base] * m
        if distinct and m > 1:
            alphas[-1] = base + 1
        return cls(alphas=tuple(alphas), betas=(base,) * m)

    @classmethod
    def quarter(cls, m: int, params: TwistParams) -> "HomotopyClassSpec":
        """Windings at the lower band edge N eps/4 (rounded, >= 1)."""
        base = max(1, _round_half_up(BAND_LO * params.N * params.epsilon))
        return cls(alphas=(base,) * m, betas=(base,) * m)


@dataclass(frozen=True)
class SignPattern:
    """Branch choices: sigma[j] for x_j, xi[j] for v_j (each +-1)."""

    sigma: tuple[int, ...]
    xi: tuple[int, ...]

    def __post_init__(self):
        if len(self.sigma) != len(self.xi):
            raise ValueError("sigma/xi length mismatch")
        if any(s not in (-1, 1) for s in self.sigma + self.xi):
            raise ValueError("signs must be +-1")

    @property
    def m(self) -> int:
        return len(self.sigma)

    def flipped(self, which: str, j: int) -> "SignPattern":
        if which == "sigma":
            sigma = tuple(-s if i == j else s
                          for i, s in enumerate(self.sigma))
            return SignPattern(sigma, self.xi)
        xi = tuple(-s if i == j else s for i, s in enumerate(self.xi))
        return SignPattern(self.sigma, xi)

    def shifted(self, s: int) -> "SignPattern":
        m = self.m
        return SignPattern(
            sigma=tuple(self.sigma[(j + s) % m] for j in range(m)),
            xi=tuple(self.xi[(j + s) % m] for j in range(m)))

    @classmethod
    def all_patterns(cls, m: int):
        for bits in itertools.product((-1, 1), repeat=2 * m):
            yield cls(sigma=bits[:m], xi=bits[m:])

    @classmethod
    def extremal(cls, form: EvenWord) -> "SignPattern":
        """Pattern with every sign opposite its exponent's sign; its
        index is the extremal one among all patterns of the class."""
        steps = form.step_exponents()
        m = form.m
        xi = tuple(-int(np.sign(steps[j][0])) for j in range(m))
        # x_j is produced by the a-twist of step j-1.
        sigma = tuple(-int(np.sign(steps[(j - 1) % m][1])) for j in range(m))
        return cls(sigma=sigma, xi=xi)


@dataclass(frozen=True)
class RootPair:
    """Inner/outer roots for one localization slot."""

    c: float
    r_minus: float
    r_plus: float

    def root(self, sign: int) -> float:
        return self.r_minus if sign == -1 else self.r_plus


@dataclass(frozen=True)
class BoxSpec:
    center: np.ndarray
    radius: float

    def contains(self, pt: np.ndarray, factor: float = 1.0) -> bool:
        return float(np.linalg.norm(pt - self.center)) <= factor * self.radius


@dataclass(frozen=True)
class Boxes:
    """Localization data for one (class, sign pattern) choice.

    v_boxes[j] localizes v_j along alpha_j (root equation with kb_j);
    x_boxes[j] localizes x_j along beta_{j-1} (root equation with
    ka_{j-1}); wraparound is cyclic.
    """

    v_boxes: tuple[BoxSpec, ...]
    x_boxes: tuple[BoxSpec, ...]
    v_roots: tuple[RootPair, ...]
    x_roots: tuple[RootPair, ...]

    def centers(self) -> np.ndarray:
        m = len(self.v_boxes)
        n = len(self.v_boxes[0].center)
        z = np.empty((m, 2, n))
        for j in range(m):
            z[j, 0] = self.v_boxes[j].center
            z[j, 1] = self.x_boxes[j].center
        return z

    def contains(self, z: np.ndarray, factor: float = 1.0) -> bool:
        return all(
            self.v_boxes[j].contains(z[j, 0], factor)
            and self.x_boxes[j].contains(z[j, 1], factor)
            for j in range(len(self.v_boxes)))


def build_boxes(form: EvenWord, params: TwistParams,
                cls: HomotopyClassSpec, signs: SignPattern,
                smoothed: bool = True) -> Boxes:
    m, n, N = form.m, params.n, params.N
    if cls.m != m or signs.m != m:
        raise ValueError("class/sign length must match the word")
    steps = form.step_exponents()
    radius = form.max_abs_exponent() / N
    v_boxes, x_boxes, v_roots, x_roots = [], [], [], []
    for j in range(m):
        kb_j = steps[j][0]
        alpha = cls.alpha_vec(j, n)
        c_v = float(np.linalg.norm(alpha)) / (kb_j * N)
        pair = RootPair(c=c_v,
                        r_minus=solve_profile_root(c_v, -1, params, smoothed),
                        r_plus=solve_profile_root(c_v, +1, params, smoothed))
        v_roots.append(pair)
        center = pair.root(signs.xi[j]) * alpha / np.linalg.norm(alpha)
        v_boxes.append(BoxSpec(center=center, radius=radius))

        ka_prev = steps[(j - 1) % m][1]
        beta = cls.beta_vec((j - 1) % m, n)
        c_x = -float(np.linalg.norm(beta)) / (ka_prev * N)
        pair = RootPair(c=c_x,
                        r_minus=solve_profile_root(c_x, -1, params, smoothed),
                        r_plus=solve_profile_root(c_x, +1, params, smoothed))
        x_roots.append(pair)
        center = pair.root(signs.sigma[j]) * beta / np.linalg.norm(beta)
        x_boxes.append(BoxSpec(center=center, radius=radius))
    return Boxes(v_boxes=tuple(v_boxes), x_boxes=tuple(x_boxes),
                 v_roots=tuple(v_roots), x_roots=tuple(x_roots))


# ----------------------------------------------------------------------
# The fixed-point system.

def _profile_jet(u: np.ndarray, params: TwistParams, smoothed: bool):
    """rho(|u|), rho'(|u|), |u| at a point."""
    r = float(np.linalg.norm(u))
    return (float(eval_rho(r, params, smoothed)),
            float(eval_rho_prime(r, params, smoothed)), r)


def twist_derivative_block(u: np.ndarray, k: float, N: int,
                           params: TwistParams,
                           smoothed: bool = True) -> np.ndarray:
    """d/du of k N rho(|u|) u: the symmetric matrix
    k N (rho(|u|) I + rho'(|u|) u u^T / |u|)."""
    rho_u, drho_u, r = _profile_jet(u, params, smoothed)
    n = len(u)
    block = rho_u * np.eye(n)
    if r > 0:
        block = block + (drho_u / r) * np.outer(u, u)
    return k * N * block


def defect(z: np.ndarray, form: EvenWord, params: TwistParams,
           cls: HomotopyClassSpec, smoothed: bool = True) -> np.ndarray:
    """Residual of the fixed-point system; z has shape (m, 2, n)."""
    m, n, N = form.m, params.n, params.N
    steps = form.step_exponents()
    F = np.empty_like(z)
    for j in range(m):
        kb_j, ka_j = steps[j]
        v_j, x_j = z[j, 0], z[j, 1]
        x_next, v_next = z[(j + 1) % m, 1], z[(j + 1) % m, 0]
        rho_v = eval_rho(float(np.linalg.norm(v_j)), params, smoothed)
        x_pred = x_j + N * kb_j * rho_v * v_j - cls.alpha_vec(j, n)
        F[j, 1] = x_pred - x_next
        rho_x = eval_rho(float(np.linalg.norm(x_next)), params, smoothed)
        v_pred = v_j - N * ka_j * rho_x * x_next - cls.beta_vec(j, n)
        F[j, 0] = v_pred - v_next
    return F


def defect_jacobian(z: np.ndarray, form: EvenWord, params: TwistParams,
                    cls: HomotopyClassSpec,
                    smoothed: bool = True) -> np.ndarray:
    m, n, N = form.m, params.n, params.N
    steps = form.step_exponents()
    dim = 2 * m * n
    J = np.zeros((dim, dim))
    eye = np.eye(n)

    def vs(j):  # slice of v_j in the flattened state
        return slice((2 * (j % m)) * n, (2 * (j % m) + 1) * n)

    def xs(j):
        return slice((2 * (j % m) + 1) * n, (2 * (j % m) + 2) * n)

    for j in range(m):
        kb_j, ka_j = steps[j]
        v_j, x_next = z[j, 0], z[(j + 1) % m, 1]
        rx = 2 * j * n  # row block for F[j, 0] (v-defect)
        rxx = rx + n    # row block for F[j, 1] (x-defect)
        # x-defect rows
        J[rxx:rxx + n, xs(j)] += eye
        J[rxx:rxx + n, vs(j)] += twist_derivative_block(
            v_j, kb_j, N, params, smoothed)
        J[rxx:rxx + n, xs(j + 1)] += -eye
        # v-defect rows
        J[rx:rx + n, vs(j)] += eye
        J[rx:rx + n, xs(j + 1)] += -twist_derivative_block(
            x_next, ka_j, N, params, smoothed)
        J[rx:rx + n, vs(j + 1)] += -eye
    return J


def _contraction_sweep(z: np.ndarray, form: EvenWord, params: TwistParams,
                       cls: HomotopyClassSpec, signs: SignPattern,
                       smoothed: bool) -> np.ndarray:
    """One sweep of the inverse-map iteration: each v_j and x_j is reset
    to the branch root of its own equation given the current neighbors."""
    m, n, N = form.m, params.n, params.N
    steps = form.step_exponents()
    out = z.copy()

    def vec_root(target: np.ndarray, k: float, branch: int) -> np.ndarray:
        mag = float(np.linalg.norm(target)) / (k * N)
        r = solve_profile_root(mag, branch, params, smoothed)
        return r * target / np.linalg.norm(target)

    for j in range(m):
        kb_j, ka_j = steps[j]
        target_v = out[(j + 1) % m, 1] - out[j, 1] + cls.alpha_vec(j, n)
        out[j, 0] = vec_root(target_v, kb_j, signs.xi[j])
        target_x = (out[j, 0] - out[(j + 1) % m, 0]
                    - cls.beta_vec(j, n)) / (N * ka_j)
        mag = float(np.linalg.norm(target_x))
        r = solve_profile_root(mag, signs.sigma[(j + 1) % m],
                               params, smoothed)
        out[(j + 1) % m, 1] = r * target_x / mag
    return out


@dataclass(frozen=True)
class FixedPointRecord:
    form: EvenWord
    params: TwistParams
    cls: HomotopyClassSpec
    signs: SignPattern
    vs: np.ndarray  # (m, n)
    xs: np.ndarray  # (m, n)
    residual: float
    boxes: Boxes = field(repr=False)
    supported: bool = True
    iterations: int = 0

    @property
    def m(self) -> int:
        return self.form.m

    def state(self) -> np.ndarray:
        z = np.empty((self.m, 2, self.params.n))
        z[:, 0] = self.vs
        z[:, 1] = self.xs
        return z

    def verify_by_iteration(self, smoothed: bool = True) -> float:
        """Consistency of the record with the chart-level dynamics.

        Each step j starts from the recorded (v_j, x_j), applies its two
        twists through the chart maps, and is compared against the next
        recorded slot.  The map expands by a factor of order N|k| per
        twist, so a full-loop walk would amplify machine rounding beyond
        any useful tolerance for m >= 2; the per-step comparison checks
        the same dynamics without that conditioning problem.
        """
        from .words import Syllable, Word
        steps = self.form.step_exponents()
        worst = 0.0
        for j, (kb_j, ka_j) in enumerate(steps):
            chunk = Word((Syllable("a", ka_j), Syllable("b", kb_j)))
            p = ChartPoint.make(2, self.vs[j], self.xs[j])
            result = apply_word(p, chunk, self.params, smoothed)
            if result.escaped:
                return float("inf")
            q = result.point
            if q.chart != 2:
                q = chart_transition(q, 2)
            nxt = (j + 1) % self.m
            dv = np.max(np.abs(q.v - self.vs[nxt]))
            dx = np.max(np.abs(q.x_frac - self.xs[nxt]))
            worst = max(worst, float(dv), float(dx))
        return worst


def solve_fixed_point(form: EvenWord, params: TwistParams,
                      cls: HomotopyClassSpec, signs: SignPattern,
                      start: np.ndarray | None = None,
                      smoothed: bool = True,
                      tol: float = RESIDUAL_TOL,
                      max_iters: int = MAX_NEWTON_ITERS) -> FixedPointRecord:
    boxes = build_boxes(form, params, cls, signs, smoothed)
    z = boxes.centers() if start is None else np.array(start, dtype=float)
    if not boxes.contains(z, BOX_ESCAPE_FACTOR):
        raise EscapedBoxError("starting point outside doubled boxes")
    best_z, best_res = None, np.inf
    stalled = 0
    for it in range(1, max_iters + 1):
        F = defect(z, form, params, cls, smoothed)
        res = float(np.max(np.abs(F)))
        if res < best_res:
            best_z, best_res = z.copy(), res
            stalled = 0
        else:
            stalled += 1
        # Converged, or polishing has hit the rounding floor.
        if best_res < tol or (stalled >= 2
                              and best_res <= RESIDUAL_REQUIRED):
            supported = params.above_threshold(form.max_abs_exponent())
            return FixedPointRecord(
                form=form, params=params, cls=cls, signs=signs,
                vs=best_z[:, 0].copy(), xs=best_z[:, 1].copy(),
                residual=best_res, boxes=boxes, supported=supported,
                iterations=it - 1)
        J = defect_jacobian(z, form, params, cls, smoothed)
        try:
            step = np.linalg.solve(J, -F.reshape(-1)).reshape(z.shape)
        except np.linalg.LinAlgError:
            # Outer-branch boxes can overhang the profile support, where
            # the twist decouples and the Jacobian degenerates; one
            # contraction sweep pulls the iterate back onto the branch.
            z = _contraction_sweep(z, form, params, cls, signs, smoothed)
            if not boxes.contains(z, BOX_ESCAPE_FACTOR):
                raise SingularJacobianError(
                    f"singular Jacobian and contraction escape "
                    f"(pattern {signs})")
            continue
        lam = 1.0
        while lam > 1 / 32:
            z_new = z + lam * step
            if boxes.contains(z_new, BOX_ESCAPE_FACTOR):
                break
            lam /= 2
        else:
            # Newton wants to leave the doubled boxes; fall back to one
            # contraction sweep, which stays on the branch by design.
            z_new = _contraction_sweep(z, form, params, cls, signs, smoothed)
            if not boxes.contains(z_new, BOX_ESCAPE_FACTOR):
                raise EscapedBoxError(
                    f"iterate escaped doubled boxes (pattern {signs})")
        z = z_new
    raise NonConvergenceError(
        f"no convergence after {max_iters} iterations (residual {res})")


def census(form: EvenWord, params: TwistParams, cls: HomotopyClassSpec,
           smoothed: bool = True, threads: int = 1
           ) -> list[FixedPointRecord]:
    """Solve all 2^{2m} sign patterns; deterministic pattern order."""
    patterns = list(SignPattern.all_patterns(form.m))

    def solve(p):
        return solve_fixed_point(form, params, cls, p, smoothed=smoothed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(solve, patterns))
    return [solve(p) for p in patterns]


# ----------------------------------------------------------------------
# Expansion check.

@dataclass(frozen=True)
class ExpansionReport:
    min_ratio: float
    bound: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.min_ratio >= self.bound


def _forward_map_batch(z: np.ndarray, form: EvenWord, params: TwistParams,
                       cls: HomotopyClassSpec, smoothed: bool) -> np.ndarray:
    """Slot map whose fixed points solve the system; z is (B, m, 2, n)."""
    m, n, N = form.m, params.n, params.N
    steps = form.step_exponents()
    out = np.empty_like(z)
    for j in range(m):
        kb_j, ka_j = steps[j]
        v_j, x_j = z[:, j, 0], z[:, j, 1]
        x_next = z[:, (j + 1) % m, 1]
        rho_v = eval_rho(np.linalg.norm(v_j, axis=1), params, smoothed)
        out[:, (j + 1) % m, 1] = (x_j + N * kb_j * rho_v[:, None] * v_j
                                  - cls.alpha_vec(j, n))
        rho_x = eval_rho(np.linalg.norm(x_next, axis=1), params, smoothed)
        out[:, (j + 1) % m, 0] = (v_j - N * ka_j * rho_x[:, None] * x_next
                                  - cls.beta_vec(j, n))
    return out


def verify_expansion(form: EvenWord, params: TwistParams,
                     cls: HomotopyClassSpec, signs: SignPattern,
                     samples: int = 1000,
                     rng: np.random.Generator | None = None,
                     smoothed: bool = True) -> ExpansionReport:
    """Empirical expansion factor of the slot map over random pairs in
    the box product of the given sign pattern."""
    if rng is None:
        rng = np.random.default_rng(0)
    boxes = build_boxes(form, params, cls, signs, smoothed)
    m, n = form.m, params.n

    def draw(count):
        z = np.empty((count, m, 2, n))
        for j in range(m):
            for slot, box in ((0, boxes.v_boxes[j]), (1, boxes.x_boxes[j])):
                offs = rng.uniform(-1, 1, size=(count, n))
                offs *= box.radius / np.sqrt(n)
                z[:, j, slot] = box.center + offs
        return z

    p = draw(samples)
    q = draw(samples)
    fp = _forward_map_batch(p, form, params, cls, smoothed)
    fq = _forward_map_batch(q, form, params, cls, smoothed)
    dz = np.max(np.abs(p - q).reshape(samples, -1), axis=1)
    df = np.max(np.abs(fp - fq).reshape(samples, -1), axis=1)
    good = dz > 0
    ratios = df[good] / dz[good]
    bound = params.N / (5.0 * form.max_abs_exponent()) - 1.0
    return ExpansionReport(min_ratio=float(np.min(ratios)), bound=bound,
                           samples=int(np.sum(good)))


# ----------------------------------------------------------------------
# Dense orbits and growth.

@dataclass(frozen=True)
class TargetBox:
    v_center: tuple[float, ...]
    x_center: tuple[float, ...]
    radius: float


@dataclass(frozen=True)
class DensityResult:
    found: bool
    nu: int = 0
    orbit_slot: int = -1
    witness_v: tuple[float, ...] = ()
    witness_x: tuple[float, ...] = ()
    pairs: int = 0


def density_experiment(n: int, epsilon: float, target: TargetBox,
                       max_index: int,
                       smoothed: bool = True) -> DensityResult:
    """Smallest twist strength nu whose alternating-word orbits hit the
    target ball inside the annulus U = {eps/4 < |v|, |x| < eps/3}.

    For each nu the rational points of denominator nu inside the annulus
    window are enumerated; one orbit of (ab)^K, with one winding pair per
    rational pair and the all-inner sign pattern, passes within O(1/nu^2)
    of each of them.
    """
    vc = np.asarray(target.v_center, dtype=float)
    xc = np.asarray(target.x_center, dtype=float)
    rad = target.radius
    lo, hi = epsilon / 4, epsilon / 3
    # The hit test only ever fires on orbit points inside the annulus, so
    # the target is admissible whenever its center is; the ball itself may
    # overhang the annulus (its width is eps/12, smaller than common
    # target radii like eps/10).
    for center in (vc, xc):
        norm = float(np.linalg.norm(center))
        if not (lo < norm < hi):
            raise ValueError("target center must lie strictly inside the "
                             "annulus eps/4 < |.| < eps/3")
    if rad <= 0:
        raise ValueError("target radius must be positive")
    if n != 1:
        raise NotImplementedError("density scan implemented for n = 1")

    for nu in range(1, max_index + 1):
        a_vals = [a for a in range(int(lo * nu) + 1, int(np.ceil(hi * nu)))
                  if lo * nu < a < hi * nu]
        if not a_vals:
            continue
        pairs = [(a, b) for a in a_vals for b in a_vals]
        K = len(pairs)
        params = TwistParams.make(n=n, epsilon=epsilon, N=nu)
        form = EvenWord((1, 1) * K)
        # Orbit slot j carries v_j ~ alpha_j / nu and x_j ~ -beta_{j-1}/nu.
        alphas = tuple(p[0] for p in pairs)
        betas = tuple(pairs[(j + 1) % K][1] for j in range(K))
        cls = HomotopyClassSpec(alphas=alphas, betas=betas)
        signs = SignPattern(sigma=(-1,) * K, xi=(-1,) * K)
        rec = solve_fixed_point(form, params, cls, signs, smoothed=smoothed)
        for j in range(K):
            if (np.linalg.norm(rec.vs[j] - vc) <= rad
                    and np.linalg.norm(rec.xs[j] - xc) <= rad):
                return DensityResult(found=True, nu=nu, orbit_slot=j,
                                     witness_v=tuple(rec.vs[j]),
                                     witness_x=tuple(rec.xs[j]), pairs=K)
    return DensityResult(found=False)


def growth_count(params: TwistParams, k: int,
                 smoothed: bool = True) -> int:
    """Number of localized fixed points of the k-th power of the basic
    alternating word, counted by full census (expect 4^k)."""
    base = parse_word("a^1 b^1")
    _, form = to_even_form(power_word(base, k))
    cls = HomotopyClassSpec.midrange(form.m, params)
    return len(census(form, params, cls, smoothed=smoothed))
