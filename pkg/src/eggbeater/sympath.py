"""Robbin-Salamon and Conley-Zehnder indices of the linearized return map.

The linearization of one step of the fixed-point dynamics is a pair of
symplectic shears: a lower shear [[I, 0], [-K t, I]] from the b-twist
followed by an upper shear [[I, L t], [0, I]] from the a-twist, where K
and L are the symmetric twist derivative blocks at the step's fiber
points.  The Robbin-Salamon index of an upper shear with block B(t) is
(sign B(0) - sign B(1)) / 2; a lower shear is conjugate to an upper one
by the standard complex structure and has the same index with B = -K.

Concatenations are handled by two Cayley-transform formulas.  For paths
with nondegenerate endpoints the correction is sign(M_A + M_B)/2 with
M_P = J (I + P)(I - P)^{-1} / 2; the Cayley transform is linear in J, so
the correction sign pairs with the J convention used here, and is pinned
by the crossing-form normalization (a positive rotation through an angle
in (0, 2 pi) has index one).  When the endpoints are degenerate (the
shears fix an n-dimensional subspace) the correction is
(sign(C_A - C_B) - sign C_B + sign C_A)/2 with C_P = J(J - I)(P - J)^{-1}(P - I).
For the amplified twists the corrections vanish through specific
signature values (sign M = 0, sign C = -n, sign of the difference = 0);
these are computed and checked, not assumed, and a violation raises
SignConditionError.

All indices are carried as doubled integers so half-integers stay exact.

An independent crossing-form oracle evaluates the index of a smooth
symplectic path directly from the definition: locate the times where
ker(Psi(t) - I) is nontrivial, restrict the form Q(z) = -z^T J dPsi/dt z
to the kernel, and sum signatures (halved at the endpoints).  The shears
have identically vanishing crossing forms, which the oracle reports as
NonRegularCrossingError rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from .errors import (ConcatPreconditionError, NonRegularCrossingError,
                     SignConditionError)
from .orbits import FixedPointRecord, twist_derivative_block

SIGNATURE_REL_TOL = 1.0e-8
CAYLEY_COND_LIMIT = 1.0e12
CROSSING_GRID = 2048
CROSSING_SV_TOL = 1.0e-7
DERIV_STEP = 1.0e-6


def J_matrix(n: int) -> np.ndarray:
    """Complex structure [[0, I], [-I, 0]] on R^{2n}, the convention under
    which the base-point-J Cayley transform of the twist shears takes its
    block-diagonal normal form."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def is_symplectic(M: np.ndarray, tol: float = 1.0e-9) -> bool:
    n = M.shape[0] // 2
    J = J_matrix(n)
    return bool(np.allclose(M.T @ J @ M, J, atol=tol * max(1.0, np.abs(M).max()) ** 2))


@dataclass(frozen=True, order=True)
class IndexValue:
    """Half-integer index stored as a doubled integer."""

    doubled: int

    @property
    def value(self) -> float:
        return self.doubled / 2.0

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __add__(self, other: "IndexValue") -> "IndexValue":
        return IndexValue(self.doubled + other.doubled)

    def __sub__(self, other: "IndexValue") -> "IndexValue":
        return IndexValue(self.doubled - other.doubled)

    def __neg__(self) -> "IndexValue":
        return IndexValue(-self.doubled)

    def __repr__(self) -> str:
        if self.is_integer:
            return f"IndexValue({self.doubled // 2})"
        return f"IndexValue({self.doubled}/2)"


def signature(S: np.ndarray, rel_tol: float = SIGNATURE_REL_TOL) -> int:
    """Signature of a symmetric matrix with a relative zero threshold."""
    S = 0.5 * (S + S.T)
    eig = np.linalg.eigvalsh(S)
    scale = max(1.0, float(np.abs(eig).max(initial=0.0)))
    thresh = rel_tol * scale
    return int(np.sum(eig > thresh) - np.sum(eig < -thresh))


def cayley_M(P: np.ndarray) -> np.ndarray:
    """Cayley transform J (I + P)(I - P)^{-1} / 2 for nondegenerate P."""
    n = P.shape[0] // 2
    A = np.eye(2 * n) - P
    if np.linalg.cond(A) > CAYLEY_COND_LIMIT:
        raise ConcatPreconditionError("I - P is numerically singular")
    M = 0.5 * J_matrix(n) @ (np.eye(2 * n) + P) @ np.linalg.inv(A)
    return 0.5 * (M + M.T)


def cayley_CJ(P: np.ndarray) -> np.ndarray:
    """Cayley transform J(J - I)(P - J)^{-1}(P - I) at base point J."""
    n = P.shape[0] // 2
    J = J_matrix(n)
    A = P - J
    if np.linalg.cond(A) > CAYLEY_COND_LIMIT:
        raise ConcatPreconditionError("P - J is numerically singular")
    eye = np.eye(2 * n)
    C = J @ (J - eye) @ np.linalg.inv(A) @ (P - eye)
    return 0.5 * (C + C.T)


def rs_shear_index(B0: np.ndarray, B1: np.ndarray) -> IndexValue:
    """Doubled Robbin-Salamon index of the upper shear with block B(t)
    running linearly from B0 to B1: (sign B0 - sign B1) / 2."""
    return IndexValue(signature(B0) - signature(B1))


def rs_concat_nondeg(iA: IndexValue, iB: IndexValue,
                     A1: np.ndarray, B1: np.ndarray) -> tuple[IndexValue, dict]:
    """Index of the concatenation A # (B . A(1)) from the endpoint Cayley
    transforms; both I - A(1) and I - B(1) must be invertible.  Returns
    the index and the signatures entering the correction."""
    MA, MB = cayley_M(A1), cayley_M(B1)
    sigs = {"M_A": signature(MA), "M_B": signature(MB),
            "M_sum": signature(MA + MB)}
    return iA + iB + IndexValue(sigs["M_sum"]), sigs


def rs_concat_deg(iA: IndexValue, iB: IndexValue,
                  A1: np.ndarray, B1: np.ndarray) -> tuple[IndexValue, dict]:
    """Index of the concatenation A # (B . A(1)) from the base-point-J
    Cayley transforms; both A(1) - J and B(1) - J must be invertible."""
    CA, CB = cayley_CJ(A1), cayley_CJ(B1)
    sigs = {"C_A": signature(CA), "C_B": signature(CB),
            "C_diff": signature(CA - CB)}
    corr = IndexValue(sigs["C_diff"] - sigs["C_B"] + sigs["C_A"])
    return iA + iB + corr, sigs


# ----------------------------------------------------------------------
# Shear data of a fixed-point record.

@dataclass(frozen=True)
class ShearStep:
    """Twist derivative blocks of step j: the b-twist at v_j (block K)
    acts first, the a-twist at x_{j+1} (block L) second."""

    K: np.ndarray
    L: np.ndarray

    @property
    def n(self) -> int:
        return self.K.shape[0]

    def lower_endpoint(self) -> np.ndarray:
        n = self.n
        A = np.eye(2 * n)
        A[n:, :n] = -self.K
        return A

    def upper_endpoint(self) -> np.ndarray:
        n = self.n
        B = np.eye(2 * n)
        B[:n, n:] = self.L
        return B

    def endpoint(self) -> np.ndarray:
        return self.upper_endpoint() @ self.lower_endpoint()


def assemble_shears(rec: FixedPointRecord,
                    smoothed: bool = True) -> list[ShearStep]:
    params, N, m = rec.params, rec.params.N, rec.m
    steps = []
    for j, (kb_j, ka_j) in enumerate(rec.form.step_exponents()):
        K = twist_derivative_block(rec.vs[j], kb_j, N, params, smoothed)
        L = twist_derivative_block(rec.xs[(j + 1) % m], ka_j, N, params,
                                   smoothed)
        steps.append(ShearStep(K=K, L=L))
    return steps


def gamma_endpoint(rec: FixedPointRecord, smoothed: bool = True) -> np.ndarray:
    """Endpoint of the linearized loop: the product of the step
    monodromies, later steps acting on the left."""
    shears = assemble_shears(rec, smoothed)
    n = shears[0].n
    G = np.eye(2 * n)
    for step in shears:
        G = step.endpoint() @ G
    return G


# ----------------------------------------------------------------------
# Index pipeline and closed form.

def cz_index_pipeline(rec: FixedPointRecord,
                      smoothed: bool = True) -> IndexValue:
    """Conley-Zehnder index through the concatenation calculus.

    Each step contributes the two shear indices plus a degenerate-base
    correction; the steps are then chained with the nondegenerate
    correction.  Every correction is evaluated from the actual matrices
    and the amplified-twist signature values (C transforms of signature
    -n with vanishing difference, M transforms of signature zero) are
    verified, raising SignConditionError on failure.
    """
    shears = assemble_shears(rec, smoothed)
    n = shears[0].n

    step_indices = []
    for step in shears:
        iK = rs_shear_index(np.zeros_like(step.K), step.K)
        iL = rs_shear_index(np.zeros_like(step.L), step.L)
        idx, sigs = rs_concat_deg(iK, iL, step.lower_endpoint(),
                                  step.upper_endpoint())
        if sigs["C_A"] != -n or sigs["C_B"] != -n or sigs["C_diff"] != 0:
            raise SignConditionError(
                "degenerate concatenation signatures off the amplified "
                f"regime: {sigs}", sigs)
        step_indices.append(idx)

    total = step_indices[-1]
    suffix = shears[-1].endpoint()
    for j in range(len(shears) - 2, -1, -1):
        total, sigs = rs_concat_nondeg(step_indices[j], total,
                                       shears[j].endpoint(), suffix)
        if sigs["M_A"] != 0 or sigs["M_B"] != 0 or sigs["M_sum"] != 0:
            raise SignConditionError(
                "nondegenerate concatenation signatures off the amplified "
                f"regime: {sigs}", sigs)
        suffix = suffix @ shears[j].endpoint()

    return IndexValue(2 * n - total.doubled)


def cz_index_closed(rec: FixedPointRecord) -> IndexValue:
    """Closed-form Conley-Zehnder index from the branch signs:
    n - sum_j [sign(ka_j)(sigma_{j+1} + 1 - n) + sign(kb_j)(xi_j + 1 - n)] / 2.
    """
    n, m = rec.params.n, rec.m
    sigma, xi = rec.signs.sigma, rec.signs.xi
    doubled = 2 * n
    for j, (kb_j, ka_j) in enumerate(rec.form.step_exponents()):
        doubled -= int(np.sign(ka_j)) * (sigma[(j + 1) % m] + 1 - n)
        doubled -= int(np.sign(kb_j)) * (xi[j] + 1 - n)
    return IndexValue(doubled)


# ----------------------------------------------------------------------
# Crossing-form oracle.

def linear_hamiltonian_path(S: np.ndarray) -> Callable[[float], np.ndarray]:
    """Path t -> exp(t J S) generated by the quadratic Hamiltonian S."""
    n = S.shape[0] // 2
    A = J_matrix(n) @ S
    return lambda t: expm(t * A)


def _path_derivative(path, t: float, h: float = DERIV_STEP) -> np.ndarray:
    lo, hi = max(0.0, t - h), min(1.0, t + h)
    return (path(hi) - path(lo)) / (hi - lo)


def _kernel_basis(M: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the numerical kernel of M (columns)."""
    _, sv, Vt = np.linalg.svd(M)
    scale = max(1.0, sv.max(initial=0.0))
    return Vt[sv < tol * scale].T


def _crossing_signature(path, dpath, t: float, n: int) -> int:
    """Signature of the crossing form Q(z) = -z^T J dPsi z on the kernel
    of Psi(t) - I.  A degenerate restriction is not a regular crossing."""
    Psi = path(t)
    Z = _kernel_basis(Psi - np.eye(2 * n), CROSSING_SV_TOL)
    if Z.shape[1] == 0:
        return 0
    dPsi = dpath(t) if dpath is not None else _path_derivative(path, t)
    Q = -Z.T @ J_matrix(n) @ dPsi @ Z
    Q = 0.5 * (Q + Q.T)
    eig = np.linalg.eigvalsh(Q)
    scale = max(np.abs(eig).max(initial=0.0), 1.0e-300)
    if np.any(np.abs(eig) < SIGNATURE_REL_TOL * scale) or scale < 1.0e-12:
        raise NonRegularCrossingError(
            f"crossing form at t={t} is degenerate on the kernel")
    return int(np.sum(eig > 0) - np.sum(eig < 0))


def rs_index_crossing(path: Callable[[float], np.ndarray],
                      dpath: Callable[[float], np.ndarray] | None = None,
                      grid: int = CROSSING_GRID) -> IndexValue:
    """Robbin-Salamon index of a symplectic path on [0, 1] from the
    crossing form: half signatures at the endpoints, full signatures at
    interior crossings.  Crossings are located as minima of the smallest
    singular value of Psi(t) - I on a dense grid, refined by bisection on
    the second singular value... in practice by a local scan.  Requires
    all crossings regular; raises NonRegularCrossingError otherwise.
    """
    ts = np.linspace(0.0, 1.0, grid + 1)
    n = path(0.0).shape[0] // 2
    eye = np.eye(2 * n)

    def smin(t: float) -> float:
        sv = np.linalg.svd(path(t) - eye, compute_uv=False)
        return float(sv[-1])

    vals = np.array([smin(t) for t in ts])
    scale = max(1.0, max(np.abs(np.linalg.eigvals(path(t))).max()
                         for t in (0.5, 1.0)))
    cross_tol = CROSSING_SV_TOL * scale

    doubled = 0
    doubled += _crossing_signature(path, dpath, 0.0, n)  # half of sig
    if vals[-1] < cross_tol:
        doubled += _crossing_signature(path, dpath, 1.0, n)

    # Interior crossings: local minima of the smallest singular value
    # that actually reach (numerical) zero, refined by golden search.
    gold = 0.5 * (3.0 - np.sqrt(5.0))
    for i in range(1, grid):
        if not (vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]):
            continue
        a, b = ts[i - 1], ts[i + 1]
        for _ in range(80):
            m1, m2 = a + gold * (b - a), b - gold * (b - a)
            if smin(m1) < smin(m2):
                b = m2
            else:
                a = m1
        t_star = 0.5 * (a + b)
        if smin(t_star) >= cross_tol:
            continue
        if t_star < 10.0 * DERIV_STEP or t_star > 1.0 - 10.0 * DERIV_STEP:
            continue  # endpoint crossing, already counted
        doubled += 2 * _crossing_signature(path, dpath, t_star, n)
    return IndexValue(doubled)
