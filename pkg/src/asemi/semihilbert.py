"""Semi-Hilbertian structure induced by a positive semidefinite matrix A.

All seminorm computations go through :func:`compress`, which maps an
A-bounded operator T to the k x k matrix

    B = V* A^{1/2} T (A^{1/2})^+ V

on an orthonormal basis V of range(A). Classical (Euclidean) quantities of B
are the A-quantities of T; null(A) components contribute nothing. This
"compressed convention" is used uniformly, including for w_A and c_A whose
definitions range over all A-unit vectors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import DimensionMismatch, NotABounded, NotInBA

MEMBERSHIP_TOL = 1e-8


def _frozen(M: np.ndarray) -> np.ndarray:
    M = np.array(M, dtype=complex)
    M.flags.writeable = False
    return M


@dataclass(frozen=True)
class SemiHilbertContext:
    """A validated PSD weight A together with its cached factors.

    ``V`` holds eigenvectors of A for the retained (nonzero) eigenvalues
    ``eigvals``, so ``sqrtA = V diag(sqrt(eigvals)) V*`` on range(A).
    """

    A: np.ndarray
    sqrtA: np.ndarray
    sqrtA_pinv: np.ndarray
    A_pinv: np.ndarray
    proj: np.ndarray
    V: np.ndarray
    eigvals: np.ndarray
    rank: int
    tol: float = matcore.DEFAULT_TOL
    membership_tol: float = MEMBERSHIP_TOL

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def k(self) -> int:
        return self.rank

    def lift(self, y) -> np.ndarray:
        """Map range coordinates y (length k) to x = (A^{1/2})^+ V y, with ||x||_A = ||y||."""
        y = np.asarray(y, dtype=complex)
        return (self.V / np.sqrt(self.eigvals)) @ y

    def coords(self, x) -> np.ndarray:
        """Inverse of :meth:`lift` on range(A): y = V* A^{1/2} x."""
        Y = self.V.conj().T @ np.asarray(x, dtype=complex)
        return (np.sqrt(self.eigvals) * Y.T).T

    def embed(self, B) -> np.ndarray:
        """Operator on H that is zero on null(A), maps into range(A) and compresses to B."""
        B = np.asarray(B, dtype=complex)
        left = self.V / np.sqrt(self.eigvals)
        right = np.sqrt(self.eigvals)[:, None] * self.V.conj().T
        return left @ B @ right


@dataclass(frozen=True)
class BAOperator:
    """An operator certified to admit an A-adjoint."""

    T: np.ndarray
    adjoint: np.ndarray
    compressed: np.ndarray
    membership_residual: float


def make_context(A, tol: float = matcore.DEFAULT_TOL, membership_tol: float = MEMBERSHIP_TOL) -> SemiHilbertContext:
    A = matcore.as_matrix(A)
    es = matcore.hermitian_eig(A)
    w = matcore._clamp_psd(es.values, tol)
    lmax = w[0] if w.size else 0.0
    keep = w > tol * lmax if lmax > 0 else np.zeros(w.shape, bool)
    # ascending order, so a diagonal A yields the standard basis in index order
    lam = w[keep][::-1].copy()
    V = es.vectors[:, keep][:, ::-1].copy()
    Ah = (A + A.conj().T) / 2
    sqrtA = (V * np.sqrt(lam)) @ V.conj().T
    return SemiHilbertContext(
        A=_frozen(Ah),
        sqrtA=_frozen(sqrtA),
        sqrtA_pinv=_frozen((V / np.sqrt(lam)) @ V.conj().T),
        A_pinv=_frozen((V / lam) @ V.conj().T),
        proj=_frozen(V @ V.conj().T),
        V=_frozen(V),
        eigvals=np.array(lam, dtype=float),
        rank=int(lam.size),
        tol=tol,
        membership_tol=membership_tol,
    )


def _check_vec(ctx: SemiHilbertContext, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (ctx.n,):
        raise DimensionMismatch(f"expected a vector of length {ctx.n}, got shape {x.shape}")
    return x


def _check_op(ctx: SemiHilbertContext, T) -> np.ndarray:
    if isinstance(T, BAOperator):
        return T.T
    T = matcore.as_matrix(T)
    if T.shape != ctx.A.shape:
        raise DimensionMismatch(f"operator shape {T.shape} does not match A {ctx.A.shape}")
    return T


def a_inner(ctx: SemiHilbertContext, x, y) -> complex:
    """<x, y>_A = <Ax, y> = y* A x."""
    x, y = _check_vec(ctx, x), _check_vec(ctx, y)
    return complex(np.vdot(y, ctx.A @ x))


def a_norm_vec(ctx: SemiHilbertContext, x) -> float:
    return float(np.linalg.norm(ctx.sqrtA @ _check_vec(ctx, x)))


def membership_residual(ctx: SemiHilbertContext, T) -> float:
    """||(I - P_A) T* A|| / (1 + ||T* A||); zero iff R(T*A) lies in R(A)."""
    T = _check_op(ctx, T)
    TsA = T.conj().T @ ctx.A
    resid = TsA - ctx.proj @ TsA
    return matcore.spectral_norm(resid) / (1.0 + matcore.spectral_norm(TsA))


def a_bounded_residual(ctx: SemiHilbertContext, T) -> float:
    """||A^{1/2} T (I - P_A)|| / (1 + ||T|| ||A^{1/2}||); zero iff T kills null(A) in the A-seminorm."""
    T = _check_op(ctx, T)
    M = ctx.sqrtA @ T
    resid = M - M @ ctx.proj
    scale = 1.0 + matcore.spectral_norm(T) * matcore.spectral_norm(ctx.sqrtA)
    return matcore.spectral_norm(resid) / scale


def compress(ctx: SemiHilbertContext, T) -> np.ndarray:
    """k x k representative V* A^{1/2} T (A^{1/2})^+ V of an A-bounded operator."""
    if isinstance(T, BAOperator):
        return np.array(T.compressed)
    T = _check_op(ctx, T)
    resid = a_bounded_residual(ctx, T)
    if resid > ctx.membership_tol:
        raise NotABounded(f"A-boundedness residual {resid:.3e} exceeds {ctx.membership_tol:.1e}")
    r = np.sqrt(ctx.eigvals)
    return (r[:, None] * (ctx.V.conj().T @ T @ ctx.V)) / r[None, :]


def a_adjoint(ctx: SemiHilbertContext, T) -> BAOperator:
    """Certify T in B_A(H) and return it with T^#A = A^+ T* A cached."""
    if isinstance(T, BAOperator):
        return T
    T = _check_op(ctx, T)
    resid = membership_residual(ctx, T)
    if resid > ctx.membership_tol:
        raise NotInBA(f"membership residual ||(I-P_A)T*A||/(1+||T*A||) = {resid:.3e} exceeds {ctx.membership_tol:.1e}")
    adjoint = ctx.A_pinv @ T.conj().T @ ctx.A
    return BAOperator(T=_frozen(T), adjoint=_frozen(adjoint), compressed=_frozen(compress(ctx, T)),
                      membership_residual=resid)


def _rel_residual(ctx: SemiHilbertContext, T: np.ndarray) -> float:
    AT = ctx.A @ T
    return matcore.spectral_norm(AT - T.conj().T @ ctx.A) / (
        1.0 + matcore.spectral_norm(ctx.A) * matcore.spectral_norm(T))


def is_a_selfadjoint(ctx: SemiHilbertContext, T) -> bool:
    """AT = T*A within membership_tol * (1 + ||A|| ||T||)."""
    return _rel_residual(ctx, _check_op(ctx, T)) <= ctx.membership_tol


def is_a_unitary(ctx: SemiHilbertContext, U) -> bool:
    """U^#A U = (U^#A)^#A U^#A = P_A."""
    op = a_adjoint(ctx, U)
    Us = op.adjoint
    Uss = ctx.A_pinv @ Us.conj().T @ ctx.A
    tol = ctx.membership_tol * (1.0 + matcore.spectral_norm(op.T) ** 2)
    return (matcore.spectral_norm(Us @ op.T - ctx.proj) <= tol
            and matcore.spectral_norm(Uss @ Us - ctx.proj) <= tol)


def cartesian_parts(ctx: SemiHilbertContext, T) -> tuple[np.ndarray, np.ndarray]:
    """A-real and A-imaginary parts: T = Re_A(T) + i Im_A(T)."""
    op = a_adjoint(ctx, T)
    re = (op.T + op.adjoint) / 2
    im = (op.T - op.adjoint) / 2j
    return re, im


# -- generators -------------------------------------------------------------

def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(rng: np.random.Generator, k: int) -> np.ndarray:
    """Haar-distributed k x k unitary (QR with phase correction)."""
    Z = _complex_gaussian(rng, (k, k))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.where(np.abs(d) > 0, np.abs(d), 1.0))


def random_positive(n: int, rank_deficit: int = 0, seed=None) -> np.ndarray:
    """Random PSD matrix with ``rank_deficit`` exact zero eigenvalues.

    Nonzero eigenvalues are log-uniform in [0.1, 10], so the rank gap is far
    above the default cutoff.
    """
    if not 0 <= rank_deficit <= n:
        raise ValueError("rank_deficit must lie in [0, n]")
    rng = np.random.default_rng(seed)
    Q = random_unitary(rng, n)
    lam = np.concatenate([10.0 ** rng.uniform(-1.0, 1.0, n - rank_deficit), np.zeros(rank_deficit)])
    A = (Q * lam) @ Q.conj().T
    return (A + A.conj().T) / 2


def random_ba_operator(ctx: SemiHilbertContext, seed=None, null_coupling: bool = False) -> BAOperator:
    """T = (A^{1/2})^+ V G V* A^{1/2} + (I - P_A) X with Gaussian G (k x k) and X (n x n)."""
    rng = np.random.default_rng(seed)
    G = _complex_gaussian(rng, (ctx.k, ctx.k))
    T = ctx.embed(G)
    if null_coupling:
        X = _complex_gaussian(rng, (ctx.n, ctx.n))
        T = T + (np.eye(ctx.n) - ctx.proj) @ X
    return a_adjoint(ctx, T)


def random_a_unitary(ctx: SemiHilbertContext, seed=None) -> BAOperator:
    """U = (A^{1/2})^+ V W V* A^{1/2} with W Haar-random unitary on range(A)."""
    rng = np.random.default_rng(seed)
    return a_adjoint(ctx, ctx.embed(random_unitary(rng, ctx.k)))
