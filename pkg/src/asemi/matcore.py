"""Dense complex linear-algebra kernel.

Everything here operates on small square complex matrices (n up to a few
dozen). The LAPACK-backed routines are the default path; ``jacobi_eigh`` is a
dependency-free cyclic Jacobi solver kept as an independent cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotHermitian, NotPSD

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class EigenSystem:
    """Spectrum of a Hermitian matrix, eigenvalues in descending order."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def as_matrix(M, square: bool = True) -> np.ndarray:
    """Coerce to a 2-d complex array; raise DimensionMismatch on bad shapes."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array with shape {M.shape}")
    if square and M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    return M


def _hermitian_part(M: np.ndarray) -> np.ndarray:
    M = as_matrix(M)
    scale = 1.0 + (np.abs(M).max() if M.size else 0.0)
    if M.size and np.abs(M - M.conj().T).max() > 1e-10 * scale:
        raise NotHermitian("matrix is not Hermitian within 1e-10 relative")
    return (M + M.conj().T) / 2


def jacobi_eigh(M, max_sweeps: int = 100, tol: float = 1e-14) -> EigenSystem:
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each rotation first removes the phase of the pivot and then applies a
    real plane rotation. Raises ConvergenceFailure after ``max_sweeps``.
    """
    H = _hermitian_part(M).copy()
    n = H.shape[0]
    V = np.eye(n, dtype=complex)
    fro = np.linalg.norm(H)
    if n < 2 or fro == 0.0:
        return _sorted_system(np.real(np.diag(H)).copy(), V)
    threshold = tol * fro
    for _ in range(max_sweeps):
        if _off_norm(H) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                a = H[p, q]
                mag = abs(a)
                if mag <= 1e-300:
                    continue
                phase = a / mag
                theta = (H[q, q].real - H[p, p].real) / (2 * mag)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta else 1.0
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                J = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                H[:, idx] = H[:, idx] @ J
                H[idx, :] = J.conj().T @ H[idx, :]
                H[p, q] = H[q, p] = 0.0
                V[:, idx] = V[:, idx] @ J
    else:
        if _off_norm(H) > threshold:
            raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    return _sorted_system(np.real(np.diag(H)).copy(), V)


def _off_norm(H: np.ndarray) -> float:
    return float(np.linalg.norm(H - np.diag(np.diag(H))))


def _sorted_system(values: np.ndarray, vectors: np.ndarray) -> EigenSystem:
    order = np.argsort(-values, kind="stable")
    return EigenSystem(values[order], vectors[:, order])


def hermitian_eig(M, method: str = "lapack") -> EigenSystem:
    """Full eigendecomposition of a Hermitian matrix (descending eigenvalues).

    ``method`` is ``"lapack"`` (numpy) or ``"jacobi"``.
    """
    if method == "jacobi":
        return jacobi_eigh(M)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    H = _hermitian_part(M)
    w, U = np.linalg.eigh(H)
    return EigenSystem(w[::-1].copy(), U[:, ::-1].copy())


def psd_sqrt(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian PSD square root; eigenvalues in [-tol*lmax, 0) are clamped to 0."""
    es = hermitian_eig(M)
    w = _clamp_psd(es.values, tol)
    return (es.vectors * np.sqrt(w)) @ es.vectors.conj().T


def _clamp_psd(w: np.ndarray, tol: float) -> np.ndarray:
    if w.size == 0:
        return w
    lmax = max(w[0], 0.0)
    if w[-1] < -tol * lmax or (lmax == 0.0 and w[-1] < 0.0):
        raise NotPSD(f"eigenvalue {w[-1]:.3e} below -tol*lambda_max = {-tol * lmax:.3e}")
    return np.clip(w, 0.0, None)


def numerical_rank(s: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def pinv(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with relative singular-value cutoff ``tol``."""
    if not 0.0 < tol < 1.0:
        raise ValueError("tol must lie in (0, 1)")
    M = as_matrix(M, square=False)
    if M.size == 0:
        return np.zeros(M.shape[::-1], dtype=complex)
    U, s, Vh = np.linalg.svd(M)
    r = numerical_rank(s, tol)
    return (Vh[:r].conj().T / s[:r]) @ U[:, :r].conj().T


def range_basis(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (n x k) of the numerical column space of ``M``."""
    M = as_matrix(M, square=False)
    if M.size == 0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    U, s, _ = np.linalg.svd(M)
    return U[:, : numerical_rank(s, tol)]


def spectral_norm(M) -> float:
    M = as_matrix(M, square=False)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def singular_values(M) -> np.ndarray:
    M = as_matrix(M, square=False)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)
