"""Scalar A-functionals: operator seminorm, minimum modulus, numerical radius,
Crawford number and the alpha-interpolated seminorm.

Every functional is evaluated on the compressed representative B of T (see
:func:`asemi.semihilbert.compress`), where it becomes its classical
counterpart. The classical versions (``numerical_radius``,
``crawford_number``, ``alpha_norms``) are exported as well.

Sup-type estimates (w, alpha-norm) are feasible-point values and hence
certified lower bounds. The Crawford number is reported as a certified upper
bound (distance to a polygon inscribed in the numerical range) together with
a certified lower bound from the support function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize_scalar

from . import sphere
from .errors import AlphaOutOfRange
from .semihilbert import SemiHilbertContext, compress


@dataclass(frozen=True)
class Effort:
    """Optimizer budget. ``scaled(8)`` is the high-effort re-run budget."""

    grid: int = 1024
    starts: int = 32
    maxit: int = 500
    n_theta: int = 48
    n_psi: int = 13
    keep: int = 4
    rtol: float = 1e-12
    xtol: float = 1e-12

    def scaled(self, factor: int) -> "Effort":
        root = math.sqrt(factor)
        return replace(self, grid=self.grid * factor, starts=max(self.starts, 4) * factor,
                       n_theta=int(round(self.n_theta * root)), n_psi=int(round(self.n_psi * root)),
                       keep=self.keep * factor)


DEFAULT_EFFORT = Effort()


@dataclass(frozen=True)
class RadiusEstimate:
    """Result of a sup/inf computation.

    ``witness`` is a unit vector in range(A) coordinates (lift it with
    ``ctx.lift``). For sup-type quantities ``value == certified_lower`` is the
    objective at the witness; for the Crawford number ``value`` equals
    ``certified_upper``.
    """

    value: float
    witness: np.ndarray
    certified_lower: float
    certified_upper: float | None = None
    effort: dict = field(default_factory=dict)


def check_alpha(alpha) -> float:
    try:
        a = float(alpha)
    except (TypeError, ValueError):
        raise AlphaOutOfRange(f"alpha must be a real number, got {alpha!r}") from None
    if not (0.0 <= a <= 1.0):
        raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha!r}")
    return a


def _zero_estimate(k: int, **effort) -> RadiusEstimate:
    w = np.zeros(k, dtype=complex)
    if k:
        w[0] = 1.0
    return RadiusEstimate(0.0, w, 0.0, 0.0, dict(effort))


# -- classical quantities on a k x k matrix ---------------------------------

def _top_eig(B: np.ndarray, theta):
    """Largest eigenvalue/vector of Re(e^{i theta} B), vectorised over theta."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    E = np.exp(1j * theta)[:, None, None] * B
    w, U = np.linalg.eigh((E + E.conj().transpose(0, 2, 1)) / 2)
    return w[:, -1], U[:, :, -1]


def _support(B: np.ndarray, theta: float) -> float:
    E = np.exp(1j * theta) * B
    return float(np.linalg.eigvalsh((E + E.conj().T) / 2)[-1])


def _local_maxima(h: np.ndarray) -> np.ndarray:
    left, right = np.roll(h, 1), np.roll(h, -1)
    idx = np.flatnonzero((h >= left) & (h >= right))
    return idx[np.argsort(-h[idx], kind="stable")]


def numerical_radius(B, effort: Effort = DEFAULT_EFFORT, refine: int = 3) -> RadiusEstimate:
    """w(B) = max_theta lambda_max(Re(e^{i theta} B)).

    Uniform theta grid followed by bounded Brent (parabolic) refinement
    around the ``refine`` best grid maxima.
    """
    B = np.asarray(B, dtype=complex)
    k = B.shape[0]
    if k == 0 or not np.any(B):
        return _zero_estimate(k, grid=effort.grid)
    N = effort.grid
    step = 2 * np.pi / N
    theta = step * np.arange(N)
    E = np.exp(1j * theta)[:, None, None] * B
    h = np.linalg.eigvalsh((E + E.conj().transpose(0, 2, 1)) / 2)[:, -1]
    best = int(np.argmax(h))
    cand = [_top_eig(B, theta[best])[1][0]]
    thetas = [float(theta[best])]
    for j in _local_maxima(h)[:refine]:
        t0 = theta[j]
        res = minimize_scalar(lambda t: -_support(B, t), bounds=(t0 - step, t0 + step),
                              method="bounded", options={"xatol": effort.xtol})
        thetas.append(float(res.x))
        cand.append(_top_eig(B, res.x)[1][0])
    V = np.array(cand)
    z, _ = sphere.moments(B, V)
    vals = np.abs(z)
    i = int(np.argmax(vals))
    return RadiusEstimate(float(vals[i]), V[i], float(vals[i]), None,
                          {"grid": N, "refined": len(cand) - 1, "theta": thetas[i]})


def polygon_distance(points: np.ndarray) -> float:
    """Distance from the origin to the convex polygon with vertices ``points``.

    The vertices must be in boundary order (either orientation); repeated or
    collinear vertices are allowed, including a polygon collapsed to a
    segment or a point.
    """
    P = np.asarray(points, dtype=float)
    Q = np.roll(P, -1, axis=0)
    E = Q - P
    L2 = np.einsum("ij,ij->i", E, E)
    t = np.clip(-np.einsum("ij,ij->i", P, E) / np.where(L2 > 0, L2, 1.0), 0.0, 1.0)
    edge = float(np.min(np.linalg.norm(P + t[:, None] * E, axis=1)))
    cross = P[:, 0] * Q[:, 1] - P[:, 1] * Q[:, 0]
    scale = float(np.max(np.abs(P))) ** 2
    if scale == 0.0:
        return 0.0
    tiny = 1e-14 * scale
    inside = np.all(cross >= -tiny) or np.all(cross <= tiny)
    area = 0.5 * abs(float(np.sum(cross)))
    return 0.0 if inside and area > tiny else edge


def crawford_number(B, effort: Effort = DEFAULT_EFFORT) -> RadiusEstimate:
    """c(B) = distance from 0 to the numerical range W(B).

    Boundary points p(theta) = <B v, v> (v the top eigenvector of
    Re(e^{i theta} B)) are the support points of W(B) in direction
    e^{-i theta}, so in theta order they trace a convex polygon inscribed in
    W(B); its distance to 0 is an upper bound. -lambda_max(Re(e^{i theta} B))
    at the refined minimising direction is a lower bound.
    """
    B = np.asarray(B, dtype=complex)
    k = B.shape[0]
    if k == 0 or not np.any(B):
        return _zero_estimate(k, grid=effort.grid)
    N = effort.grid
    step = 2 * np.pi / N
    theta = step * np.arange(N)
    h, U = _top_eig(B, theta)
    j = int(np.argmin(h))
    res = minimize_scalar(lambda t: _support(B, t), bounds=(theta[j] - step, theta[j] + step),
                          method="bounded", options={"xatol": effort.xtol})
    h_star, u_star = _top_eig(B, res.x)
    pos = int(np.searchsorted(theta, res.x % (2 * np.pi)))
    V = np.insert(U, pos, u_star[0], axis=0)
    z, _ = sphere.moments(B, V)
    lower = max(0.0, -float(min(h_star[0], h[j])))
    upper = polygon_distance(np.column_stack([z.real, z.imag]))
    upper = max(upper, lower)
    i = int(np.argmin(np.abs(z)))
    return RadiusEstimate(upper, V[i], lower, upper, {"grid": N, "theta": float(res.x)})


def _top_singular(B: np.ndarray):
    _, s, Vh = np.linalg.svd(B)
    return float(s[0]), Vh[0].conj()


def alpha_norms(B, alphas, effort: Effort = DEFAULT_EFFORT, seed=0,
                w_estimate: RadiusEstimate | None = None) -> list[RadiusEstimate]:
    """Classical alpha-norms sup_{|y|=1} sqrt(alpha|<By,y>|^2 + (1-alpha)|By|^2) for several alpha.

    alpha = 0 is the spectral norm and alpha = 1 the numerical radius. Other
    weights share one batched ascent whose starts are: extreme points of the
    joint numerical range ranked per weight, ``effort.starts`` seeded random
    vectors, the numerical-radius witness and the top right singular vector.
    """
    B = np.asarray(B, dtype=complex)
    alphas = [check_alpha(a) for a in alphas]
    k = B.shape[0]
    if k == 0 or not np.any(B):
        return [_zero_estimate(k) for _ in alphas]
    out: list[RadiusEstimate | None] = [None] * len(alphas)
    interior = [i for i, a in enumerate(alphas) if 0.0 < a < 1.0]
    smax, v_top = _top_singular(B)
    if any(a == 0.0 for a in alphas) or interior:
        norm_est = RadiusEstimate(smax, v_top, smax, smax, {"method": "svd"})
        for i, a in enumerate(alphas):
            if a == 0.0:
                out[i] = norm_est
    if any(a == 1.0 for a in alphas) or interior:
        if w_estimate is None:
            w_estimate = numerical_radius(B, effort)
        for i, a in enumerate(alphas):
            if a == 1.0:
                out[i] = w_estimate
    if interior:
        # the objective is 2-homogeneous in B: optimise the normalised matrix
        Bn = sphere.pow2_normalize(B, smax)
        a_int = np.array([alphas[i] for i in interior])
        C = sphere.extreme_candidates(Bn, effort.n_theta, effort.n_psi)
        z, v = sphere.moments(Bn, C)
        F = np.outer(np.abs(z) ** 2, a_int) + np.outer(v, 1.0 - a_int)
        top = np.argsort(-F, axis=0, kind="stable")[: effort.keep]
        rng = np.random.default_rng(seed)
        R = rng.standard_normal((effort.starts, k)) + 1j * rng.standard_normal((effort.starts, k))
        common = np.vstack([R, w_estimate.witness[None, :], v_top[None, :]])
        blocks, row_alpha = [], []
        for j, a in enumerate(a_int):
            blk = np.vstack([C[top[:, j]], common])
            blocks.append(blk)
            row_alpha.append(np.full(len(blk), a))
        Y0 = np.vstack(blocks)
        _, Y, iters = sphere.ascend(Bn, np.concatenate(row_alpha), Y0, effort.maxit, effort.rtol)
        # re-evaluate in complex arithmetic so the witness certifies the value;
        # Bn = B / 2^e exactly, so the norm of B is 2^e sqrt(f)
        f = sphere.alpha_objective(Bn, np.concatenate(row_alpha), Y)
        e = int(np.frexp(smax)[1])
        per = len(blocks[0])
        for j, i in enumerate(interior):
            seg = f[j * per:(j + 1) * per]
            r = int(np.argmax(seg))
            val = math.ldexp(math.sqrt(max(float(seg[r]), 0.0)), e)
            out[i] = RadiusEstimate(val, Y[j * per + r], val, None,
                                    {"starts": per, "random_starts": effort.starts, "iterations": iters})
    return out  # type: ignore[return-value]


def alpha_norm(B, alpha, effort: Effort = DEFAULT_EFFORT, seed=0) -> RadiusEstimate:
    return alpha_norms(B, [alpha], effort, seed)[0]


# -- A-versions ---------------------------------------------------------------

def a_operator_norm(ctx: SemiHilbertContext, T) -> float:
    """||T||_A = sigma_max of the compressed operator."""
    B = compress(ctx, T)
    return float(np.linalg.norm(B, 2)) if B.size else 0.0


def a_min_modulus(ctx: SemiHilbertContext, T) -> float:
    """m_A(T) = sigma_min of the compressed operator (0 when rank A = 0)."""
    B = compress(ctx, T)
    return float(np.linalg.svd(B, compute_uv=False)[-1]) if B.size else 0.0


def a_numerical_radius(ctx: SemiHilbertContext, T, effort: Effort = DEFAULT_EFFORT) -> RadiusEstimate:
    return numerical_radius(compress(ctx, T), effort)


def a_crawford(ctx: SemiHilbertContext, T, effort: Effort = DEFAULT_EFFORT) -> RadiusEstimate:
    return crawford_number(compress(ctx, T), effort)


def alpha_seminorm(ctx: SemiHilbertContext, T, alpha, effort: Effort = DEFAULT_EFFORT, seed=0) -> RadiusEstimate:
    """||T||_{A_alpha}; alpha = 1 gives w_A(T), alpha = 0 gives ||T||_A."""
    return alpha_norms(compress(ctx, T), [alpha], effort, seed)[0]


def alpha_seminorm_many(ctx: SemiHilbertContext, T, alphas, effort: Effort = DEFAULT_EFFORT,
                        seed=0) -> list[RadiusEstimate]:
    return alpha_norms(compress(ctx, T), alphas, effort, seed)


def alpha_seminorm_oracle(ctx: SemiHilbertContext, T, alpha, samples: int = 100_000,
                          seed=0, steps: int = 50) -> RadiusEstimate:
    """Brute-force lower bound for ||T||_{A_alpha}: random unit vectors in
    range(A) coordinates, each polished by ``steps`` gradient iterations."""
    a = check_alpha(alpha)
    B = compress(ctx, T)
    if B.shape[0] == 0 or not np.any(B):
        return _zero_estimate(B.shape[0], samples=samples)
    f, y = sphere.sample_ascent(B, a, samples, steps, seed)
    val = math.sqrt(max(f, 0.0))
    return RadiusEstimate(val, y, val, None, {"samples": samples, "steps": steps})


def alpha_seminorm_direct(ctx: SemiHilbertContext, T, alpha, samples: int = 2000, steps: int = 200,
                          seed=0) -> float:
    """||T||_{A_alpha} by ascent over x in H itself, bypassing the compression.

    Maximises alpha|<Tx,x>_A|^2/||x||_A^4 + (1-alpha)||Tx||_A^2/||x||_A^2 from
    x = (A^{1/2})^+ y with Gaussian y, stepping along the A-gradient A^+ g.
    Only A, T and A^+ are used. Returns the best value found (a lower bound).
    """
    a_ = check_alpha(alpha)
    T = np.asarray(T.T if hasattr(T, "adjoint") else T, dtype=complex)
    if ctx.rank == 0:
        return 0.0
    A, Ap = np.array(ctx.A), np.array(ctx.A_pinv)
    AT = A @ T
    M = T.conj().T @ AT
    rng = np.random.default_rng(seed)
    n = ctx.n
    Y = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    X = Y @ np.array(ctx.sqrtA_pinv).T

    def parts(X):
        Ax, ATx, Mx = X @ A.T, X @ AT.T, X @ M.T
        a = np.einsum("mi,mi->m", X.conj(), Ax).real
        p = np.einsum("mi,mi->m", X.conj(), ATx)
        q = np.einsum("mi,mi->m", X.conj(), Mx).real
        f = a_ * np.abs(p) ** 2 / a ** 2 + (1 - a_) * q / a
        return f, a, p, q, Ax, ATx, Mx

    def renorm(X, a):
        return X / np.sqrt(a)[:, None]

    f, a, *_ = parts(X)
    X = renorm(X, a)
    f, a, p, q, Ax, ATx, Mx = parts(X)
    eta = np.full(samples, 1.0 / max(np.linalg.norm(M, 2), 1e-300))
    TsAx = X @ (T.conj().T @ A).T
    for _ in range(steps):
        g = (a_ * ((p.conj()[:, None] * ATx + p[:, None] * TsAx) - 2 * (np.abs(p) ** 2)[:, None] * Ax)
             + (1 - a_) * (Mx - q[:, None] * Ax))
        Xn = X + eta[:, None] * (g @ Ap.T)
        fn, an, *_ = parts(Xn)
        Xn = renorm(Xn, an)
        ok = fn > f
        X = np.where(ok[:, None], Xn, X)
        eta = np.where(ok, eta * 1.5, eta * 0.5)
        f, a, p, q, Ax, ATx, Mx = parts(X)
        TsAx = X @ (T.conj().T @ A).T
    return float(math.sqrt(max(f.max(), 0.0)))
