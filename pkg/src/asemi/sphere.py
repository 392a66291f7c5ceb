"""Maximisation of the alpha-objective on the complex unit sphere.

For a k x k matrix B and weight alpha the objective is

    f(y) = alpha |<By, y>|^2 + (1 - alpha) ||By||^2,   ||y|| = 1,

whose supremum is the squared alpha-norm of B. Two independent routes are
provided: :func:`ascend` (batched Riemannian Newton with a projected-gradient
fallback, seeded from extreme points of the joint numerical range) and
:func:`sample_ascent` (dense random sampling plus plain projected gradient),
which serves as a brute-force verifier.
"""
from __future__ import annotations

import numpy as np


def alpha_objective(B, alpha, Y) -> np.ndarray:
    """f(y) for each row of Y; B is (k, k) or stacked (m, k, k)."""
    B = np.asarray(B, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    BY = Y @ B.T if B.ndim == 2 else np.einsum("mij,mj->mi", B, Y)
    z = np.einsum("mi,mi->m", Y.conj(), BY)
    v = np.einsum("mi,mi->m", BY.conj(), BY).real
    alpha = np.asarray(alpha, dtype=float)
    return alpha * np.abs(z) ** 2 + (1.0 - alpha) * v


def moments(B, Y) -> tuple[np.ndarray, np.ndarray]:
    """(<By, y>, ||By||^2) for each row of Y."""
    BY = np.asarray(Y) @ np.asarray(B).T
    return np.einsum("mi,mi->m", Y.conj(), BY), np.einsum("mi,mi->m", BY.conj(), BY).real


def pow2_normalize(B: np.ndarray, scale: float) -> np.ndarray:
    """B / 2^e with 2^(e-1) <= scale < 2^e; exact, and safe for subnormal scales."""
    e = int(np.frexp(scale)[1])
    return np.ldexp(B.real, -e) + 1j * np.ldexp(B.imag, -e)


def _realify(M: np.ndarray) -> np.ndarray:
    """Real 2k x 2k form of a Hermitian matrix: y* M y = x^T M_r x with x = (Re y, Im y)."""
    return np.block([[M.real, -M.imag], [M.imag, M.real]])


def _to_real(Y: np.ndarray) -> np.ndarray:
    return np.concatenate([Y.real, Y.imag], axis=1)


def _to_complex(X: np.ndarray) -> np.ndarray:
    k = X.shape[1] // 2
    return X[:, :k] + 1j * X[:, k:]


def extreme_candidates(B, n_theta: int = 48, n_psi: int = 13) -> np.ndarray:
    """Top eigenvectors of sin(psi) Re(e^{-i theta} B) + cos(psi) B*B / ||B||.

    The objective is convex in (Re<By,y>, Im<By,y>, ||By||^2), so its maximum
    over the (convex hull of the) joint numerical range of Re B, Im B and B*B
    sits at an extreme point; these directions expose such points. psi = 0
    gives the top right singular vector, psi = pi/2 the numerical-range
    boundary.
    """
    B = np.asarray(B, dtype=complex)
    k = B.shape[0]
    nb = np.linalg.norm(B, 2)
    if k == 0 or nb == 0.0:
        return np.eye(max(k, 1), dtype=complex)[:1, :k]
    B = pow2_normalize(B, nb)
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    psi = np.linspace(0.0, np.pi / 2, n_psi)
    H1 = (B + B.conj().T) / 2
    H2 = (B - B.conj().T) / 2j
    G = B.conj().T @ B
    c1 = np.outer(np.sin(psi), np.cos(theta)).ravel()
    c2 = np.outer(np.sin(psi), np.sin(theta)).ravel()
    c3 = np.repeat(np.cos(psi), n_theta)
    M = c1[:, None, None] * H1 + c2[:, None, None] * H2 + c3[:, None, None] * G
    _, U = np.linalg.eigh(M)
    return U[:, :, -1]


def _forms(B: np.ndarray):
    H1 = (B + B.conj().T) / 2
    H2 = (B - B.conj().T) / 2j
    return _realify(H1), _realify(H2), _realify(B.conj().T @ B)


def _eval(P, Q, R, a, X):
    Px, Qx, Rx = X @ P, X @ Q, X @ R
    p = np.einsum("mi,mi->m", X, Px)
    q = np.einsum("mi,mi->m", X, Qx)
    r = np.einsum("mi,mi->m", X, Rx)
    return a * (p * p + q * q) + (1.0 - a) * r, Px, Qx, Rx, p, q


def ascend(B, alphas, Y0, maxit: int = 500, rtol: float = 1e-12):
    """Batched monotone ascent of the alpha-objective from the rows of ``Y0``.

    ``alphas`` gives the weight for each row. Each iteration tries a
    Riemannian Newton step (the phase direction iy is projected out) when
    the Hessian yields an ascent direction, otherwise a projected gradient
    step whose length is adapted by backtracking. Iterates are renormalised.
    A row stops when its relative gain drops below ``rtol``, when no step
    improves it and its gradient is at round-off level, or after ``maxit``
    iterations.

    Returns ``(values, Y, iterations)``.
    """
    B = np.asarray(B, dtype=complex)
    X = _to_real(np.asarray(Y0, dtype=complex))
    X /= np.linalg.norm(X, axis=1)[:, None]
    a_all = np.asarray(alphas, dtype=float) * np.ones(len(X))
    m, d = X.shape
    k = d // 2
    P, Q, R = _forms(B)
    scale = max(np.linalg.norm(B, 2) ** 2, 1e-300)
    f_all, Px, Qx, Rx, p, q = _eval(P, Q, R, a_all, X)
    eta_all = np.full(m, 0.5 / scale)
    newton_all = np.ones(m, bool)
    active = np.arange(m)
    I = np.eye(d)
    it = 0
    while active.size and it < maxit:
        it += 1
        x, a, f = X[active], a_all[active], f_all[active]
        px, qx, rx, pp, qq = Px[active], Qx[active], Rx[active], p[active], q[active]
        eta, use_newton = eta_all[active], newton_all[active]
        a1 = a[:, None]
        g = a1 * (4 * pp[:, None] * px + 4 * qq[:, None] * qx) + 2 * (1 - a1) * rx
        lam = np.einsum("mi,mi->m", x, g)
        gr = g - lam[:, None] * x
        jx = np.concatenate([-x[:, k:], x[:, :k]], axis=1)
        a3 = a[:, None, None]
        Hs = (a3 * (8 * px[:, :, None] * px[:, None, :] + 4 * pp[:, None, None] * P
                    + 8 * qx[:, :, None] * qx[:, None, :] + 4 * qq[:, None, None] * Q)
              + 2 * (1 - a3) * R)
        Pi = I - x[:, :, None] * x[:, None, :] - jx[:, :, None] * jx[:, None, :]
        Hr = Pi @ (Hs - lam[:, None, None] * I) @ Pi - (I - Pi)
        try:
            dn = np.linalg.solve(Hr, -gr[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            dn = -np.einsum("mij,mj->mi", np.linalg.pinv(Hr), gr)
        newton = use_newton & (np.einsum("mi,mi->m", gr, dn) > 0)
        step = np.where(newton[:, None], dn, eta[:, None] * gr)
        xn = x + step
        xn /= np.linalg.norm(xn, axis=1)[:, None]
        fn, pxn, qxn, rxn, pn, qn = _eval(P, Q, R, a, xn)
        ok = fn > f
        gain = np.where(ok, (fn - f) / np.maximum(np.abs(fn), 1e-300), 0.0)

        X[active] = np.where(ok[:, None], xn, x)
        f_all[active] = np.where(ok, fn, f)
        Px[active] = np.where(ok[:, None], pxn, px)
        Qx[active] = np.where(ok[:, None], qxn, qx)
        Rx[active] = np.where(ok[:, None], rxn, rx)
        p[active] = np.where(ok, pn, pp)
        q[active] = np.where(ok, qn, qq)
        grad_step = ~newton
        eta_all[active] = np.where(grad_step, np.where(ok, eta * 2.0, eta * 0.5), eta)
        newton_all[active] = ok | grad_step

        gnorm = np.linalg.norm(gr, axis=1)
        stalled = ~ok & grad_step & ((gnorm <= 1e-7 * scale) | (eta_all[active] * scale < 1e-18))
        done = (ok & (gain < rtol)) | stalled
        active = active[~done]
    return f_all, _to_complex(X), it


def sample_ascent(B, alpha: float, samples: int, steps: int = 50, seed=None, batch: int = 20000):
    """Brute-force estimate of max f: Gaussian samples on the sphere, each
    polished by ``steps`` projected-gradient iterations with per-sample
    backtracking. Returns ``(best_value, best_vector)``.
    """
    B = np.asarray(B, dtype=complex)
    k = B.shape[0]
    rng = np.random.default_rng(seed)
    Bh = B.conj().T
    L = max(np.linalg.norm(B, 2) ** 2, 1e-300)
    best_val, best_vec = -np.inf, None
    remaining = samples
    while remaining > 0:
        m = min(batch, remaining)
        remaining -= m
        Y = rng.standard_normal((m, k)) + 1j * rng.standard_normal((m, k))
        Y /= np.linalg.norm(Y, axis=1)[:, None]
        f = alpha_objective(B, alpha, Y)
        eta = np.full(m, 1.0 / L)
        for _ in range(steps):
            BY = Y @ B.T
            z = np.einsum("mi,mi->m", Y.conj(), BY)
            grad = alpha * (z.conj()[:, None] * BY + z[:, None] * (Y @ Bh.T)) + (1 - alpha) * (BY @ Bh.T)
            grad -= np.einsum("mi,mi->m", Y.conj(), grad)[:, None] * Y
            Yn = Y + eta[:, None] * grad
            Yn /= np.linalg.norm(Yn, axis=1)[:, None]
            fn = alpha_objective(B, alpha, Yn)
            ok = fn > f
            Y = np.where(ok[:, None], Yn, Y)
            f = np.where(ok, fn, f)
            eta = np.where(ok, eta * 1.5, eta * 0.5)
        i = int(np.argmax(f))
        if f[i] > best_val:
            best_val, best_vec = float(f[i]), Y[i].copy()
    return best_val, best_vec
