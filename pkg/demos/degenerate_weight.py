"""
Rank-deficient weights
======================

When A is singular, ||.||_A ignores null(A). Operators can carry arbitrary
mass on null(A) without changing any seminorm; everything is read off the
compressed matrix on range(A).
"""

import numpy as np

from asemi import a_adjoint, a_operator_norm, alpha_seminorm, compress, make_context, random_positive
from asemi.errors import NotInBA

A = random_positive(4, rank_deficit=2, seed=0)
ctx = make_context(A)
print("rank(A) =", ctx.rank)

rng = np.random.default_rng(1)
B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
T = ctx.embed(B)

# adding (I - P_A) X changes T but not its compression
X = rng.standard_normal((4, 4))
T2 = T + (np.eye(4) - ctx.proj) @ X
print("same compression:", np.allclose(compress(ctx, T), compress(ctx, T2)))
print("||T||_A  =", a_operator_norm(ctx, T), " ||T2||_A =", a_operator_norm(ctx, T2))
print("alpha=0.5:", alpha_seminorm(ctx, T, 0.5).value, alpha_seminorm(ctx, T2, 0.5).value)

# an operator mixing null(A) into range(A) has no A-adjoint
bad = ctx.proj @ X @ (np.eye(4) - ctx.proj)
try:
    a_adjoint(ctx, bad)
except NotInBA as exc:
    print("rejected:", exc)

# A = 0 is allowed; every seminorm vanishes
zero = make_context(np.zeros((3, 3)))
print("A = 0:", a_operator_norm(zero, np.eye(3)), alpha_seminorm(zero, np.eye(3), 0.3).value)
