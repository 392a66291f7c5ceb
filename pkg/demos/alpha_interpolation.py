"""
Between the numerical radius and the operator seminorm
======================================================

The alpha-seminorm runs from ||T||_A at alpha = 0 to w_A(T) at alpha = 1.
It never exceeds the envelope sqrt(alpha w^2 + (1 - alpha)||T||^2), with
equality only when one vector attains both w_A and ||T||_A.
"""

import numpy as np

from asemi import (a_numerical_radius, a_operator_norm, alpha_seminorm_oracle, make_context,
                   random_ba_operator, random_positive)
from asemi.seminorms import alpha_seminorm_many

ctx = make_context(random_positive(4, rank_deficit=1, seed=3))
T = random_ba_operator(ctx, seed=4, null_coupling=True)

w = a_numerical_radius(ctx, T).value
N = a_operator_norm(ctx, T)
alphas = np.linspace(0, 1, 11)
norms = [e.value for e in alpha_seminorm_many(ctx, T, alphas)]

print(f"w_A = {w:.6f}   ||T||_A = {N:.6f}")
print(" alpha   seminorm   envelope    gap")
for a, n in zip(alphas, norms):
    env = np.sqrt(a * w * w + (1 - a) * N * N)
    print(f" {a:4.1f}   {n:.6f}   {env:.6f}   {env - n:.2e}")

# an independent brute-force estimate at one alpha
print("oracle at 0.5:", alpha_seminorm_oracle(ctx, T, 0.5, samples=20000).value,
      " main:", norms[5])

# a Jordan block never attains w and ||T|| together
J = np.array([[0, 0], [2, 0]], dtype=complex)
flat = make_context(np.eye(2))
print("2x2 shift at 0.64:", alpha_seminorm_many(flat, J, [0.64])[0].value, " (1/0.8 = 1.25)")
