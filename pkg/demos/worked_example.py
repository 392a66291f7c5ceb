"""
The weighted shift with a non-identity weight
=============================================

A 3x3 shift T and the weight A = diag(1, 1, 2). We compute the classical
A-seminorms, then compare the alpha-dependent upper bounds with the fixed
baselines they refine.
"""

import numpy as np

from asemi import a_adjoint, a_crawford, a_min_modulus, a_numerical_radius, a_operator_norm, make_context
from asemi.inequalities import Evaluator, TheoremId

T = np.array([[0, 0, 0], [2, 0, 0], [0, 1, 0]], dtype=complex)
ctx = make_context(np.diag([1.0, 1.0, 2.0]))

# the A-adjoint solves A X = T* A with range inside range(A)
op = a_adjoint(ctx, T)
print("T^#A =\n", op.adjoint.real)

print("||T||_A =", a_operator_norm(ctx, T))
print("w_A(T)  =", a_numerical_radius(ctx, T).value, "  sqrt(6)/2 =", np.sqrt(6) / 2)
print("c_A(T)  =", a_crawford(ctx, T).value)
print("m_A(T)  =", a_min_modulus(ctx, T))

# the Cartesian bound at a single alpha, against the alpha-free baseline
ev = Evaluator(ctx, T)
cart = ev.rhs_function(TheoremId.WA_MIN_ALPHA_CARTESIAN)
print("Cartesian RHS at 7/8:", float(cart(7 / 8)))
print("baseline 1/2||T#T + TT#||_A:", 0.5 * np.linalg.norm(ev.gram + ev.cogram, 2))

# minimising over alpha does better still
for th in (TheoremId.WA_MIN_ALPHA_CARTESIAN, TheoremId.WA_MIN_ALPHA_SQUARE, TheoremId.WA_MIN_ALPHA_FINAL):
    a_star, value = ev.minimize_over_alpha(th)
    print(f"{th}: alpha* = {a_star:.6f}, value = {value:.9f}, w_A^2 = {ev.t.w ** 2:.9f}")
