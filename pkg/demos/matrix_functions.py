# Matrix functions as polynomials
#
# If M annihilates A then f(A) = R(A) where R is the remainder of f by M.
# The minimal polynomial gives the smallest such R.

import numpy as np
from numpy.linalg import norm

from remcalc import (
    ExpGerm,
    PolyGerm,
    RationalGerm,
    X,
    Poly,
    characteristic_polynomial,
    format_poly_expr,
    matrix_exp,
    matrix_function,
    minimal_polynomial,
)


def tidy(p, eps=1e-12):
    c = p.coeffs.copy()
    c.real[np.abs(c.real) < eps] = 0
    c.imag[np.abs(c.imag) < eps] = 0
    return Poly(c)


# A Jordan block: exp(tJ) has the t*exp(2t) term in the corner
J = np.array([[2.0, 1.0], [0.0, 2.0]])
t = 0.5
print(matrix_exp(t, J))
print("expected corner:", t * np.exp(2 * t))

# A derogatory matrix: diag(1, 1, 2) is killed by (X-1)(X-2), degree 2 not 3
A = np.diag([1.0, 1.0, 2.0])
cert = minimal_polynomial(A)
print("minimal:", format_poly_expr(tidy(cert.poly)), cert.kind)
print("characteristic:", format_poly_expr(characteristic_polynomial(A)))
print("residual", cert.residual_norm, "<=", cert.tolerance * cert.scale)

# A rotation generator: exp(theta K) is a rotation by theta
K = np.array([[0.0, -1.0], [1.0, 0.0]])
R = matrix_exp(np.pi / 3, K).real
print(np.round(R, 15))

# A random matrix, checked against a plain Taylor series with squaring
rng = np.random.default_rng(0)
B = rng.normal(size=(5, 5)) / 2
E = matrix_exp(1.0, B)
S = np.eye(5)
term = np.eye(5)
small = B / 2**10
for k in range(1, 20):
    term = term @ small / k
    S = S + term
for _ in range(10):
    S = S @ S
print("relative difference:", norm(E - S) / norm(S))

# Any germ can be applied: the inverse via 1/X and a polynomial in A
inv = matrix_function(RationalGerm(Poly([1.0]), X), B)
print("|B inv(B) - I| =", norm(B @ inv - np.eye(5)))
p = PolyGerm(X**3 - 2 * X)
print("|p(B) - (B^3 - 2B)| =", norm(matrix_function(p, B) - (B @ B @ B - 2 * B)))

# Products of germs map to products of matrices
fg = matrix_function(ExpGerm(0.3) * p, B)
print("multiplicative:", norm(fg - matrix_exp(0.3, B) @ (B @ B @ B - 2 * B)))
