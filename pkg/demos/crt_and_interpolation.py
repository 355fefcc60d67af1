# Chinese remainders and interpolation
#
# C[X]/D splits into a product of jet spaces, one per root of D.  Projecting
# and lifting are inverse to each other, and interpolation is the special
# case of simple roots.

import numpy as np

from remcalc import (
    FactoredPoly,
    Jet,
    Poly,
    X,
    complete_homogeneous,
    crt_lift,
    crt_project,
    format_poly_expr,
    newton_interpolation,
    universal_remainder_xr,
)


def tidy(p, eps=1e-12):
    c = p.coeffs.copy()
    c.real[np.abs(c.real) < eps] = 0
    c.imag[np.abs(c.imag) < eps] = 0
    return Poly(c)


D = FactoredPoly(1.0, [(0.0, 2), (2.0, 1), (-1j, 1)])
P = X**3 - X + 3
jets = crt_project(P, D)
for j in jets:
    print(j.center, np.round(j.coeffs, 12))
print("lifted:", format_poly_expr(tidy(crt_lift(jets, D))))

# Prescribe local data and get the unique polynomial of degree < 4
wanted = [Jet(0.0, [1.0, 0.0]), Jet(2.0, [5.0]), Jet(-1j, [0.0])]
Q = crt_lift(wanted, D)
print("Q(0), Q'(0), Q(2), Q(-i):", Q(0.0), Q.derivative()(0.0), Q(2.0), Q(-1j))

# Newton form through the values of exp at three nodes
nodes = [0.0, 0.5, 1.0]
interp = newton_interpolation(np.exp, nodes)
print("divided differences:", np.round(interp.divided_differences.real, 12))
print("g(0.25) =", interp.poly(0.25).real, "exp(0.25) =", np.exp(0.25))

# X^r mod prod (X - a_i) has complete homogeneous sums as coefficients
a = [1.0, 2.0, 3.0]
print("X^5 mod (X-1)(X-2)(X-3):", format_poly_expr(universal_remainder_xr(5, a)))
# row j holds h_0..h_3 of the first j variables
print(complete_homogeneous(3, a).real)
