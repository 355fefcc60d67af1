# Remainders from local data
#
# The remainder of f by D = c * prod (X - a)**m only depends on the first m
# Taylor coefficients of f at each root a.  We never run long division here.

import numpy as np

from remcalc import (
    X,
    ExpGerm,
    FactoredPoly,
    Poly,
    divrem_generalized,
    format_poly_expr,
    partial_fractions,
    poly_divrem_classical,
    serret_quotient,
    taylor_gauss_remainder,
)


def tidy(p, eps=1e-12):
    c = p.coeffs.copy()
    c.real[np.abs(c.real) < eps] = 0
    c.imag[np.abs(c.imag) < eps] = 0
    return Poly(c)


# X^5 divided by (X - 1)^2.  Only f(1) = 1 and f'(1) = 5 matter.
D = FactoredPoly(1.0, [(1.0, 2)])
res = divrem_generalized(X**5, D)
print("remainder:", format_poly_expr(res.remainder))
print("quotient: ", format_poly_expr(res.quotient))

# Same thing by schoolbook division, for comparison
q, r = poly_divrem_classical(X**5, D.expand())
print("classical:", format_poly_expr(r))

# A non-monic divisor with a complex root
D = FactoredPoly(3.0, [(0.5, 2), (2j, 1)])
f = Poly(np.arange(1.0, 9.0))
R = taylor_gauss_remainder(f, D)
_, r = poly_divrem_classical(f, D.expand())
print("max |R - r| =", np.max(np.abs(R.coeffs - r.coeffs)))

# Germs that are not polynomials work too: exp(t X) mod X^2 (X + 1) has
# coefficients that are functions of t.
D = FactoredPoly(1.0, [(0.0, 2), (-1.0, 1)])
for t in (0.0, 0.5, 1.0):
    print(f"t={t}:", format_poly_expr(tidy(taylor_gauss_remainder(ExpGerm(t), D))))

# Partial fractions of (2X + 1) / (X^2 (X - 3))
pf = partial_fractions(2 * X + 1, FactoredPoly(1.0, [(0.0, 2), (3.0, 1)]))
for part in pf.parts:
    print(f"pole {part.center.real:g}:", np.round(part.coeffs, 12))
x = 0.7
print("check:", pf(x), (2 * x + 1) / (x**2 * (x - 3)))

# The quotient can also come from a power series at the origin
P = X**6 + 2 * X + 5
print("serret quotient:", format_poly_expr(serret_quotient(P, X**2 + 1)))
