"""Matrix functions ``f(A) := R(A)``, ``R`` the remainder of ``f`` by an annihilator.

The default annihilator is the minimal polynomial, found by shaving
multiplicities off the characteristic polynomial while the product
``prod (A - a I)**m_a`` still vanishes to tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .crt import taylor_gauss_remainder
from .errors import InputError, NumericalError
from .jets import ExpGerm
from .poly import FactoredPoly, Poly, as_matrix, as_poly, find_roots

__all__ = [
    "AnnihilatorCertificate",
    "poly_apply",
    "characteristic_polynomial",
    "minimal_polynomial",
    "matrix_function",
    "matrix_exp",
]

MAX_ORDER = 64


@dataclass(frozen=True)
class AnnihilatorCertificate:
    """A monic polynomial annihilating a matrix, with its measured residual.

    ``residual_norm`` is the Frobenius norm of ``poly(A)``; it was accepted
    against ``tolerance * scale`` where ``scale`` bounds the norm of the
    product of the linear factors.
    """

    poly: Poly
    kind: str
    residual_norm: float
    tolerance: float
    scale: float
    factored: FactoredPoly


def poly_apply(P, A) -> np.ndarray:
    """Horner evaluation of ``P`` at the square matrix ``A``."""
    P = as_poly(P)
    A = as_matrix(A)
    q = A.shape[0]
    out = np.zeros((q, q), dtype=complex)
    eye = np.eye(q, dtype=complex)
    for coeff in P.coeffs[::-1]:
        out = out @ A + coeff * eye
    return out


def characteristic_polynomial(A) -> Poly:
    """``det(X I - A)`` by the Faddeev-LeVerrier trace recursion."""
    A = as_matrix(A)
    q = A.shape[0]
    c = np.zeros(q + 1, dtype=complex)
    c[q] = 1.0
    eye = np.eye(q, dtype=complex)
    M = np.zeros((q, q), dtype=complex)
    for k in range(1, q + 1):
        M = A @ M + c[q - k + 1] * eye
        c[q - k] = -np.trace(A @ M) / k
    return Poly(c)


def _factored_residual(A: np.ndarray, factors) -> float:
    q = A.shape[0]
    eye = np.eye(q, dtype=complex)
    prod = eye
    for a, m in factors:
        shifted = A - a * eye
        for _ in range(m):
            prod = prod @ shifted
    return float(np.linalg.norm(prod))


def _factored_scale(A: np.ndarray, factors) -> float:
    nA = float(np.linalg.norm(A))
    s = 1.0
    for a, m in factors:
        s *= (nA + abs(a)) ** m
    return max(s, np.finfo(float).tiny)


def minimal_polynomial(A, tol: float = 1e-8, cluster_tol: float = 1e-8) -> AnnihilatorCertificate:
    A = as_matrix(A)
    if A.shape[0] > MAX_ORDER:
        raise InputError(f"matrix order {A.shape[0]} exceeds {MAX_ORDER}")
    char = characteristic_polynomial(A)

    def check(roots, ms):
        factors = list(zip(roots, ms))
        res = _factored_residual(A, factors)
        scale = _factored_scale(A, factors)
        return res, scale, res <= tol * scale

    # The distance rule is absolute at small spectral scale; if it merged
    # eigenvalues that are distinct relative to the matrix, fall back to
    # merging only what rounding cannot separate.
    for ctol in (cluster_tol, 0.0):
        fp = find_roots(char, ctol)
        roots = fp.roots
        mult = fp.multiplicities
        res, scale, ok = check(roots, mult)
        if ok:
            break
    else:
        raise NumericalError(
            f"annihilation check failed (residual {res:.3g}, scale {scale:.3g})",
            code="annihilation_failed",
        )
    for i in range(len(roots)):
        while mult[i] > 1:
            trial = mult.copy()
            trial[i] -= 1
            r, s, ok = check(roots, trial)
            if not ok:
                break
            mult, res, scale = trial, r, s
    factored = FactoredPoly(1.0, zip(roots, mult))
    return AnnihilatorCertificate(factored.expand(), "minimal", res, tol, scale, factored)


def _certify(A: np.ndarray, annihilator, tol: float, cluster_tol: float) -> AnnihilatorCertificate:
    if isinstance(annihilator, AnnihilatorCertificate):
        return annihilator
    if isinstance(annihilator, FactoredPoly):
        fp = FactoredPoly(1.0, annihilator.factors)
        res = _factored_residual(A, fp.factors)
        scale = _factored_scale(A, fp.factors)
        poly = fp.expand()
    else:
        P = as_poly(annihilator)
        if P.degree is None or P.degree < 1:
            raise InputError("annihilator must be nonconstant")
        poly = P.scale(1.0 / P.leading)
        res = float(np.linalg.norm(poly_apply(poly, A)))
        nA = float(np.linalg.norm(A))
        scale = max(float(np.sum(np.abs(poly.coeffs) * nA ** np.arange(poly.coeffs.size))), 1e-300)
        fp = None
    if res > tol * scale:
        raise NumericalError(
            f"supplied polynomial does not annihilate the matrix (residual {res:.3g})",
            code="annihilation_failed",
        )
    if fp is None:
        fp = find_roots(poly, cluster_tol)
    return AnnihilatorCertificate(poly, "user-supplied", res, tol, scale, fp)


def matrix_function(f, A, annihilator=None, tol: float = 1e-8, cluster_tol: float = 1e-8) -> np.ndarray:
    """``f(A)`` for a germ ``f``.

    ``annihilator`` may be a :class:`Poly`, :class:`FactoredPoly` or
    :class:`AnnihilatorCertificate`; the minimal polynomial is used when it is
    omitted.  The result does not depend on the choice.
    """
    A = as_matrix(A)
    if annihilator is None:
        cert = minimal_polynomial(A, tol, cluster_tol)
    else:
        cert = _certify(A, annihilator, tol, cluster_tol)
    R = taylor_gauss_remainder(f, cert.factored)
    return poly_apply(R, A)


def matrix_exp(t: float, A, annihilator=None, tol: float = 1e-8, cluster_tol: float = 1e-8) -> np.ndarray:
    """``exp(t A)`` as the remainder of ``exp(t X)`` evaluated at ``A``."""
    A = as_matrix(A)
    if t == 0:
        return np.eye(A.shape[0], dtype=complex)
    return matrix_function(ExpGerm(t), A, annihilator, tol, cluster_tol)
