"""Euclidean division of germs by polynomials and what follows from it.

The remainder of ``f`` divided by ``D = c * prod (X - a)**mu_a`` is

    R = sum_a  DL_a^{mu_a - 1}( f * (X - a)**mu_a / D ) * D / (X - a)**mu_a

where ``DL_a^m`` truncates the development at ``a`` to order ``m``.  Every
routine here (partial fractions, quotients, the residue maps of the Chinese
remainder isomorphism) evaluates one piece of that sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InputError, NumericalError
from .jets import (
    Jet,
    JetOracle,
    PolyGerm,
    PrincipalPart,
    as_germ,
    jet_invert,
    jet_mul,
    jet_of_poly,
)
from .poly import FactoredPoly, Poly, as_poly, find_roots, poly_divrem_classical

__all__ = [
    "DivisionResult",
    "PFDecomposition",
    "NewtonInterpolation",
    "as_factored",
    "taylor_gauss_remainder",
    "divrem_generalized",
    "partial_fractions",
    "serret_quotient",
    "coeff_c_ak",
    "remainder_via_cak",
    "crt_project",
    "crt_lift",
    "newton_interpolation",
    "complete_homogeneous",
    "universal_remainder_xr",
]


def as_factored(D, cluster_tol: float = 1e-8) -> FactoredPoly:
    """Factored form of a divisor; expanded input goes through ``find_roots``."""
    if isinstance(D, FactoredPoly):
        return D
    D = as_poly(D)
    if D.is_zero:
        raise InputError("zero divisor", code="zero_divisor")
    if D.degree == 0:
        return FactoredPoly(D.leading, [])
    return find_roots(D, cluster_tol)


def _nonconstant(D, cluster_tol) -> FactoredPoly:
    D = as_factored(D, cluster_tol)
    if D.degree == 0:
        raise InputError("divisor must be nonconstant", code="constant_divisor")
    return D


def _local_factor(D: FactoredPoly, a: complex, mu: int) -> tuple[Poly, Jet]:
    """Monic cofactor ``D_a`` and the jet of ``1 / D_a`` at ``a`` to order ``mu - 1``."""
    cof = D.cofactor(a)
    return cof, jet_invert(jet_of_poly(cof, a, mu - 1))


def taylor_gauss_remainder(f, D, cluster_tol: float = 1e-8) -> Poly:
    """Remainder of the euclidean division of the germ ``f`` by ``D``.

    ``f`` may be a polynomial or any object with ``jet_at(center, order)``.
    ``D`` is preferably a :class:`FactoredPoly`; an expanded polynomial is
    factored with ``find_roots(D, cluster_tol)``.
    """
    f = as_germ(f)
    D = _nonconstant(D, cluster_tol)
    n = D.degree
    total = np.zeros(n, dtype=complex)
    for a, mu in D.factors:
        cof, inv = _local_factor(D, a, mu)
        local = jet_mul(f.jet_at(a, mu - 1), inv)
        total += (local.to_poly() * cof).padded(n)
    # the leading coefficient of D cancels between (X-a)^mu / D and D / (X-a)^mu
    return Poly(total)


@dataclass(frozen=True)
class DivisionResult:
    remainder: Poly
    quotient: Poly | None = None


def divrem_generalized(f, D, cluster_tol: float = 1e-8) -> DivisionResult:
    """Remainder for any germ; also the quotient when ``f`` is a polynomial."""
    poly_input = isinstance(f, (Poly, PolyGerm, list, tuple, np.ndarray, int, float, complex))
    D = _nonconstant(D, cluster_tol)
    R = taylor_gauss_remainder(f, D)
    if not poly_input:
        return DivisionResult(R)
    P = f.poly if isinstance(f, PolyGerm) else as_poly(f)
    q, rest = poly_divrem_classical(P - R, D.expand())
    scale = max(np.abs(P.coeffs).max(initial=0.0), np.abs(R.coeffs).max(initial=0.0))
    if np.abs(rest.coeffs).max(initial=0.0) > 1e-9 * scale:
        raise NumericalError("inconsistent remainder", code="inconsistent_remainder")
    return DivisionResult(R, q)


@dataclass(frozen=True)
class PFDecomposition:
    """``polynomial_part + sum(parts)``, one principal part per distinct pole."""

    polynomial_part: Poly
    parts: tuple[PrincipalPart, ...] = field(default_factory=tuple)

    def __call__(self, x):
        total = np.asarray(self.polynomial_part(x), dtype=complex)
        for part in self.parts:
            total = total + part(x)
        return total[()] if total.ndim == 0 else total

    def part_at(self, a: complex) -> PrincipalPart:
        for part in self.parts:
            if part.center == a:
                return part
        raise InputError(f"no pole at {a!r}", code="not_a_root")


def partial_fractions(P, D, cluster_tol: float = 1e-8) -> PFDecomposition:
    """Partial fraction decomposition of ``P / D``.

    At a pole ``a`` of multiplicity ``mu`` the principal part is read off the
    order ``mu - 1`` development of ``(X - a)**mu * P / D``.

    >>> pf = partial_fractions(Poly([1]), FactoredPoly(1, [(0, 1), (1, 1)]))
    >>> [p.coeffs for p in pf.parts]
    [((-1+0j),), ((1+0j),)]
    """
    P = as_poly(P)
    D = _nonconstant(D, cluster_tol)
    parts = []
    for a, mu in D.factors:
        _, inv = _local_factor(D, a, mu)
        local = jet_mul(jet_of_poly(P, a, mu - 1), inv).coeffs / D.leading
        parts.append(PrincipalPart(a, tuple(local[::-1])))
    quotient, _ = poly_divrem_classical(P, D.expand())
    return PFDecomposition(quotient, tuple(parts))


def serret_quotient(P, D) -> Poly:
    """Quotient of ``P`` by ``D`` from a power series at the origin.

    With ``q = deg P - deg D`` and coefficient reversal ``rev``, the order
    ``q`` development of ``rev(P) / rev(D)`` at 0 lists the quotient's
    coefficients from the top down.
    """
    P, D = as_poly(P), as_poly(D)
    if D.is_zero:
        raise InputError("zero divisor", code="zero_divisor")
    if D.degree < 1:
        raise InputError("divisor must be nonconstant", code="constant_divisor")
    if P.is_zero or P.degree < D.degree:
        raise InputError("quotient is zero", code="zero_quotient")
    q = P.degree - D.degree
    rev_p = Poly(P.coeffs[::-1])
    rev_d = Poly(D.coeffs[::-1])
    h = jet_mul(jet_of_poly(rev_p, 0, q), jet_invert(jet_of_poly(rev_d, 0, q)))
    return Poly(h.coeffs[::-1])


def _compositions(k: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``k``."""
    if parts == 0:
        if k == 0:
            yield ()
        return
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def coeff_c_ak(a: complex, k: int, D: FactoredPoly) -> complex:
    """Coefficient of ``(X - a)**k`` in ``DL_a^{mu_a - 1}((X - a)**mu_a / D)``.

    Closed form as a sum over multi-indices ``u`` on the other roots with
    ``|u| = k``:

        (-1)**k sum_u prod_b C(mu_b - 1 + u_b, mu_b - 1) / (a - b)**(mu_b + u_b)
    """
    if not isinstance(D, FactoredPoly):
        raise InputError("coeff_c_ak needs a factored divisor")
    mu_a = D.factors[D.index(a)][1]
    if not 0 <= k < mu_a:
        raise InputError(f"k must satisfy 0 <= k < {mu_a}, got {k}")
    others = [(b, m) for b, m in D.factors if b != a]
    total = 0j
    for u in _compositions(k, len(others)):
        term = 1 + 0j
        for (b, m), ub in zip(others, u):
            term *= comb(m - 1 + ub, m - 1) / (a - b) ** (m + ub)
        total += term
    return (-1) ** k * total / D.leading


def remainder_via_cak(f, D, cluster_tol: float = 1e-8) -> Poly:
    """Remainder assembled from the closed-form ``c_{a,k}`` coefficients.

    Independent of jet inversion; used to cross-check
    :func:`taylor_gauss_remainder`.
    """
    f = as_germ(f)
    D = _nonconstant(D, cluster_tol)
    n = D.degree
    total = np.zeros(n, dtype=complex)
    for a, mu in D.factors:
        c = np.array([coeff_c_ak(a, k, D) for k in range(mu)])
        fa = f.jet_at(a, mu - 1).coeffs
        local = np.zeros(mu, dtype=complex)
        for k in range(mu):
            for m in range(mu - k):
                local[k + m] += c[k] * fa[m]
        total += (Jet(a, local).to_poly() * D.cofactor(a)).padded(n)
    # c_{a,k} carries 1 / leading and D / (X - a)**mu is leading * cofactor
    return Poly(total * D.leading)


def crt_project(P, D, cluster_tol: float = 1e-8) -> list[Jet]:
    """Residues of ``P`` modulo each ``(X - a_i)**m_i`` in Taylor coordinates."""
    P = as_poly(P)
    D = _nonconstant(D, cluster_tol)
    return [jet_of_poly(P, a, m - 1) for a, m in D.factors]


def crt_lift(residues: Sequence[Jet], D, cluster_tol: float = 1e-8) -> Poly:
    """Polynomial of degree ``< deg D`` with the prescribed local residues.

    Inverse of :func:`crt_project`.  Residues may come in any order but must
    match the roots of ``D`` exactly, each with order ``m_i - 1``.
    """
    D = _nonconstant(D, cluster_tol)
    by_center = {}
    for jet in residues:
        if jet.center in by_center:
            raise InputError(f"two residues at {jet.center!r}", code="center_mismatch")
        by_center[jet.center] = jet
    if set(by_center) != set(D.roots):
        raise InputError("residue centers do not match the roots of the divisor", code="center_mismatch")
    n = D.degree
    total = np.zeros(n, dtype=complex)
    for a, m in D.factors:
        jet = by_center[a]
        if jet.order != m - 1:
            raise InputError(
                f"residue at {a!r} has order {jet.order}, expected {m - 1}", code="order_mismatch"
            )
        cof, inv = _local_factor(D, a, m)
        total += (jet_mul(jet, inv).to_poly() * cof).padded(n)
    _, r = poly_divrem_classical(Poly(total), D.expand())
    return r


class NewtonInterpolation(NamedTuple):
    poly: Poly
    divided_differences: np.ndarray


def newton_interpolation(f, nodes: Sequence[complex]) -> NewtonInterpolation:
    """Newton interpolation at pairwise distinct nodes.

    ``f`` is a sequence of values at the nodes, a callable, a polynomial or
    a germ.  Returns the interpolant in monomial form together with the
    divided differences ``f(a_1), f(a_1, a_2), ..., f(a_1, ..., a_k)``.
    """
    nodes = np.asarray(nodes, dtype=complex).ravel()
    k = nodes.size
    if k == 0:
        raise InputError("need at least one node")
    if np.unique(nodes).size != k:
        raise InputError("confluent nodes; use crt_lift", code="confluent_nodes")
    values = _values_at(f, nodes)
    table = values.copy()
    dd = np.empty(k, dtype=complex)
    dd[0] = table[0]
    for j in range(1, k):
        table[: k - j] = (table[1 : k - j + 1] - table[: k - j]) / (nodes[j:] - nodes[: k - j])
        dd[j] = table[0]
    acc = np.array([dd[-1]])
    for j in range(k - 2, -1, -1):
        acc = _times_linear(acc, nodes[j])
        acc[0] += dd[j]
    return NewtonInterpolation(Poly(acc), dd)


def _times_linear(c: np.ndarray, a: complex) -> np.ndarray:
    out = np.zeros(c.size + 1, dtype=complex)
    out[1:] += c
    out[:-1] -= a * c
    return out


def _values_at(f, nodes: np.ndarray) -> np.ndarray:
    if isinstance(f, Poly):
        return np.asarray(f(nodes), dtype=complex)
    if isinstance(f, JetOracle):
        return np.array([f.jet_at(a, 0).value for a in nodes])
    if callable(f):
        return np.array([complex(f(a)) for a in nodes])
    values = np.asarray(f, dtype=complex).ravel()
    if values.size != nodes.size:
        raise InputError(f"got {values.size} values for {nodes.size} nodes")
    return values


def complete_homogeneous(n_max: int, variables: Sequence[complex]) -> np.ndarray:
    """Table ``S[i, n] = s_n(a_1, ..., a_i)`` for ``0 <= i <= k``, ``0 <= n <= n_max``.

    Uses ``s_n(a_1..a_i) = s_n(a_1..a_{i-1}) + a_i s_{n-1}(a_1..a_i)``; no
    divisions.
    """
    variables = np.asarray(variables, dtype=complex).ravel()
    k = variables.size
    S = np.zeros((k + 1, n_max + 1), dtype=complex)
    S[0, 0] = 1.0
    for i in range(1, k + 1):
        a = variables[i - 1]
        S[i, 0] = 1.0
        for n in range(1, n_max + 1):
            S[i, n] = S[i - 1, n] + a * S[i, n - 1]
    return S


def universal_remainder_xr(r: int, nodes: Sequence[complex]) -> Poly:
    """Remainder of ``X**r`` divided by ``prod (X - a_i)``; nodes may repeat.

    Newton form ``sum_i s_{r-i+1}(a_1..a_i) (X - a_1)...(X - a_{i-1})``.
    """
    if r < 0:
        raise InputError("r must be nonnegative")
    nodes = np.asarray(nodes, dtype=complex).ravel()
    k = nodes.size
    if k == 0:
        raise InputError("need at least one node")
    S = complete_homogeneous(r, nodes)
    total = np.zeros(k, dtype=complex)
    basis = np.ones(1, dtype=complex)
    for i in range(1, k + 1):
        n = r - i + 1
        if n >= 0:
            total[: basis.size] += S[i, n] * basis
        basis = _times_linear(basis, nodes[i - 1])
    return Poly(total)
