"""Linear recurrences and constant-coefficient linear ODEs.

Both are solved through remainders: ``g_n(t)`` is the coefficient of
``X**n`` in the remainder of ``X**t`` (discrete case) or ``exp(t X)``
(continuous case) divided by ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from .crt import as_factored, taylor_gauss_remainder
from .errors import InputError
from .jets import ExpGerm, Jet, jet_invert, jet_of_poly
from .matrixfun import matrix_exp
from .poly import FactoredPoly, Poly, as_matrix, as_poly
from .quadrature import adaptive_gauss_legendre

__all__ = [
    "ExpPolyFunction",
    "SampledFunction",
    "RecurrenceProblem",
    "ODEProblem",
    "g_discrete",
    "remainder_table",
    "recurrence_solve",
    "g_continuous",
    "exp_remainder_functions",
    "exppoly_convolution",
    "ode_solve_collet",
    "ode_residual_check",
    "euler_solve",
]


# -- exponential polynomials -----------------------------------------------

def _int_monomial_exp(m: int, z: complex) -> complex:
    """``int_0^1 u**m exp(z u) du``."""
    if abs(z) <= 4.0:
        total = 0j
        term = 1 + 0j
        n = 0
        while True:
            contrib = term / (m + n + 1)
            total += contrib
            n += 1
            term *= z / n
            if abs(term) < 1e-18 * max(abs(total), 1e-300) and n > abs(z):
                return total
    acc = 0j
    fall = 1.0
    for ell in range(m + 1):
        acc += (-1) ** ell * fall / z ** (ell + 1)
        fall *= m - ell
    return np.exp(z) * acc - (-1) ** m * factorial(m) / z ** (m + 1)


def _int_power_exp(m: int, beta: complex, t):
    """``int_0^t x**m exp(beta x) dx`` for scalar or array ``t``."""
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    out = np.array([tt ** (m + 1) * _int_monomial_exp(m, beta * tt) for tt in flat], dtype=complex)
    return out.reshape(t.shape)[()] if t.ndim == 0 else out.reshape(t.shape)


@dataclass(frozen=True)
class ExpPolyFunction:
    """``f(t) = sum c * t**k * exp(lam * t)`` over ``terms = ((c, k, lam), ...)``."""

    terms: tuple[tuple[complex, int, complex], ...] = ()

    def __post_init__(self):
        merged: dict[tuple[int, complex], complex] = {}
        for c, k, lam in self.terms:
            if int(k) != k or k < 0:
                raise InputError(f"power must be a nonnegative integer, got {k!r}")
            key = (int(k), complex(lam))
            merged[key] = merged.get(key, 0j) + complex(c)
        terms = tuple((c, k, lam) for (k, lam), c in merged.items() if c != 0)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def constant(cls, c: complex) -> "ExpPolyFunction":
        return cls(((c, 0, 0),))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for c, k, lam in self.terms:
            out = out + c * t**k * np.exp(lam * t)
        return out[()] if out.ndim == 0 else out

    def __add__(self, other: "ExpPolyFunction") -> "ExpPolyFunction":
        return ExpPolyFunction(self.terms + other.terms)

    def __neg__(self) -> "ExpPolyFunction":
        return self.scale(-1)

    def __sub__(self, other: "ExpPolyFunction") -> "ExpPolyFunction":
        return self + (-other)

    def scale(self, s: complex) -> "ExpPolyFunction":
        return ExpPolyFunction(tuple((c * s, k, lam) for c, k, lam in self.terms))

    def __mul__(self, other):
        if isinstance(other, ExpPolyFunction):
            return ExpPolyFunction(
                tuple(
                    (c1 * c2, k1 + k2, l1 + l2)
                    for c1, k1, l1 in self.terms
                    for c2, k2, l2 in other.terms
                )
            )
        return self.scale(other)

    __rmul__ = __mul__

    def derivative(self) -> "ExpPolyFunction":
        out = []
        for c, k, lam in self.terms:
            if lam != 0:
                out.append((c * lam, k, lam))
            if k:
                out.append((c * k, k - 1, lam))
        return ExpPolyFunction(tuple(out))

    def antiderivative(self) -> "ExpPolyFunction":
        """A primitive (not normalized to vanish at 0)."""
        out = []
        for c, k, lam in self.terms:
            if lam == 0:
                out.append((c / (k + 1), k + 1, 0))
                continue
            fall = 1.0
            for j in range(k + 1):
                out.append(((-1) ** j * c * fall / lam ** (j + 1), k - j, lam))
                fall *= k - j
        return ExpPolyFunction(tuple(out))

    def integral(self, a: float, b: float) -> complex:
        """Exact ``int_a^b f``."""
        return complex(self.integral_from_zero(b) - self.integral_from_zero(a))

    def integral_from_zero(self, t):
        total = 0
        for c, k, lam in self.terms:
            total = total + c * _int_power_exp(k, lam, t)
        return total


def exppoly_convolution(g: ExpPolyFunction, f: ExpPolyFunction, t):
    """Exact ``int_0^t g(t - x) f(x) dx``."""
    t = np.asarray(t, dtype=float)
    total = np.zeros(t.shape, dtype=complex)
    for cg, j, a in g.terms:
        for cf, k, lam in f.terms:
            inner = np.zeros(t.shape, dtype=complex)
            for i in range(j + 1):
                inner = inner + comb(j, i) * (-1) ** i * t ** (j - i) * _int_power_exp(i + k, lam - a, t)
            total = total + cg * cf * np.exp(a * t) * inner
    return total[()] if total.ndim == 0 else total


class SampledFunction:
    """Piecewise linear interpolation of tabulated complex values."""

    def __init__(self, times, values):
        times = np.asarray(times, dtype=float).ravel()
        values = np.asarray(values, dtype=complex).ravel()
        if times.size < 2 or times.size != values.size:
            raise InputError("sampled forcing needs at least two (time, value) pairs of equal count")
        if np.any(np.diff(times) <= 0):
            raise InputError("sample times must be strictly increasing")
        self.times = times
        self.values = values

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < self.times[0]) or np.any(t > self.times[-1]):
            raise InputError("forcing evaluated outside its sampled range")
        out = np.interp(t, self.times, self.values.real) + 1j * np.interp(t, self.times, self.values.imag)
        return out[()] if out.ndim == 0 else out


# -- problems --------------------------------------------------------------

def _monic(D) -> Poly:
    D = as_poly(D)
    if D.degree is None or D.degree < 1:
        raise InputError("D must have degree >= 1")
    if D.leading != 1:
        raise InputError("D must be monic", code="not_monic")
    return D


@dataclass(frozen=True)
class RecurrenceProblem:
    """``D(shift) y = f`` with ``y_n = initials[n]`` for ``n < deg D``.

    ``forcing=None`` is the homogeneous equation; otherwise ``forcing`` lists
    ``f_0, f_1, ...`` and must be long enough for the requested horizon.
    """

    D: Poly
    initials: tuple[complex, ...]
    forcing: tuple[complex, ...] | None = None

    def __post_init__(self):
        D = _monic(self.D)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "initials", tuple(complex(c) for c in self.initials))
        if self.forcing is not None:
            object.__setattr__(self, "forcing", tuple(complex(c) for c in self.forcing))
        if len(self.initials) != D.degree:
            raise InputError(f"expected {D.degree} initial values, got {len(self.initials)}")


@dataclass(frozen=True)
class ODEProblem:
    """``D(d/dt) y = forcing(t)`` with ``y^(n)(0) = initials[n]``.

    ``D`` may be given factored to bypass root finding.  ``forcing`` is an
    :class:`ExpPolyFunction`, a :class:`SampledFunction`, any callable, or
    ``None`` for the homogeneous equation.
    """

    D: Poly | FactoredPoly
    initials: tuple[complex, ...]
    forcing: ExpPolyFunction | SampledFunction | Callable | None = None
    factored: FactoredPoly = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.D, FactoredPoly):
            if self.D.leading != 1:
                raise InputError("D must be monic", code="not_monic")
            fp = self.D
            object.__setattr__(self, "D", fp.expand())
        else:
            object.__setattr__(self, "D", _monic(self.D))
            fp = None
        object.__setattr__(self, "initials", tuple(complex(c) for c in self.initials))
        if len(self.initials) != self.D.degree:
            raise InputError(f"expected {self.D.degree} initial values, got {len(self.initials)}")
        object.__setattr__(self, "factored", fp if fp is not None else as_factored(self.D))

    @property
    def order(self) -> int:
        return self.D.degree


# -- recurrences -----------------------------------------------------------

def _reduce_monic(c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """``c mod d`` for monic ``d`` given as full coefficient arrays."""
    q = d.size - 1
    r = c.astype(complex).copy()
    for k in range(r.size - 1, q - 1, -1):
        coef = r[k]
        if coef != 0:
            r[k - q : k + 1] -= coef * d
    out = np.zeros(q, dtype=complex)
    n = min(q, r.size)
    out[:n] = r[:n]
    return out


def g_discrete(t: int, D) -> Poly:
    """``X**t mod D`` by square-and-multiply."""
    D = _monic(D)
    if t < 0 or int(t) != t:
        raise InputError("t must be a nonnegative integer")
    d = D.coeffs
    result = _reduce_monic(np.array([1.0 + 0j]), d)
    base = _reduce_monic(np.array([0.0, 1.0 + 0j]), d)
    t = int(t)
    while t:
        if t & 1:
            result = _reduce_monic(np.convolve(result, base), d)
        t >>= 1
        if t:
            base = _reduce_monic(np.convolve(base, base), d)
    return Poly(result)


def remainder_table(T: int, D) -> np.ndarray:
    """Rows ``X**s mod D`` for ``s = 0..T`` as padded coefficient vectors."""
    D = _monic(D)
    d = D.coeffs
    q = D.degree
    G = np.zeros((T + 1, q), dtype=complex)
    row = _reduce_monic(np.array([1.0 + 0j]), d)
    for s in range(T + 1):
        G[s] = row
        top = row[q - 1]
        row = np.concatenate(([0], row[:-1])) - top * d[:q]
    return G


def recurrence_solve(prob: RecurrenceProblem, T: int) -> np.ndarray:
    """``y_0..y_T`` from the closed form

        y_t = sum_n c_n g_n(t) + sum_{k<t} g_{q-1}(t-1-k) f_k   (t >= q).
    """
    q = prob.D.degree
    if T < 0:
        raise InputError("T must be nonnegative")
    forcing = prob.forcing
    if forcing is not None and T - q + 1 > len(forcing):
        raise InputError(
            f"insufficient forcing data: y_{T} needs f_0..f_{T - q}, got {len(forcing)} values",
            code="insufficient_forcing",
        )
    G = remainder_table(T, prob.D)
    c = np.array(prob.initials, dtype=complex)
    y = G @ c
    if forcing and T >= 1:
        f = np.zeros(T, dtype=complex)
        m = min(len(forcing), T)
        f[:m] = forcing[:m]
        conv = np.convolve(G[:T, q - 1], f[:T])[:T]
        y[1:] += conv
    return y


# -- differential equations ------------------------------------------------

def g_continuous(t: float, D) -> Poly:
    """Remainder of ``exp(t X)`` divided by ``D``; coefficient ``n`` is ``g_n(t)``."""
    if not isinstance(D, FactoredPoly):
        D = as_factored(_monic(D))
    return taylor_gauss_remainder(ExpGerm(t), D)


def exp_remainder_functions(D) -> list[ExpPolyFunction]:
    """``[g_0, ..., g_{q-1}]`` as exact exponential polynomials in ``t``.

    The development of ``exp(t X) (X - a)**mu / D`` at ``a`` is
    ``exp(a t) sum_j t**j / j! (X - a)**j`` times that of ``(X - a)**mu / D``,
    so each ``g_n`` is a combination of ``t**j exp(a t)``.
    """
    if not isinstance(D, FactoredPoly):
        D = as_factored(_monic(D))
    q = D.degree
    terms: list[list] = [[] for _ in range(q)]
    for a, mu in D.factors:
        cof = D.cofactor(a)
        h = jet_invert(jet_of_poly(cof, a, mu - 1)).coeffs
        for j in range(mu):
            local = np.zeros(mu, dtype=complex)
            local[j:] = h[: mu - j]
            shifted = _from_taylor(local, a) * cof
            coeffs = shifted.padded(q)
            for n in range(q):
                if coeffs[n] != 0:
                    terms[n].append((coeffs[n] / factorial(j), j, a))
    return [ExpPolyFunction(tuple(ts)) for ts in terms]


def _from_taylor(local: np.ndarray, a: complex) -> Poly:
    return Jet(a, local).to_poly()


def _collet_integrand(g_last: ExpPolyFunction, forcing, t: float):
    def integrand(x):
        return g_last(t - x) * np.asarray(forcing(x), dtype=complex)

    return integrand


def ode_solve_collet(
    prob: ODEProblem,
    t,
    method: str = "auto",
    rtol: float = 1e-10,
    max_depth: int = 40,
):
    """Solution ``y(t)`` of ``D(d/dt) y = f`` from the remainder of ``exp(t X)``.

    ``y(t) = sum_n y_n g_n(t) + int_0^t g_{q-1}(t - x) f(x) dx``.

    The convolution is exact for exponential-polynomial forcing unless
    ``method="quadrature"``; other forcings always use adaptive quadrature.
    ``t`` may be a scalar or an array of times.
    """
    if method not in ("auto", "exact", "quadrature"):
        raise InputError(f"unknown method {method!r}")
    D = prob.factored
    q = prob.order
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    y0 = np.array(prob.initials, dtype=complex)
    out = np.empty(ts.shape, dtype=complex)
    for idx, tt in np.ndenumerate(ts):
        out[idx] = np.dot(g_continuous(float(tt), D).padded(q), y0)

    f = prob.forcing
    if f is not None:
        g_last = exp_remainder_functions(D)[q - 1]
        exact = isinstance(f, ExpPolyFunction) and method != "quadrature"
        if method == "exact" and not exact:
            raise InputError("exact convolution needs an exponential-polynomial forcing")
        if exact:
            out = out + exppoly_convolution(g_last, f, ts)
        else:
            breaks = tuple(f.times) if isinstance(f, SampledFunction) else ()
            for idx, tt in np.ndenumerate(ts):
                out[idx] += adaptive_gauss_legendre(
                    _collet_integrand(g_last, f, float(tt)),
                    0.0,
                    float(tt),
                    rtol=rtol,
                    max_depth=max_depth,
                    breakpoints=breaks,
                )
    return out[0] if np.ndim(t) == 0 else out.reshape(np.shape(t))


def _central_weights(k: int, r: int) -> np.ndarray:
    """Weights for the k-th derivative on offsets -r..r (unit spacing)."""
    offsets = np.arange(-r, r + 1, dtype=float)
    V = np.vander(offsets, increasing=True).T
    rhs = np.zeros(2 * r + 1)
    rhs[k] = factorial(k)
    return np.linalg.solve(V, rhs)


def ode_residual_check(prob: ODEProblem, solution, grid, h: float | None = None) -> float:
    """Max over the grid of ``|D(d/dt) y - f|`` by central differences.

    ``solution`` is either a callable ``y(t)`` (derivatives use step ``h``
    around each grid point) or an array of values on the uniform ``grid``
    (derivatives use the grid spacing; only interior points are checked).
    The stencils have ``2r + 1`` points with ``r = q // 2 + 3`` (sixth order
    accurate).  The default step ``1e-13**(1 / (2r + 1))`` balances truncation
    against a noise floor of about 1e-13 in the sampled solution, which the
    order-``q`` difference amplifies by ``h**-q``.
    """
    q = prob.order
    r = q // 2 + 3
    d = prob.D.coeffs
    grid = np.asarray(grid, dtype=float).ravel()
    weights = [_central_weights(k, r) for k in range(q + 1)]
    f = prob.forcing
    if callable(solution):
        if h is None:
            h = 1e-13 ** (1.0 / (2 * r + 1))
        if h <= 0:
            raise InputError("step must be positive")
        offsets = np.arange(-r, r + 1) * h
        samples = np.array([np.asarray(solution(tt + offsets), dtype=complex) for tt in grid])
        points = grid
        step = h
    else:
        values = np.asarray(solution, dtype=complex).ravel()
        if values.size != grid.size:
            raise InputError("solution samples and grid differ in length")
        if grid.size < 2 * r + 1:
            raise InputError(
                f"grid too coarse for order {q}: need at least {2 * r + 1} points",
                code="grid_too_coarse",
            )
        step = float(grid[1] - grid[0])
        if not np.allclose(np.diff(grid), step, rtol=1e-9, atol=0):
            raise InputError("sampled solution needs a uniform grid")
        samples = np.lib.stride_tricks.sliding_window_view(values, 2 * r + 1)
        points = grid[r:-r]
    lhs = np.zeros(points.shape, dtype=complex)
    for k in range(q + 1):
        lhs = lhs + d[k] * (samples @ weights[k]) / step**k
    rhs = np.zeros(points.shape, dtype=complex) if f is None else np.asarray(f(points), dtype=complex)
    return float(np.max(np.abs(lhs - rhs), initial=0.0))


def euler_solve(
    hcoeffs: Sequence[ExpPolyFunction],
    A,
    y0,
    f: Sequence[ExpPolyFunction] | None,
    t: float,
    rtol: float = 1e-10,
    max_depth: int = 40,
    tol: float = 1e-8,
):
    """Solve ``y' + h(t, A) y = f(t)``, ``y(0) = y0``, with ``h(t, A) = sum_j h_j(t) A**j``.

    Each ``exp(int_t^v h(u, A) du)`` is a matrix exponential of an explicit
    polynomial in ``A``; the outer integral uses adaptive quadrature.
    """
    A = as_matrix(A)
    q = A.shape[0]
    y0 = np.asarray(y0, dtype=complex).ravel()
    if y0.size != q:
        raise InputError(f"y0 has length {y0.size}, matrix order is {q}")
    prims = [h.antiderivative() for h in hcoeffs]
    powers = [np.eye(q, dtype=complex)]
    for _ in range(1, len(prims)):
        powers.append(powers[-1] @ A)
    at_t = [complex(P(t)) for P in prims]

    def propagator(v):
        M = np.zeros((q, q), dtype=complex)
        for P, Pt, Aj in zip(prims, at_t, powers):
            M += (complex(P(v)) - Pt) * Aj
        return matrix_exp(1.0, M, tol=tol)

    y = propagator(0.0) @ y0
    if f is not None:
        if len(f) != q:
            raise InputError(f"forcing has {len(f)} components, matrix order is {q}")

        def integrand(v):
            fv = np.array([complex(fi(v)) for fi in f])
            return propagator(float(v)) @ fv

        y = y + adaptive_gauss_legendre(integrand, 0.0, float(t), rtol=rtol, max_depth=max_depth, vectorized=False)
    return y
