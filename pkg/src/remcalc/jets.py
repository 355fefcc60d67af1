"""Truncated local expansions (jets) and the germs that produce them.

A :class:`Jet` is ``sum_{n <= order} c_n (X - a)**n``: one factor of the
product over all centers of the power series rings.  A germ is anything with
a ``jet_at(center, order)`` method; polynomials, rational fractions and the
exponential ``exp(t X)`` are provided, and germs combine with ``+`` and ``*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Protocol, runtime_checkable

import numpy as np

from .errors import InputError
from .poly import FactoredPoly, Poly, as_poly, taylor_coefficients

__all__ = [
    "Jet",
    "PrincipalPart",
    "JetOracle",
    "Germ",
    "PolyGerm",
    "RationalGerm",
    "ExpGerm",
    "as_germ",
    "jet_of_poly",
    "jet_mul",
    "jet_invert",
    "jet_of_exp",
    "jet_exp_times",
]


class Jet:
    """Order-``order`` development at ``center``; trailing zeros are kept."""

    __slots__ = ("center", "coeffs")

    def __init__(self, center: complex, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise InputError("a jet has at least one coefficient")
        c.flags.writeable = False
        self.center = complex(center)
        self.coeffs = c

    @classmethod
    def constant(cls, value: complex, center: complex, order: int) -> "Jet":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(center, c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> complex:
        return complex(self.coeffs[0])

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise InputError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.center, self.coeffs[: order + 1])

    def _check(self, other: "Jet"):
        if other.center != self.center:
            raise InputError(
                f"jets at different centers ({self.center} vs {other.center})",
                code="center_mismatch",
            )

    def __add__(self, other) -> "Jet":
        if isinstance(other, Number):
            other = Jet.constant(other, self.center, self.order)
        self._check(other)
        n = min(self.order, other.order) + 1
        return Jet(self.center, self.coeffs[:n] + other.coeffs[:n])

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(self.center, -self.coeffs)

    def __sub__(self, other) -> "Jet":
        return self + (-other)

    def __mul__(self, other) -> "Jet":
        if isinstance(other, Number):
            return Jet(self.center, self.coeffs * complex(other))
        return jet_mul(self, other)

    __rmul__ = __mul__

    def derivative(self) -> "Jet":
        """Coefficient shift ``(n+1) c_{n+1}``; the order drops by one."""
        if self.order == 0:
            raise InputError("derivative of an order 0 jet is undefined")
        return Jet(self.center, self.coeffs[1:] * np.arange(1, self.order + 1))

    def to_poly(self) -> Poly:
        """The truncated development as an ordinary polynomial in ``X``."""
        acc = np.zeros(1, dtype=complex)
        for coeff in self.coeffs[::-1]:
            nxt = np.zeros(acc.size + 1, dtype=complex)
            nxt[1:] += acc
            nxt[:-1] -= self.center * acc
            nxt[0] += coeff
            acc = nxt
        return Poly(acc)

    def allclose(self, other: "Jet", rtol: float = 1e-9, atol: float = 1e-12) -> bool:
        return (
            self.center == other.center
            and self.order == other.order
            and bool(np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        return (
            self.center == other.center
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def __hash__(self):
        return hash((self.center, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"Jet(center={self.center!r}, coeffs={self.coeffs.tolist()!r})"


@dataclass(frozen=True)
class PrincipalPart:
    """``sum_{k=1}^{order} coeffs[k-1] * (X - center)**(-k)``."""

    center: complex
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise InputError("a principal part has order >= 1")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __call__(self, x):
        w = 1.0 / (np.asarray(x, dtype=complex) - self.center)
        acc = np.zeros_like(w)
        for d in self.coeffs[::-1]:
            acc = (acc + d) * w
        return acc[()] if acc.ndim == 0 else acc


# -- primitive operations --------------------------------------------------

def jet_of_poly(p, a: complex, order: int) -> Jet:
    if order < 0:
        raise InputError("jet order must be nonnegative")
    p = as_poly(p)
    if p.is_zero:
        return Jet(a, np.zeros(order + 1))
    return Jet(a, taylor_coefficients(p.coeffs, complex(a), order))


def jet_mul(f: Jet, g: Jet) -> Jet:
    f._check(g)
    n = min(f.order, g.order) + 1
    return Jet(f.center, np.convolve(f.coeffs[:n], g.coeffs[:n])[:n])


def jet_invert(f: Jet) -> Jet:
    """Multiplicative inverse of a unit jet (nonzero value at the center)."""
    c = f.coeffs
    if c[0] == 0:
        raise InputError("not a unit at center", code="not_unit")
    g = np.zeros_like(c)
    g[0] = 1.0 / c[0]
    for n in range(1, c.size):
        g[n] = -np.dot(c[1 : n + 1], g[n - 1 :: -1]) / c[0]
    return Jet(f.center, g)


def jet_of_exp(t: float, a: complex, order: int) -> Jet:
    """Development of ``exp(t X)`` at ``a``: ``exp(a t) t**n / n!``."""
    if order < 0:
        raise InputError("jet order must be nonnegative")
    c = np.empty(order + 1, dtype=complex)
    c[0] = np.exp(complex(a) * t)
    for n in range(1, order + 1):
        c[n] = c[n - 1] * t / n
    return Jet(a, c)


def jet_exp_times(t: float, f: Jet) -> Jet:
    return jet_mul(jet_of_exp(t, f.center, f.order), f)


# -- germs -----------------------------------------------------------------

@runtime_checkable
class JetOracle(Protocol):
    def jet_at(self, a: complex, order: int) -> Jet: ...


class Germ:
    """Base class giving germs ring operations."""

    def jet_at(self, a: complex, order: int) -> Jet:
        raise NotImplementedError

    def __add__(self, other):
        return _SumGerm(self, as_germ(other))

    __radd__ = __add__

    def __mul__(self, other):
        return _ProductGerm(self, as_germ(other))

    __rmul__ = __mul__

    def __neg__(self):
        return _ProductGerm(self, PolyGerm(Poly([-1.0])))

    def __sub__(self, other):
        return self + (-as_germ(other))


class PolyGerm(Germ):
    def __init__(self, p):
        self.poly = as_poly(p)

    def jet_at(self, a, order):
        return jet_of_poly(self.poly, a, order)

    def __repr__(self):
        return f"PolyGerm({self.poly!r})"


class RationalGerm(Germ):
    """``num / den``, defined wherever ``den`` does not vanish."""

    def __init__(self, num, den):
        self.num = as_poly(num)
        self.den = as_poly(den)
        if self.den.is_zero:
            raise InputError("zero divisor", code="zero_divisor")

    def jet_at(self, a, order):
        d = jet_of_poly(self.den, a, order)
        if d.coeffs[0] == 0:
            raise InputError(f"rational germ is not defined at {a!r}", code="pole")
        return jet_mul(jet_of_poly(self.num, a, order), jet_invert(d))

    def __repr__(self):
        return f"RationalGerm({self.num!r}, {self.den!r})"


class ExpGerm(Germ):
    """``exp(t X)`` for a real (or complex) parameter ``t``."""

    def __init__(self, t: float = 1.0):
        self.t = t

    def jet_at(self, a, order):
        return jet_of_exp(self.t, a, order)

    def __repr__(self):
        return f"ExpGerm(t={self.t!r})"


class _SumGerm(Germ):
    def __init__(self, f, g):
        self.f, self.g = f, g

    def jet_at(self, a, order):
        return self.f.jet_at(a, order) + self.g.jet_at(a, order)


class _ProductGerm(Germ):
    def __init__(self, f, g):
        self.f, self.g = f, g

    def jet_at(self, a, order):
        return jet_mul(self.f.jet_at(a, order), self.g.jet_at(a, order))


def as_germ(f) -> JetOracle:
    if isinstance(f, JetOracle):
        return f
    if isinstance(f, (Poly, FactoredPoly, Number, list, tuple, np.ndarray)):
        return PolyGerm(f)
    raise InputError(f"cannot interpret {type(f).__name__} as a germ")
