"""Dense complex polynomials, factored divisors, root finding, companions.

Coefficients are stored in ascending degree order.  Arithmetic runs on raw
arrays and canonicalizes only when a new :class:`Poly` is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from numbers import Number
from typing import Iterable

import numpy as np

from .errors import InputError, NumericalError

__all__ = [
    "Poly",
    "FactoredPoly",
    "X",
    "as_poly",
    "as_matrix",
    "poly_divrem_classical",
    "poly_from_factored",
    "find_roots",
    "companion_matrix",
    "taylor_coefficients",
    "CANON_RTOL",
]

CANON_RTOL = 1e-14
_EPS = np.finfo(float).eps


def _canonical(c: np.ndarray) -> np.ndarray:
    if c.size == 0:
        return c
    mags = np.abs(c)
    thresh = CANON_RTOL * mags.max()
    n = c.size
    while n > 0 and mags[n - 1] <= thresh:
        n -= 1
    return c[:n]


class Poly:
    """Immutable polynomial with complex coefficients.

    ``Poly([2, -3, 1])`` is ``X**2 - 3X + 2``.  The zero polynomial has an
    empty coefficient vector and ``degree`` equal to ``None``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray = ()):
        c = np.array(coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(c)):
            raise InputError("polynomial coefficients must be finite")
        c = _canonical(c).copy()
        c.flags.writeable = False
        self._c = c

    @classmethod
    def constant(cls, value: complex) -> "Poly":
        return cls([value])

    @classmethod
    def monomial(cls, n: int, coeff: complex = 1.0) -> "Poly":
        c = np.zeros(n + 1, dtype=complex)
        c[n] = coeff
        return cls(c)

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> "Poly":
        c = np.array([leading], dtype=complex)
        for r in roots:
            c = _mul_linear(c, r)
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int | None:
        return self._c.size - 1 if self._c.size else None

    @property
    def is_zero(self) -> bool:
        return self._c.size == 0

    @property
    def leading(self) -> complex:
        if self.is_zero:
            raise InputError("zero polynomial has no leading coefficient")
        return complex(self._c[-1])

    def padded(self, n: int) -> np.ndarray:
        """Coefficient vector zero-padded (or checked) to length ``n``."""
        if self._c.size > n:
            raise InputError(f"polynomial of degree {self.degree} does not fit in {n} coefficients")
        out = np.zeros(n, dtype=complex)
        out[: self._c.size] = self._c
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        acc = np.zeros_like(x)
        for coeff in self._c[::-1]:
            acc = acc * x + coeff
        return acc[()] if acc.ndim == 0 else acc

    def derivative(self, k: int = 1) -> "Poly":
        c = self._c
        for _ in range(k):
            if c.size <= 1:
                return Poly()
            c = c[1:] * np.arange(1, c.size)
        return Poly(c)

    def scale(self, s: complex) -> "Poly":
        return Poly(self._c * complex(s))

    def __neg__(self) -> "Poly":
        return Poly(-self._c)

    def __add__(self, other) -> "Poly":
        other = as_poly(other)
        return Poly(_add(self._c, other._c))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = as_poly(other)
        return Poly(_add(self._c, -other._c))

    def __rsub__(self, other) -> "Poly":
        return as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Number):
            return self.scale(other)
        other = as_poly(other)
        if self.is_zero or other.is_zero:
            return Poly()
        return Poly(np.convolve(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise InputError("negative polynomial power")
        out = Poly([1.0])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        return poly_divrem_classical(self, as_poly(other))

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, (Number, list, tuple, np.ndarray)):
            other = as_poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def allclose(self, other, rtol: float = 1e-9, atol: float = 0.0) -> bool:
        """Coefficient-wise comparison relative to the larger coefficient norm."""
        other = as_poly(other)
        n = max(self._c.size, other._c.size)
        a, b = self.padded(n), other.padded(n)
        scale = max(np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0))
        return bool(np.all(np.abs(a - b) <= atol + rtol * scale))

    def __repr__(self) -> str:
        return f"Poly({_fmt_coeffs(self._c)})"


def _fmt_coeffs(c):
    parts = []
    for z in c:
        z = complex(z)
        parts.append(repr(z.real) if z.imag == 0 else repr(z))
    return "[" + ", ".join(parts) + "]"


def _add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=complex)
    out[: a.size] += a
    out[: b.size] += b
    return out


def _mul_linear(c: np.ndarray, root: complex) -> np.ndarray:
    out = np.zeros(c.size + 1, dtype=complex)
    out[1:] += c
    out[:-1] -= root * c
    return out


X = Poly([0.0, 1.0])


def as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, FactoredPoly):
        return p.expand()
    if isinstance(p, Number):
        return Poly([p])
    return Poly(p)


def as_matrix(A) -> np.ndarray:
    """Validate and convert to a square, finite complex matrix."""
    A = np.array(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InputError(f"expected a nonempty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix entries must be finite")
    return A


def poly_divrem_classical(f: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Schoolbook long division ``f = d*q + r`` with ``deg r < deg d``."""
    f, d = as_poly(f), as_poly(d)
    if d.is_zero:
        raise InputError("zero divisor", code="zero_divisor")
    n, m = f.coeffs.size, d.coeffs.size
    if n < m:
        return Poly(), f
    r = f.coeffs.copy()
    q = np.zeros(n - m + 1, dtype=complex)
    lead = d.coeffs[-1]
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n - m, -1, -1):
            coef = r[k + m - 1] / lead
            q[k] = coef
            r[k : k + m] -= coef * d.coeffs
    if not (np.all(np.isfinite(q)) and np.all(np.isfinite(r))):
        raise NumericalError("long division overflowed", code="non_finite")
    return Poly(q), Poly(r[: m - 1])


@dataclass(frozen=True)
class FactoredPoly:
    """``leading * prod (X - root)**mult`` with pairwise distinct roots.

    Factors are kept sorted by (real part, imaginary part); exactly equal
    roots given twice are merged by summing multiplicities.
    """

    leading: complex
    factors: tuple[tuple[complex, int], ...]

    def __init__(self, leading: complex, factors: Iterable[tuple[complex, int]] = ()):
        leading = complex(leading)
        if leading == 0 or not np.isfinite(leading):
            raise InputError("leading coefficient must be finite and nonzero")
        merged: dict[complex, int] = {}
        for root, mult in factors:
            root = complex(root)
            if not np.isfinite(root):
                raise InputError("roots must be finite")
            if int(mult) != mult or mult < 1:
                raise InputError(f"multiplicity must be a positive integer, got {mult!r}")
            merged[root] = merged.get(root, 0) + int(mult)
        ordered = tuple(sorted(merged.items(), key=lambda rm: (rm[0].real, rm[0].imag)))
        object.__setattr__(self, "leading", leading)
        object.__setattr__(self, "factors", ordered)

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> "FactoredPoly":
        return cls(leading, [(r, 1) for r in roots])

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    @property
    def roots(self) -> list[complex]:
        return [r for r, _ in self.factors]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.factors]

    def multiplicity(self, a: complex) -> int:
        for r, m in self.factors:
            if r == a:
                return m
        return 0

    def index(self, a: complex) -> int:
        for i, (r, _) in enumerate(self.factors):
            if r == a:
                return i
        raise InputError(f"{a!r} is not a root of the divisor", code="not_a_root")

    def cofactor(self, a: complex) -> Poly:
        """Monic ``prod_{b != a} (X - b)**mult_b``."""
        self.index(a)
        c = np.array([1.0], dtype=complex)
        for b, m in self.factors:
            if b != a:
                for _ in range(m):
                    c = _mul_linear(c, b)
        return Poly(c)

    def expand(self) -> Poly:
        return poly_from_factored(self)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        out = np.full_like(x, self.leading)
        for r, m in self.factors:
            out = out * (x - r) ** m
        return out[()] if out.ndim == 0 else out


def poly_from_factored(fp: FactoredPoly) -> Poly:
    c = np.array([fp.leading], dtype=complex)
    for root, mult in fp.factors:
        for _ in range(mult):
            c = _mul_linear(c, root)
    return Poly(c)


# -- root finding -----------------------------------------------------------

def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for coeff in c[::-1]:
        acc = acc * z + coeff
    return acc


def _aberth(c: np.ndarray, maxiter: int) -> np.ndarray:
    """Simultaneous Aberth-Ehrlich iteration on a monic polynomial with c[0] != 0."""
    n = c.size - 1
    dc = c[1:] * np.arange(1, n + 1)
    absc = np.abs(c)
    center = -c[n - 1] / n
    shifted = np.abs(taylor_coefficients(c, center, n))
    radius = max(shifted[k] ** (1.0 / (n - k)) for k in range(n))
    if radius == 0:
        radius = 1.0
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = center + radius * np.exp(1j * angles)
    done = np.zeros(n, dtype=bool)
    for _ in range(maxiter):
        pz = _horner(c, z)
        scale = _horner(absc.astype(complex), np.abs(z).astype(complex)).real
        done |= np.abs(pz) <= 1e-13 * scale
        if done.all():
            return z
        dpz = _horner(dc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = dpz - pz * s
        bad = denom == 0
        denom[bad] = _EPS
        w = pz / denom
        w[done] = 0
        z = z - w
        if not np.all(np.isfinite(z)):
            break
    raise NumericalError("root finding failed", code="root_finding_failed")


def _horner_scalar(c, x):
    acc = 0j
    for coeff in c[::-1]:
        acc = acc * x + coeff
    return acc


def _taylor_coeffs(c: np.ndarray, a: complex, k: int) -> np.ndarray:
    """Coefficients of the k-th Taylor coefficient polynomial p^(k)/k! (ascending)."""
    n = c.size - 1
    if k > n:
        return np.zeros(1, dtype=complex)
    return np.array([comb(i, k) * c[i] for i in range(k, n + 1)], dtype=complex)


def taylor_coefficients(c: np.ndarray, a: complex, m: int) -> np.ndarray:
    """First ``m+1`` coefficients of ``c`` in powers of ``(X - a)``.

    Repeated synthetic division by ``X - a``; no factorials are formed.
    """
    work = c.astype(complex).copy()
    out = np.zeros(m + 1, dtype=complex)
    for k in range(m + 1):
        if work.size == 0:
            break
        acc = 0j
        quot = np.zeros(max(work.size - 1, 0), dtype=complex)
        for i in range(work.size - 1, -1, -1):
            acc = acc * a + work[i]
            if i > 0:
                quot[i - 1] = acc
        out[k] = acc
        work = quot
    return out


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        self.parent[self.find(i)] = self.find(j)


def _polish(c: np.ndarray, center: complex, m: int, radius: float) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    dm = _taylor_coeffs(c, 0, m - 1)
    ddm = dm[1:] * np.arange(1, dm.size)
    z = center
    best = abs(_horner_scalar(dm, z))
    for _ in range(8):
        d = _horner_scalar(ddm, z)
        if d == 0:
            break
        cand = z - _horner_scalar(dm, z) / d
        val = abs(_horner_scalar(dm, cand))
        if not val < best or abs(cand - center) > radius:
            break
        z, best = cand, val
    return z


def find_roots(p: Poly, cluster_tol: float = 1e-8, coeff_rtol: float | None = None) -> FactoredPoly:
    """Roots with multiplicities of a nonconstant polynomial.

    Approximations come from an Aberth-Ehrlich iteration.  Two approximations
    are merged into one multiple root when they lie closer than
    ``cluster_tol * (1 + max|root|)``, or when their rounding-error inclusion
    discs overlap, i.e. they cannot be told apart given coefficients known to
    relative accuracy ``coeff_rtol`` (default ``8 * eps * degree``).  Each
    merged cluster is replaced by its centroid, polished by Newton steps on
    the appropriate derivative.

    Raises :class:`NumericalError` if the iteration does not converge within
    200 steps or if the factorization does not reproduce ``p``.
    """
    p = as_poly(p)
    if p.degree is None or p.degree < 1:
        raise InputError("find_roots needs a polynomial of degree >= 1")
    lead = p.leading
    c = p.coeffs / lead
    nzero = int(np.argmax(c != 0))
    c = c[nzero:]
    n = c.size - 1
    if coeff_rtol is None:
        coeff_rtol = 8 * _EPS * max(p.degree, 1)

    real_input = not np.any(p.coeffs.imag)
    factors: list[tuple[complex, int]] = []
    if nzero:
        factors.append((0j, nzero))
    if n >= 1:
        z = _aberth(c, 200)
        rho = cluster_tol * (1.0 + np.abs(z).max())
        absc = np.abs(c)
        pz = _horner(c, z)
        noise = coeff_rtol * _horner(absc.astype(complex), np.abs(z).astype(complex)).real
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.abs(np.prod(diff, axis=1))
        with np.errstate(divide="ignore", invalid="ignore"):
            radii = n * (np.abs(pz) + noise) / denom
        radii = np.where(np.isfinite(radii), radii, np.inf)
        dsu = _DSU(n)
        dist = np.abs(z[:, None] - z[None, :])
        for i in range(n):
            for j in range(i + 1, n):
                if dist[i, j] < rho or dist[i, j] < radii[i] + radii[j]:
                    dsu.union(i, j)
        groups: dict[int, list[int]] = {}
        for i in range(n):
            groups.setdefault(dsu.find(i), []).append(i)
        for members in groups.values():
            m = len(members)
            pts = z[members]
            centroid = complex(pts.mean())
            spread = float(np.abs(pts - centroid).max()) + float(
                min(radii[members].min(), 1e3 * (1 + abs(centroid)))
            )
            root = _polish(c, centroid, m, max(spread, rho))
            if real_input and abs(root.imag) <= max(spread, 4 * _EPS * abs(root)):
                root = complex(root.real, 0.0)
            factors.append((root, m))

    fp = FactoredPoly(lead, factors)
    if fp.degree != p.degree:
        raise NumericalError("ill-conditioned factorization", code="ill_conditioned")
    rebuilt = fp.expand().padded(p.coeffs.size)
    if not np.all(np.abs(rebuilt - p.coeffs) <= 1e-6 * np.abs(p.coeffs).max()):
        raise NumericalError("ill-conditioned factorization", code="ill_conditioned")
    return fp


def companion_matrix(d: Poly) -> np.ndarray:
    """Matrix with ``A e_j = e_{j+1}`` for ``j < q`` and last column ``-a``.

    This is multiplication by ``X`` on ``C[X]/(d)`` in the monomial basis;
    the transposed (row) layout is ``companion_matrix(d).T``.
    """
    d = as_poly(d)
    if d.degree is None or d.degree < 1:
        raise InputError("companion matrix needs a polynomial of degree >= 1")
    if d.leading != 1:
        raise InputError("companion matrix needs a monic polynomial", code="not_monic")
    q = d.degree
    A = np.zeros((q, q), dtype=complex)
    A[np.arange(1, q), np.arange(q - 1)] = 1.0
    A[:, q - 1] = -d.coeffs[:q]
    return A
