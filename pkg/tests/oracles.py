"""Reference computations that share no code with the package under test."""

from __future__ import annotations

from math import factorial

import numpy as np
from numpy.polynomial import polynomial as npoly


def long_division(f, d):
    """Classical quotient and remainder (ascending coefficient arrays)."""
    q, r = npoly.polydiv(np.asarray(f, dtype=complex), np.asarray(d, dtype=complex))
    return q, r


def expand(roots, mults, leading=1.0):
    rep = [r for r, m in zip(roots, mults) for _ in range(m)]
    return leading * npoly.polyfromroots(rep) if rep else np.array([leading], dtype=complex)


def two_root_remainder(coeffs, a, b):
    """``sum a_n X^n mod (X-a)(X-b)`` via ``s_n``, the sum of degree-n monomials in a, b."""
    coeffs = np.asarray(coeffs, dtype=complex)
    N = coeffs.size
    s = np.array([sum(a**i * b ** (n - i) for i in range(n + 1)) for n in range(max(N, 1))], dtype=complex)
    lin = sum(coeffs[n] * s[n - 1] for n in range(1, N))
    const = coeffs[0] - a * b * sum(coeffs[n] * s[n - 2] for n in range(2, N))
    return np.array([const, lin], dtype=complex)


def inverse_power_series(a, b, mu, order):
    """Taylor coefficients at ``a`` of ``(X - b)**-mu`` up to ``order`` (geometric series)."""
    n = np.arange(order + 1)
    base = (-1.0) ** n / (a - b) ** (n + 1)
    out = np.zeros(order + 1, dtype=complex)
    out[0] = 1.0
    for _ in range(mu):
        out = np.convolve(out, base)[: order + 1]
    return out


def companion(d):
    """``A e_j = e_{j+1}`` for ``j < q`` and ``A e_q = -a_0 e_1 - ... - a_{q-1} e_q``."""
    d = np.asarray(d, dtype=complex)
    d = d / d[-1]
    q = d.size - 1
    A = np.zeros((q, q), dtype=complex)
    for j in range(q - 1):
        A[j + 1, j] = 1.0
    A[:, q - 1] = -d[:q]
    return A


def iterate_recurrence(d, init, forcing, T):
    """Direct shift iteration of ``sum d_k y_{t+k} = f_t`` with monic ``d``."""
    d = np.asarray(d, dtype=complex)
    q = d.size - 1
    y = np.zeros(max(T + 1, q), dtype=complex)
    y[:q] = init
    for t in range(T + 1 - q):
        f = forcing[t] if forcing is not None else 0.0
        y[t + q] = f - np.dot(d[:q], y[t : t + q])
    return y[: T + 1]


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def iterated_integral_exp(lam, q, t):
    """``int_0^t (t-x)^(q-1)/(q-1)! exp(lam x) dx`` for ``lam != 0``."""
    t = np.asarray(t, dtype=float)
    head = sum((lam * t) ** n / factorial(n) for n in range(q))
    return (np.exp(lam * t) - head) / lam**q


def iterated_integral_power(k, q, t):
    """``int_0^t (t-x)^(q-1)/(q-1)! x^k dx``."""
    return factorial(k) * np.asarray(t, dtype=float) ** (k + q) / factorial(k + q)


def rel_err(x, ref):
    """Max-norm error of ``x`` relative to the max-norm of ``ref``."""
    x = np.asarray(x, dtype=complex).ravel()
    ref = np.asarray(ref, dtype=complex).ravel()
    n = max(x.size, ref.size)
    x = np.pad(x, (0, n - x.size))
    ref = np.pad(ref, (0, n - ref.size))
    scale = np.max(np.abs(ref), initial=0.0)
    err = np.max(np.abs(x - ref), initial=0.0)
    return err / scale if scale > 0 else err


def separated_roots(rng, n, sep=0.1, radius=1.5):
    """``n`` complex points in a disc with pairwise distance at least ``sep``."""
    roots: list[complex] = []
    while len(roots) < n:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius and all(abs(z - w) >= sep for w in roots):
            roots.append(z)
    return roots


def random_multiplicities(rng, total):
    """A random composition of ``total`` into positive parts."""
    parts = []
    left = total
    while left:
        m = int(rng.integers(1, left + 1))
        parts.append(m)
        left -= m
    return parts
