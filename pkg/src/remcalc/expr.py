"""Polynomial expressions: a small recursive-descent parser and its inverse.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | NUMBER "i" | "i" | "X" | "t" | "(" expr ")"

``t`` must be bound to a number by the caller.  Errors report the byte
offset of the offending character.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import InputError
from .poly import Poly

__all__ = ["parse_poly_expr", "format_poly_expr", "format_complex", "ExprSyntaxError"]

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


class ExprSyntaxError(InputError):
    code = "syntax_error"

    def __init__(self, message, text, pos):
        self.offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at offset {self.offset}")


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)


def _add(a: np.ndarray, b: np.ndarray, sign: float = 1.0) -> np.ndarray:
    out = np.zeros(max(a.size, b.size), dtype=complex)
    out[: a.size] += a
    out[: b.size] += sign * b
    return out


class _Parser:
    def __init__(self, text: str, t: float | None):
        self.text = text
        self.pos = 0
        self.t = t

    def error(self, message, pos=None):
        raise ExprSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> np.ndarray:
        if not self.peek():
            self.error("empty expression")
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            value = _add(value, self.term(), 1.0 if op == "+" else -1.0)
        return value

    def term(self):
        value = self.unary()
        while self.peek() == "*":
            self.pos += 1
            value = _mul(value, self.unary())
        return value

    def unary(self):
        c = self.peek()
        if c in ("+", "-") and c:
            self.pos += 1
            value = self.unary()
            return -value if c == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            m = _NUMBER.match(self.text, self.pos)
            if not m:
                self.error("expected a nonnegative integer exponent")
            if not m.group(0).isdigit():
                self.error("exponent must be a nonnegative integer", start)
            self.pos = m.end()
            n = int(m.group(0))
            out = np.array([1.0 + 0j])
            for _ in range(n):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        c = self.peek()
        if not c:
            self.error("unexpected end of expression")
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if c == "X":
            self.pos += 1
            return np.array([0.0, 1.0], dtype=complex)
        if c == "t":
            if self.t is None:
                self.error("t is not bound to a value")
            self.pos += 1
            return np.array([complex(self.t)])
        if c == "i":
            self.pos += 1
            return np.array([1j])
        m = _NUMBER.match(self.text, self.pos)
        if m:
            value = float(m.group(0))
            self.pos = m.end()
            if self.pos < len(self.text) and self.text[self.pos] == "i":
                self.pos += 1
                return np.array([complex(0.0, value)])
            return np.array([complex(value, 0.0)])
        self.error(f"unexpected {c!r}")


def parse_poly_expr(text: str, t: float | None = None) -> Poly:
    """Parse e.g. ``"(X-1)*(X-2)"`` or ``"X^2 - (1+2i)*X"`` into a :class:`Poly`."""
    return Poly(_Parser(text, t).parse())


def _fmt_real(x: float) -> str:
    return format(x, ".17g")


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _fmt_real(z.real)
    if z.real == 0:
        return _fmt_real(z.imag) + "i"
    sign = "-" if z.imag < 0 or (z.imag == 0 and str(z.imag)[0] == "-") else "+"
    return f"({_fmt_real(z.real)}{sign}{_fmt_real(abs(z.imag))}i)"


def format_poly_expr(p: Poly) -> str:
    """Inverse of :func:`parse_poly_expr`; coefficients carry 17 significant digits."""
    parts: list[str] = []
    for n in range(p.coeffs.size - 1, -1, -1):
        z = complex(p.coeffs[n])
        if z == 0:
            continue
        negative = (z.imag == 0 and z.real < 0) or (z.real == 0 and z.imag < 0)
        mag = -z if negative else z
        coeff = format_complex(mag)
        if z.imag == 0 or z.real == 0:
            if coeff.startswith("-"):
                coeff = f"({coeff})"
        if n == 0:
            body = coeff
        else:
            mono = "X" if n == 1 else f"X^{n}"
            body = mono if mag == 1 else f"{coeff}*{mono}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts) if parts else "0"
