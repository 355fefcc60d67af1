"""JSON payload encodings shared by the command line and the test fixtures.

Complex numbers are ``[re, im]`` pairs (a bare real is also accepted on
input).  Polynomials are ascending lists of pairs; factored polynomials,
matrices, exponential polynomials and sampled functions use small objects.
Every float is written with 17 significant digits so that a decoded
document reproduces the in-memory values bit for bit.
"""

from __future__ import annotations

import json
import math
from numbers import Real

import numpy as np

from .dynamics import ExpPolyFunction, SampledFunction
from .errors import InputError, NumericalError
from .jets import Jet, PrincipalPart
from .poly import FactoredPoly, Poly

__all__ = [
    "encode_complex",
    "decode_complex",
    "encode_poly",
    "decode_poly",
    "encode_factored",
    "decode_factored",
    "encode_matrix",
    "decode_matrix",
    "encode_exppoly",
    "decode_exppoly",
    "encode_sampled",
    "decode_sampled",
    "encode_jet",
    "decode_jet",
    "encode_principal_part",
    "dumps",
]


def _real(x) -> float:
    if isinstance(x, bool) or not isinstance(x, Real):
        raise InputError(f"expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise InputError("numbers must be finite")
    return x


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(obj) -> complex:
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise InputError(f"complex pair must have two entries, got {obj!r}")
        return complex(_real(obj[0]), _real(obj[1]))
    return complex(_real(obj), 0.0)


def _decode_list(obj, what: str) -> list:
    if not isinstance(obj, list):
        raise InputError(f"{what} must be a JSON list")
    return obj


def _decode_object(obj, keys: set[str], what: str, optional: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be a JSON object")
    missing = keys - obj.keys()
    extra = obj.keys() - keys - optional
    if missing:
        raise InputError(f"{what} is missing {sorted(missing)}")
    if extra:
        raise InputError(f"{what} has unknown fields {sorted(extra)}")
    return obj


def encode_poly(p: Poly) -> list[list[float]]:
    return [encode_complex(c) for c in p.coeffs]


def decode_poly(obj) -> Poly:
    return Poly([decode_complex(c) for c in _decode_list(obj, "polynomial")])


def encode_factored(fp: FactoredPoly) -> dict:
    return {
        "leading": encode_complex(fp.leading),
        "factors": [{"root": encode_complex(r), "mult": m} for r, m in fp.factors],
    }


def decode_factored(obj) -> FactoredPoly:
    obj = _decode_object(obj, {"leading", "factors"}, "factored polynomial")
    factors = []
    for f in _decode_list(obj["factors"], "factors"):
        f = _decode_object(f, {"root", "mult"}, "factor")
        m = f["mult"]
        if isinstance(m, bool) or not isinstance(m, int):
            raise InputError(f"multiplicity must be an integer, got {m!r}")
        factors.append((decode_complex(f["root"]), m))
    return FactoredPoly(decode_complex(obj["leading"]), factors)


def encode_matrix(A) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"order": A.shape[0], "entries": [encode_complex(z) for z in A.ravel()]}


def decode_matrix(obj) -> np.ndarray:
    obj = _decode_object(obj, {"order", "entries"}, "matrix")
    q = obj["order"]
    if isinstance(q, bool) or not isinstance(q, int) or q < 1:
        raise InputError(f"matrix order must be a positive integer, got {q!r}")
    entries = _decode_list(obj["entries"], "matrix entries")
    if len(entries) != q * q:
        raise InputError(f"matrix of order {q} needs {q * q} entries, got {len(entries)}")
    return np.array([decode_complex(z) for z in entries], dtype=complex).reshape(q, q)


def encode_exppoly(f: ExpPolyFunction) -> list[dict]:
    return [{"c": encode_complex(c), "k": k, "lambda": encode_complex(lam)} for c, k, lam in f.terms]


def decode_exppoly(obj) -> ExpPolyFunction:
    terms = []
    for term in _decode_list(obj, "exponential polynomial"):
        term = _decode_object(term, {"c", "k", "lambda"}, "exponential-polynomial term")
        k = term["k"]
        if isinstance(k, bool) or not isinstance(k, int):
            raise InputError(f"power must be an integer, got {k!r}")
        terms.append((decode_complex(term["c"]), k, decode_complex(term["lambda"])))
    return ExpPolyFunction(tuple(terms))


def encode_sampled(f: SampledFunction) -> dict:
    return {"times": [float(t) for t in f.times], "values": [encode_complex(v) for v in f.values]}


def decode_sampled(obj) -> SampledFunction:
    obj = _decode_object(obj, {"times", "values"}, "sampled function")
    times = [_real(t) for t in _decode_list(obj["times"], "times")]
    values = [decode_complex(v) for v in _decode_list(obj["values"], "values")]
    return SampledFunction(times, values)


def encode_jet(j: Jet) -> dict:
    return {"center": encode_complex(j.center), "coeffs": [encode_complex(c) for c in j.coeffs]}


def decode_jet(obj) -> Jet:
    obj = _decode_object(obj, {"center", "coeffs"}, "jet")
    coeffs = [decode_complex(c) for c in _decode_list(obj["coeffs"], "jet coefficients")]
    return Jet(decode_complex(obj["center"]), coeffs)


def encode_principal_part(pp: PrincipalPart) -> dict:
    return {"center": encode_complex(pp.center), "coeffs": [encode_complex(c) for c in pp.coeffs]}


def _emit(obj, out: list[str], indent: int | None, level: int) -> None:
    if isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise NumericalError("result is not finite", code="non_finite")
        out.append(format(x, ".17g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        _emit_seq([(json.dumps(str(k)) + ": ", v) for k, v in obj.items()], "{}", out, indent, level)
    elif isinstance(obj, (list, tuple)):
        # numeric pairs stay on one line in the indented form
        flat = indent is not None and all(isinstance(v, (int, float)) for v in obj)
        _emit_seq([("", v) for v in obj], "[]", out, None if flat else indent, level)
    else:
        raise TypeError(f"cannot encode {type(obj).__name__}")


def _emit_seq(items, brackets: str, out: list[str], indent: int | None, level: int) -> None:
    out.append(brackets[0])
    for i, (prefix, value) in enumerate(items):
        if i:
            out.append(",")
            if indent is None:
                out.append(" ")
        if indent is not None:
            out.append("\n" + " " * (indent * (level + 1)))
        out.append(prefix)
        _emit(value, out, indent, level + 1)
    if indent is not None and items:
        out.append("\n" + " " * (indent * level))
    out.append(brackets[1])


def dumps(doc, indent: int | None = None) -> str:
    """JSON text with every float at 17 significant digits."""
    out: list[str] = []
    _emit(doc, out, indent, 0)
    return "".join(out)
