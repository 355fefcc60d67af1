"""Command line front end.

Each subcommand calls exactly one library operation.  Payload flags take an
inline value, a path to a file holding it, or JSON text; polynomial flags
also take expressions such as ``"(X-1)^2*(X+3)"``.  Divisors given in
factored form (``{"leading": ..., "factors": [...]}``) skip root finding
and are the authoritative way to pass repeated roots.

The output is a JSON document on stdout (``--pretty`` prints a readable
summary instead).  Exit status is 0 on success, 1 for invalid input and 2
when a computation fails its accuracy check; failures print
``{"error": {"code": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import crt, dynamics, matrixfun
from .encoding import (
    decode_complex,
    decode_exppoly,
    decode_factored,
    decode_jet,
    decode_matrix,
    decode_poly,
    decode_sampled,
    dumps,
    encode_complex,
    encode_factored,
    encode_jet,
    encode_matrix,
    encode_poly,
    encode_principal_part,
)
from .errors import InputError, NumericalError, QuadratureError, RemcalcError
from .expr import format_complex, format_poly_expr, parse_poly_expr
from .jets import ExpGerm, PolyGerm, RationalGerm
from .poly import FactoredPoly, Poly

__all__ = ["Request", "run", "main", "SUBCOMMANDS", "DEFAULT_TOLERANCES", "render_pretty"]

DEFAULT_TOLERANCES = {"tol": 1e-8, "rtol": 1e-10, "max_depth": 40}

# subcommand -> (required inputs, optional inputs)
SUBCOMMANDS: dict[str, tuple[frozenset, frozenset]] = {
    "divrem": (frozenset({"dividend", "divisor"}), frozenset({"germ", "t"})),
    "partfrac": (frozenset({"num", "den"}), frozenset()),
    "quotient": (frozenset({"num", "den"}), frozenset()),
    "matfun": (frozenset({"germ", "matrix"}), frozenset({"poly", "num", "den", "t", "annihilator"})),
    "matexp": (frozenset({"matrix", "t"}), frozenset({"annihilator"})),
    "minpoly": (frozenset({"matrix"}), frozenset()),
    "recurrence": (frozenset({"D", "init", "T"}), frozenset({"forcing"})),
    "ode": (frozenset({"D", "init"}), frozenset({"forcing", "t", "grid", "method"})),
    "euler": (frozenset({"hcoeffs", "matrix", "y0", "t"}), frozenset({"forcing"})),
    "interp": (frozenset({"nodes"}), frozenset({"values", "poly"})),
    "xr-remainder": (frozenset({"r", "nodes"}), frozenset()),
    "crt": (frozenset({"action", "divisor"}), frozenset({"poly", "residues"})),
}


@dataclass(frozen=True)
class Request:
    """A validated subcommand invocation.

    ``inputs`` values are either decoded JSON-like objects or strings (an
    expression, JSON text, or a path to a file containing either).
    ``tolerances`` overrides entries of :data:`DEFAULT_TOLERANCES`.
    """

    subcommand: str
    inputs: dict[str, Any] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}", code="unknown_subcommand")
        required, optional = SUBCOMMANDS[self.subcommand]
        given = {k for k, v in self.inputs.items() if v is not None}
        unknown = set(self.inputs) - required - optional
        if unknown:
            raise InputError(f"unknown fields for {self.subcommand}: {sorted(unknown)}", code="unknown_field")
        missing = required - given
        if missing:
            raise InputError(f"missing fields for {self.subcommand}: {sorted(missing)}", code="missing_field")
        bad = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if bad:
            raise InputError(f"unknown tolerances {sorted(bad)}", code="unknown_field")

    def tolerance(self, name: str):
        value = self.tolerances.get(name)
        if value is None:
            value = DEFAULT_TOLERANCES[name]
            if name == "tol" and os.environ.get("REMCALC_TOL"):
                value = _env_tol(os.environ["REMCALC_TOL"])
        return value

    def get(self, name: str, default=None):
        value = self.inputs.get(name)
        return default if value is None else value


def _env_tol(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InputError(f"REMCALC_TOL is not a number: {text!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise InputError("REMCALC_TOL must be positive")
    return value


# -- payload loading -------------------------------------------------------

def _load(value):
    """Decode a flag value: file contents, JSON text, or an expression string."""
    if not isinstance(value, str):
        return value
    text = value
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
    stripped = text.strip()
    if stripped[:1] in ("[", "{") or _is_number(stripped):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at offset {exc.pos}: {exc.msg}", code="syntax_error") from None
    return stripped


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _poly(value, t=None) -> Poly:
    obj = _load(value)
    if isinstance(obj, str):
        return parse_poly_expr(obj, t)
    if isinstance(obj, dict):
        return decode_factored(obj).expand()
    if isinstance(obj, list):
        return decode_poly(obj)
    return Poly([decode_complex(obj)])


def _divisor(value, t=None) -> Poly | FactoredPoly:
    obj = _load(value)
    if isinstance(obj, dict):
        return decode_factored(obj)
    return _poly(obj, t)


def _complex_list(value, what: str) -> list[complex]:
    obj = _load(value)
    if not isinstance(obj, list):
        raise InputError(f"{what} must be a JSON list")
    return [decode_complex(z) for z in obj]


def _real(value, what: str) -> float:
    obj = _load(value)
    if isinstance(obj, bool) or not isinstance(obj, (int, float)) or not math.isfinite(obj):
        raise InputError(f"{what} must be a finite real number")
    return float(obj)


def _int(value, what: str) -> int:
    obj = _load(value)
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise InputError(f"{what} must be an integer")
    return obj


def _grid(value) -> np.ndarray:
    if isinstance(value, str) and ":" in value and not os.path.isfile(value):
        parts = value.split(":")
        if len(parts) != 3:
            raise InputError("grid must be start:stop:count")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise InputError("grid must be start:stop:count") from None
        if count < 1:
            raise InputError("grid count must be positive")
        return np.linspace(start, stop, count)
    obj = _load(value)
    if not isinstance(obj, list):
        raise InputError("grid must be start:stop:count or a JSON list of times")
    return np.array([decode_complex(x).real for x in obj], dtype=float)


def _forcing(value):
    obj = _load(value)
    if isinstance(obj, dict):
        return decode_sampled(obj)
    return decode_exppoly(obj)


# -- output pieces ---------------------------------------------------------

def _poly_doc(p: Poly) -> dict:
    return {"expr": format_poly_expr(p), "coeffs": encode_poly(p)}


def _vector(values) -> list:
    return [encode_complex(z) for z in np.asarray(values, dtype=complex).ravel()]


# -- handlers --------------------------------------------------------------

def _divrem(req: Request) -> dict:
    germ = req.get("germ", "poly")
    t = req.get("t")
    t = None if t is None else _real(t, "t")
    D = _divisor(req.get("divisor"), t)
    tol = req.tolerance("tol")
    if germ == "poly":
        f = _poly(req.get("dividend"), t)
    elif germ == "exp":
        if t is None:
            raise InputError("--germ exp needs --t")
        f = PolyGerm(_poly(req.get("dividend"), t)) * ExpGerm(t)
    else:
        raise InputError(f"unknown germ {germ!r}; expected poly or exp")
    res = crt.divrem_generalized(f, D, tol)
    return {
        "remainder": _poly_doc(res.remainder),
        "quotient": None if res.quotient is None else _poly_doc(res.quotient),
    }


def _partfrac(req: Request) -> dict:
    pf = crt.partial_fractions(_poly(req.get("num")), _divisor(req.get("den")), req.tolerance("tol"))
    return {
        "polynomial_part": _poly_doc(pf.polynomial_part),
        "parts": [encode_principal_part(p) for p in pf.parts],
    }


def _quotient(req: Request) -> dict:
    return {"quotient": _poly_doc(crt.serret_quotient(_poly(req.get("num")), _poly(req.get("den"))))}


def _annihilator(req: Request):
    value = req.get("annihilator")
    return None if value is None else _divisor(value)


def _matfun(req: Request) -> dict:
    A = decode_matrix(_load(req.get("matrix")))
    germ = req.get("germ")
    if germ == "poly":
        if req.get("poly") is None:
            raise InputError("--germ poly needs --poly")
        f = PolyGerm(_poly(req.get("poly")))
    elif germ == "rational":
        if req.get("num") is None or req.get("den") is None:
            raise InputError("--germ rational needs --num and --den")
        f = RationalGerm(_poly(req.get("num")), _poly(req.get("den")))
    elif germ == "exp":
        if req.get("t") is None:
            raise InputError("--germ exp needs --t")
        f = ExpGerm(_real(req.get("t"), "t"))
    else:
        raise InputError(f"unknown germ {germ!r}; expected poly, rational or exp")
    tol = req.tolerance("tol")
    M = matrixfun.matrix_function(f, A, _annihilator(req), tol=tol, cluster_tol=tol)
    return {"matrix": encode_matrix(M)}


def _matexp(req: Request) -> dict:
    A = decode_matrix(_load(req.get("matrix")))
    tol = req.tolerance("tol")
    M = matrixfun.matrix_exp(_real(req.get("t"), "t"), A, _annihilator(req), tol=tol, cluster_tol=tol)
    return {"matrix": encode_matrix(M)}


def _minpoly(req: Request) -> dict:
    A = decode_matrix(_load(req.get("matrix")))
    tol = req.tolerance("tol")
    cert = matrixfun.minimal_polynomial(A, tol=tol, cluster_tol=tol)
    return {
        "poly": _poly_doc(cert.poly),
        "factored": encode_factored(cert.factored),
        "kind": cert.kind,
        "residual_norm": cert.residual_norm,
        "tolerance": cert.tolerance,
        "scale": cert.scale,
    }


def _recurrence(req: Request) -> dict:
    forcing = req.get("forcing")
    prob = dynamics.RecurrenceProblem(
        _poly(req.get("D")),
        tuple(_complex_list(req.get("init"), "init")),
        None if forcing is None else tuple(_complex_list(forcing, "forcing")),
    )
    return {"y": _vector(dynamics.recurrence_solve(prob, _int(req.get("T"), "T")))}


def _ode(req: Request) -> dict:
    forcing = req.get("forcing")
    prob = dynamics.ODEProblem(
        _divisor(req.get("D")),
        tuple(_complex_list(req.get("init"), "init")),
        None if forcing is None else _forcing(forcing),
    )
    if (req.get("t") is None) == (req.get("grid") is None):
        raise InputError("give exactly one of --t and --grid")
    if req.get("t") is not None:
        times = np.array([_real(req.get("t"), "t")])
    else:
        times = _grid(req.get("grid"))
    y = dynamics.ode_solve_collet(
        prob,
        times,
        method=req.get("method", "auto"),
        rtol=req.tolerance("rtol"),
        max_depth=int(req.tolerance("max_depth")),
    )
    return {"t": [float(x) for x in times], "y": _vector(y)}


def _exppoly_list(value, what: str) -> list:
    obj = _load(value)
    if not isinstance(obj, list):
        raise InputError(f"{what} must be a JSON list of exponential polynomials")
    return [decode_exppoly(item) for item in obj]


def _euler(req: Request) -> dict:
    forcing = req.get("forcing")
    tol = req.tolerance("tol")
    y = dynamics.euler_solve(
        _exppoly_list(req.get("hcoeffs"), "hcoeffs"),
        decode_matrix(_load(req.get("matrix"))),
        _complex_list(req.get("y0"), "y0"),
        None if forcing is None else _exppoly_list(forcing, "forcing"),
        _real(req.get("t"), "t"),
        rtol=req.tolerance("rtol"),
        max_depth=int(req.tolerance("max_depth")),
        tol=tol,
    )
    return {"y": _vector(y)}


def _interp(req: Request) -> dict:
    nodes = _complex_list(req.get("nodes"), "nodes")
    if (req.get("values") is None) == (req.get("poly") is None):
        raise InputError("give exactly one of --values and --poly")
    if req.get("values") is not None:
        f = _complex_list(req.get("values"), "values")
    else:
        f = _poly(req.get("poly"))
    res = crt.newton_interpolation(f, nodes)
    return {"poly": _poly_doc(res.poly), "divided_differences": _vector(res.divided_differences)}


def _xr_remainder(req: Request) -> dict:
    r = _int(req.get("r"), "r")
    nodes = _complex_list(req.get("nodes"), "nodes")
    return {"remainder": _poly_doc(crt.universal_remainder_xr(r, nodes))}


def _crt(req: Request) -> dict:
    action = req.get("action")
    D = _divisor(req.get("divisor"))
    tol = req.tolerance("tol")
    if action == "project":
        if req.get("poly") is None:
            raise InputError("crt project needs --poly")
        return {"residues": [encode_jet(j) for j in crt.crt_project(_poly(req.get("poly")), D, tol)]}
    if action == "lift":
        obj = _load(req.get("residues"))
        if not isinstance(obj, list):
            raise InputError("residues must be a JSON list of jets")
        return {"poly": _poly_doc(crt.crt_lift([decode_jet(j) for j in obj], D, tol))}
    raise InputError(f"unknown crt action {action!r}; expected project or lift")


_HANDLERS = {
    "divrem": _divrem,
    "partfrac": _partfrac,
    "quotient": _quotient,
    "matfun": _matfun,
    "matexp": _matexp,
    "minpoly": _minpoly,
    "recurrence": _recurrence,
    "ode": _ode,
    "euler": _euler,
    "interp": _interp,
    "xr-remainder": _xr_remainder,
    "crt": _crt,
}


def _error_doc(exc: RemcalcError) -> dict:
    err = {"code": exc.code, "message": str(exc)}
    if isinstance(exc, QuadratureError):
        err["estimate"] = _vector(exc.estimate)
        err["error_bound"] = float(exc.error_bound)
    return {"error": err}


def run(request: Request) -> tuple[int, dict]:
    """Execute ``request``; returns ``(exit_status, output_document)``."""
    try:
        doc = _HANDLERS[request.subcommand](request)
        dumps(doc)  # surfaces non-finite results as numerical failures
        return 0, doc
    except InputError as exc:
        return 1, _error_doc(exc)
    except NumericalError as exc:
        return 2, _error_doc(exc)


# -- pretty form -----------------------------------------------------------

def _pretty_value(value, indent: str) -> list[str]:
    if isinstance(value, dict) and "expr" in value and "coeffs" in value:
        return [value["expr"]]
    if isinstance(value, dict) and "order" in value and "entries" in value:
        q = value["order"]
        cells = [format_complex(decode_complex(z)) for z in value["entries"]]
        width = max(len(c) for c in cells)
        return [indent + "  " + "  ".join(c.rjust(width) for c in cells[i * q : (i + 1) * q]) for i in range(q)]
    if isinstance(value, dict) and "center" in value and "coeffs" in value:
        coeffs = ", ".join(format_complex(decode_complex(z)) for z in value["coeffs"])
        return [f"at {format_complex(decode_complex(value['center']))}: [{coeffs}]"]
    if isinstance(value, dict) and "leading" in value:
        fp = decode_factored(value)
        factors = " * ".join(f"(X - {format_complex(r)})^{m}" for r, m in fp.factors)
        return [f"{format_complex(fp.leading)} * {factors}" if factors else format_complex(fp.leading)]
    if isinstance(value, list) and value and all(isinstance(z, list) and len(z) == 2 for z in value) and all(
        isinstance(x, (int, float)) for z in value for x in z
    ):
        return ["[" + ", ".join(format_complex(decode_complex(z)) for z in value) + "]"]
    if isinstance(value, list) and all(isinstance(x, (int, float)) for x in value):
        return ["[" + ", ".join(format(float(x), ".17g") for x in value) + "]"]
    if isinstance(value, list):
        lines = []
        for item in value:
            lines.extend(indent + "  - " + line for line in _pretty_value(item, indent + "  "))
        return lines
    if isinstance(value, float):
        return [format(value, ".17g")]
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            lines.extend(_pretty_lines(k, v, indent + "  "))
        return lines
    return ["null" if value is None else str(value)]


def _pretty_lines(key: str, value, indent: str) -> list[str]:
    body = _pretty_value(value, indent)
    if len(body) == 1 and not body[0].startswith(indent + "  "):
        return [f"{indent}{key}: {body[0]}"]
    return [f"{indent}{key}:"] + body


def render_pretty(doc: dict) -> str:
    """Human-readable rendering of an output document."""
    lines: list[str] = []
    for key, value in doc.items():
        lines.extend(_pretty_lines(key, value, ""))
    return "\n".join(lines)


# -- argument parsing ------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message, code="usage")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, help="root clustering and annihilation tolerance (default 1e-8, env REMCALC_TOL)")
    p.add_argument("--rtol", type=float, help="quadrature relative tolerance (default 1e-10)")
    p.add_argument("--max-depth", type=int, dest="max_depth", help="quadrature bisection depth (default 40)")
    p.add_argument("--pretty", action="store_true", help="print a human-readable summary instead of JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="remcalc", description="Remainders of euclidean division by complex polynomials.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("divrem", help="remainder (and quotient) of a polynomial or exponential germ")
    p.add_argument("--dividend", required=True)
    p.add_argument("--divisor", required=True)
    p.add_argument("--germ", choices=["poly", "exp"], default="poly")
    p.add_argument("--t")

    for name, text in (("partfrac", "partial fractions of num/den"), ("quotient", "quotient of num by den")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--num", required=True)
        p.add_argument("--den", required=True)

    p = sub.add_parser("minpoly", help="minimal polynomial of a matrix")
    p.add_argument("--matrix", required=True)

    p = sub.add_parser("matfun", help="f(A) for a polynomial, rational or exponential germ")
    p.add_argument("--germ", choices=["poly", "rational", "exp"], required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--poly")
    p.add_argument("--num")
    p.add_argument("--den")
    p.add_argument("--t")
    p.add_argument("--annihilator")

    p = sub.add_parser("matexp", help="exp(tA)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--annihilator")

    p = sub.add_parser("recurrence", help="solve D(shift) y = f")
    p.add_argument("--D", required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--forcing")
    p.add_argument("--T", required=True)

    p = sub.add_parser("ode", help="solve D(d/dt) y = f")
    p.add_argument("--D", required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--forcing")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--t")
    g.add_argument("--grid", help="start:stop:count or a JSON list of times")
    p.add_argument("--method", choices=["auto", "exact", "quadrature"], default="auto")

    p = sub.add_parser("euler", help="solve y' + h(t, A) y = f")
    p.add_argument("--hcoeffs", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--y0", required=True)
    p.add_argument("--forcing")
    p.add_argument("--t", required=True)

    p = sub.add_parser("interp", help="Newton interpolation at distinct nodes")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--values")
    g.add_argument("--poly")
    p.add_argument("--nodes", required=True)

    p = sub.add_parser("xr-remainder", help="remainder of X^r by prod (X - a_i)")
    p.add_argument("--r", required=True)
    p.add_argument("--nodes", required=True)

    p = sub.add_parser("crt", help="residues modulo the prime-power factors, and back")
    p.add_argument("action", choices=["project", "lift"])
    p.add_argument("--divisor", required=True)
    p.add_argument("--poly")
    p.add_argument("--residues")

    for p in sub.choices.values():
        _add_common(p)
    return parser


def request_from_args(args: argparse.Namespace) -> Request:
    ns = vars(args).copy()
    sub = ns.pop("subcommand")
    ns.pop("pretty", None)
    tolerances = {k: ns.pop(k) for k in ("tol", "rtol", "max_depth") if ns.get(k) is not None}
    for k in ("tol", "rtol", "max_depth"):
        ns.pop(k, None)
    return Request(sub, ns, tolerances)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    pretty = "--pretty" in argv
    try:
        args = build_parser().parse_args(argv)
        code, doc = run(request_from_args(args))
    except InputError as exc:
        code, doc = 1, _error_doc(exc)
    text = render_pretty(doc) if pretty else dumps(doc)
    print(text)
    if code:
        print(doc["error"]["message"], file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
