"""Command-line front end.

Subcommands: decompose, functionals, split-error, chain-scaling, lower-bound.
Reports are JSON (floats written with 17 significant digits); tables from
split-error and chain-scaling are also written as CSV next to the JSON file.

Exit codes: 0 success, 1 fitted order outside a requested window,
2 input error, 3 size cap, 4 estimation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
import warnings
from fractions import Fraction

import jsonschema
import numpy as np

from . import chain as ch
from .errors import EstimationError, SizeCapError
from .functionals import activity_norm, functional_report
from .gates import DEFAULT_EPS0, DEFAULT_S0, circuit_unitary, compile_strang, lower_bound
from .linalg import op_norm
from .reps import Representation, defining, spin, tensor_trivial
from .roots import SU2, SU2N, SUN, AlgebraElement, AlgebraId, decompose, element, root_name, su2_element
from .splitting import composed_evolution, error_sweep, exact_evolution, required_steps

EXIT_OK, EXIT_WINDOW, EXIT_INPUT, EXIT_CAP, EXIT_ESTIMATE = 0, 1, 2, 3, 4

_NUM = {"type": "number"}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _NUM}}

SCHEMAS = {
    "pauli": {
        "type": "object",
        "required": ["n", "terms"],
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "terms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["coeff", "ops"],
                    "properties": {"coeff": _NUM, "ops": {"type": "string", "pattern": "^[IXYZ]+$"}},
                },
            },
        },
    },
    "chain": {
        "type": "object",
        "required": ["model", "n"],
        "properties": {
            "model": {"enum": list(ch.MODELS)},
            "n": {"type": "integer", "minimum": 1},
            "J": {"anyOf": [_NUM, {"type": "array", "items": _NUM}]},
            "h": {"anyOf": [_NUM, {"type": "array", "items": _NUM}, {"type": "object"}]},
            "support": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
    },
    "matrix": {
        "type": "object",
        "required": ["algebra", "re"],
        "properties": {"algebra": {"type": "string"}, "re": _MATRIX, "im": _MATRIX},
    },
    "su2": {
        "type": "object",
        "required": ["a", "b", "c"],
        "properties": {"a": _NUM, "b": _NUM, "c": _NUM},
    },
}


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- serialization


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            return "null"
        return "%.17g" % v
    if isinstance(v, (complex, np.complexfloating)):
        return _fmt({"re": v.real, "im": v.imag})
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps(obj) -> str:
    return _fmt(obj) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_path(output: str) -> str:
    root, _ = os.path.splitext(output)
    return root + ".csv"


# ---------------------------------------------------------------- input


def input_kind(d) -> str:
    if not isinstance(d, dict):
        raise InputError("input must be a JSON object")
    for kind, key in (("pauli", "terms"), ("chain", "model"), ("matrix", "algebra"), ("su2", "a")):
        if key in d:
            return kind
    raise InputError("unrecognised input: expected Pauli terms, chain shorthand, matrix or su(2) coordinates")


def load_input(path: str) -> tuple[str, dict]:
    try:
        with open(path) as f:
            d = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    kind = input_kind(d)
    try:
        jsonschema.validate(d, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise InputError(f"{kind} input invalid: {exc.message}") from exc
    return kind, d


def parse_algebra(s: str) -> AlgebraId:
    s = s.strip().lower().replace(" ", "")
    m = re.fullmatch(r"su\(?2\^(\d+)\)?", s)
    if m:
        return SU2N(int(m.group(1)))
    m = re.fullmatch(r"su\(?(\d+)\)?", s)
    if m:
        N = int(m.group(1))
        return SU2() if N == 2 else SUN(N)
    raise InputError(f"unknown algebra {s!r}")


def chain_terms(kind: str, d: dict) -> tuple[int, list]:
    if kind == "pauli":
        return ch.terms_from_json(d)
    spec = ch.ChainSpec.from_json(d)
    return spec.n, ch.build_hamiltonian(spec)


def load_element(kind: str, d: dict) -> AlgebraElement:
    if kind == "su2":
        return su2_element(d["a"], d["b"], d["c"])
    if kind == "matrix":
        alg = parse_algebra(d["algebra"])
        m = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d.get("im", np.zeros_like(d["re"])), dtype=float)
        return element(alg, m)
    n, terms = chain_terms(kind, d)
    return ch.to_algebra_element(terms, n)


def parse_rep(s: str, algebra: AlgebraId) -> Representation:
    s = s.strip()
    if s.startswith("tensor-trivial"):
        inner = s.partition(":")[2] or "defining"
        return tensor_trivial(parse_rep(inner, algebra))
    if s == "defining":
        return defining(algebra)
    m = re.fullmatch(r"spin-(?:j=)?([0-9./]+)", s)
    if m:
        if algebra.family != "SU2":
            raise InputError("spin-j representations need an su(2) input")
        try:
            j = Fraction(m.group(1))
        except ValueError as exc:
            raise InputError(f"bad spin {m.group(1)!r}") from exc
        return spin(j)
    raise InputError(f"unknown representation {s!r}")


def time_grid(t_max: float, points: int, ratio: float) -> list[float]:
    if not t_max > 0 or points < 1 or not 0 < ratio < 1:
        raise InputError("time grid needs t_max > 0, points >= 1 and 0 < ratio < 1")
    return [t_max * ratio**k for k in range(points)]


# ---------------------------------------------------------------- commands


def cmd_decompose(args) -> tuple[dict, str | None]:
    kind, d = load_input(args.input)
    x = load_element(kind, d)
    dec = decompose(x)
    coeffs = [
        {"label": [lab.z, lab.w], "name": root_name(x.algebra, lab), "re": c.real, "im": c.imag}
        for lab, c in sorted(dec.coeffs.items())
    ]
    return {
        "algebra": str(x.algebra),
        "x0_theta": list(np.diagonal(dec.x0).imag),
        "coefficients": coeffs,
        "residual": op_norm(dec.reconstruct() - x.mat),
    }, None


def _grouped_for(kind: str, d: dict) -> dict:
    if kind not in ("pauli", "chain"):
        raise InputError("grouped convention needs Pauli-term or chain input")
    n, terms = chain_terms(kind, d)
    return ch.grouped_report(ch.grouped_profile_from_terms(terms, n))


def cmd_functionals(args) -> tuple[dict, str | None]:
    kind, d = load_input(args.input)
    out = {}
    if args.convention in ("grouped", "both"):
        out["grouped"] = _grouped_for(kind, d)
    if args.convention in ("matrix-unit", "both"):
        x = load_element(kind, d)
        rep = parse_rep(args.rep, x.algebra)
        rpt = functional_report(rep, x).to_dict()
        rpt["representation"] = str(rep)
        out["matrix-unit"] = rpt
    if args.convention != "both":
        return next(iter(out.values())), None
    return out, None


def cmd_split_error(args) -> tuple[dict, str | None]:
    kind, d = load_input(args.input)
    x = load_element(kind, d)
    rep = parse_rep(args.rep, x.algebra)
    times = time_grid(args.t_max, args.points, args.ratio)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = error_sweep(rep, x, times, args.scheme)
    out = report.to_dict()
    out["representation"] = str(rep)
    out["warnings"] = [str(w.message) for w in caught]
    if report.fitted_order is None:
        out["warnings"].append("all errors below the roundoff floor; fitted_order undefined")
    for msg in out["warnings"]:
        print(f"warning: {msg}", file=sys.stderr)
    t = args.time if args.time is not None else args.t_max
    if args.eps is not None and report.c_hat is not None:
        out["required_steps"] = {"t": t, "eps": args.eps, "r": required_steps(rep, x, t, args.eps, report.c_hat)}
    if args.steps is not None:
        dec = decompose(x)
        err = op_norm(exact_evolution(rep, x, t) - composed_evolution(rep, dec, t, args.steps))
        out["composed"] = {"t": t, "r": args.steps, "error": err}
    if args.order_window:
        lo, hi = args.order_window
        out["order_window"] = [lo, hi]
        out["order_in_window"] = report.fitted_order is not None and lo <= report.fitted_order <= hi
    table = _csv_text(["t", "error", "bound_rhs", "ratio"], report.csv_rows())
    return out, table


def cmd_chain_scaling(args) -> tuple[dict, str | None]:
    kind, d = load_input(args.input)
    if kind != "chain":
        raise InputError("chain-scaling needs chain shorthand input")
    model = d["model"]
    J = float(np.atleast_1d(d.get("J", 0.0))[0])
    h_raw = d.get("h", 0.0)
    if isinstance(h_raw, dict):
        h_raw = list(h_raw.values())
    hs = np.atleast_1d(np.asarray(h_raw, dtype=float))
    h = float(hs[0]) if hs.size else 0.0
    support = [int(s) - 1 for s in d.get("support", [])]
    ns = args.n_values
    if model == "sparse" and support and min(ns) <= max(support):
        raise InputError("every chain length must contain the sparse support")
    table = ch.scaling_study(ch.uniform_family(model, J, h, support), ns)
    out = {"model": model, "J": J, "h": h, "support": [s + 1 for s in support], "convention": "grouped"}
    out.update(table.to_dict())
    return out, _csv_text(["n", "A1", "A2", "C"], table.csv_rows())


def _reference_circuit(rep, x, t, s0, eps0, max_r=1024):
    r = 1
    while r <= max_r:
        c = compile_strang(rep, x, t, r, s0)
        eps = op_norm(circuit_unitary(rep, c) - exact_evolution(rep, x, t))
        if eps <= eps0:
            return {"r": r, "length": len(c), "eps": eps}
        r *= 2
    return None


def cmd_lower_bound(args) -> tuple[dict, str | None]:
    kind, d = load_input(args.input)
    x = load_element(kind, d)
    rep = parse_rep(args.rep, x.algebra)
    rpt = lower_bound(rep, s0=args.s0, eps0=args.eps0, samples=args.samples, seed=args.seed)
    out = rpt.to_dict()
    t = args.time if args.time is not None else 1.0
    act = activity_norm(rep, x)
    out["t"] = t
    out["act_norm"] = act
    out["n_lower"] = rpt.n_lower(act, t)
    if rep.kind == "defining" or rep.kind == "tensor_trivial":
        out["reference_circuit"] = _reference_circuit(rep, x, t, args.s0, args.eps0)
    return out, None


COMMANDS = {
    "decompose": cmd_decompose,
    "functionals": cmd_functionals,
    "split-error": cmd_split_error,
    "chain-scaling": cmd_chain_scaling,
    "lower-bound": cmd_lower_bound,
}


def _window(s: str):
    try:
        lo, hi = (float(v) for v in s.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected LO,HI") from exc
    return lo, hi


def _int_list(s: str):
    try:
        return [int(v) for v in s.split(",") if v]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootsim", description="Torus-root analysis of Lie-algebra generators.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", required=True, help="input JSON file")
        sp.add_argument("--output", help="output JSON file (stdout if omitted)")
        sp.add_argument("--rep", default="defining", help="defining | spin-j=J | tensor-trivial[:REP]")
        sp.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("decompose", help="toral part and root coefficients"))
    sp = sub.add_parser("functionals", help="root activity and curvature")
    common(sp)
    sp.add_argument("--convention", choices=["matrix-unit", "grouped", "both"], default="matrix-unit")

    sp = sub.add_parser("split-error", help="splitting error sweep")
    common(sp)
    sp.add_argument("--scheme", choices=["strang", "trotter1"], default="strang")
    sp.add_argument("--t-max", type=float, default=2.0**-4)
    sp.add_argument("--points", type=int, default=7)
    sp.add_argument("--ratio", type=float, default=0.5)
    sp.add_argument("--time", type=float, help="evolution time for --eps and --steps (default t-max)")
    sp.add_argument("--eps", type=float, help="target accuracy for the required step count")
    sp.add_argument("--steps", type=int, help="report the r-step composed error at --time")
    sp.add_argument("--order-window", type=_window, help="LO,HI; exit 1 if the fitted order falls outside")

    sp = sub.add_parser("chain-scaling", help="grouped functionals against chain length")
    common(sp)
    sp.add_argument("--n-values", type=_int_list, default=list(range(2, 11)))
    sp.add_argument("--convention", choices=["grouped"], default="grouped")

    sp = sub.add_parser("lower-bound", help="root-activity lower bound on circuit length")
    common(sp)
    sp.add_argument("--s0", type=float, default=DEFAULT_S0)
    sp.add_argument("--eps0", type=float, default=DEFAULT_EPS0)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--time", type=float, help="evolution time (default 1)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, table = COMMANDS[args.command](args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except EstimationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATE
    except (InputError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(out)
    if args.output:
        if table is not None:
            write_atomic(csv_path(args.output), table)
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    if out.get("order_in_window") is False:
        return EXIT_WINDOW
    return EXIT_OK
