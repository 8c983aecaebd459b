"""Command line front end: one JSON problem file in, one JSON report out.

Exit codes: 0 success (negative answers included), 2 bad input, 3 a product
was needed over a basis without a multiplication table, 4 internal failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Optional, Sequence

from .degree3 import Mat2, check_cn3, g6_classify
from .errors import BasisError, BasisMismatch, GWAError, InternalAssertion, UnsupportedProduct
from .gwa import RootTuple, gwa_isomorphism, has_finite_gldim, is_simple, satisfies_sfgld, theta_conjugacy
from .ktheory import p_basis, schur_trace, trace_pi, unit_decomposition
from .morita import DEFAULT_BOUND, Holds, necessary_morita, sufficient_morita
from .qtorus import (
    build_nhat,
    check_torus_iso,
    morita_to_torus,
    q_simple,
    theta_of,
    torus_is_simple,
    torus_iso_search,
    torus_kernel,
    transport_holds,
)
from .scalars import BasisSpec

EXIT_OK, EXIT_INPUT, EXIT_PRODUCT, EXIT_INTERNAL = 0, 2, 3, 4

COMMANDS = ("analyze", "iso", "morita", "trace", "torus", "g6", "pipeline")


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# problem files


def parse_basis(block: Any) -> BasisSpec:
    if not isinstance(block, dict) or "symbols" not in block:
        raise InputError("'basis' must be an object with a 'symbols' list")
    symbols = block["symbols"]
    products = block.get("products")
    if products is None:
        return BasisSpec(tuple(symbols))
    table = {}
    for key, value in products.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise InputError(f"product key {key!r} must look like 'x,y'")
        table[(parts[0].strip(), parts[1].strip())] = value
    return BasisSpec.from_products(symbols, table)


def load_problem(data: Any) -> tuple[BasisSpec, dict[str, RootTuple], Optional[dict]]:
    if not isinstance(data, dict):
        raise InputError("the problem file must hold a JSON object")
    basis = parse_basis(data.get("basis", {"symbols": ["1"]}))
    polys = data.get("polynomials", {})
    if not isinstance(polys, dict):
        raise InputError("'polynomials' must map names to root lists")
    parsed = {}
    for name, rts in polys.items():
        if not isinstance(rts, list) or not rts:
            raise InputError(f"polynomial {name!r} needs a non-empty root list")
        parsed[name] = RootTuple(tuple(basis(r) for r in rts))
    witness = data.get("witness")
    if witness is not None:
        try:
            N = Mat2.from_rows(witness["N"])
            m = tuple(int(x) for x in witness["m"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed witness block: {exc}") from exc
        if len(m) != 2:
            raise InputError("witness 'm' must have two entries")
        witness = {"N": N, "m": m}
    return basis, parsed, witness


def _poly(polys: dict[str, RootTuple], name: str) -> RootTuple:
    if name not in polys:
        raise InputError(f"no polynomial named {name!r} (have {sorted(polys)})")
    return polys[name]


def _matrix_json(M) -> list[list[int]]:
    return [list(r) for r in M]


# --------------------------------------------------------------------------
# commands


def cmd_analyze(polys, args, witness) -> dict:
    out = {}
    for name in sorted(polys):
        a = polys[name]
        out[name] = {
            "roots": a.to_json(),
            "simple": is_simple(a),
            "finite_gldim": has_finite_gldim(a),
            "sfgld": satisfies_sfgld(a),
            "q_simple": q_simple(a),
        }
    return {"polynomials": out}


def cmd_iso(polys, args, witness) -> dict:
    a, b = _poly(polys, args.poly), _poly(polys, args.other)
    w = gwa_isomorphism(a, b)
    conj = theta_conjugacy(a, b) if a.n == b.n else None
    return {
        "pair": [args.poly, args.other],
        "isomorphism": w.to_json() if w else None,
        "theta_conjugacy": {"sign": conj[0], "S": _matrix_json(conj[1])} if conj else None,
    }


def cmd_morita(polys, args, witness) -> dict:
    a, b = _poly(polys, args.poly), _poly(polys, args.other)
    suff = sufficient_morita(a, b)
    return {
        "pair": [args.poly, args.other],
        "sufficient": suff.to_json() if suff else None,
        "necessary": necessary_morita(a, b, args.bound).to_json(),
    }


def cmd_trace(polys, args, witness) -> dict:
    a = _poly(polys, args.poly)
    indices = [args.index] if args.index is not None else list(range(1, a.n + 1))
    traces = {}
    for i in indices:
        lag, sch = trace_pi(a, i), schur_trace(a, i)
        traces[str(i)] = {"lagrange": lag.to_json(), "schur": sch.to_json(), "agree": lag == sch}
    return {
        "poly": args.poly,
        "traces": traces,
        "p_basis": [p.to_json() for p in p_basis(a)],
        "unit_decomposition": [c.to_json() for c in unit_decomposition(a)],
    }


def cmd_torus(polys, args, witness) -> dict:
    a = _poly(polys, args.poly)
    T = theta_of(a)
    out = {
        "poly": args.poly,
        "theta": T.to_json(),
        "torus_simple": torus_is_simple(T),
        "kernel": _matrix_json(torus_kernel(T)),
    }
    if args.other in polys:
        T2 = theta_of(polys[args.other])
        out["other"] = args.other
        out["iso_search"] = torus_iso_search(T, T2, args.bound).to_json()
    return out


def cmd_g6(polys, args, witness) -> dict:
    if args.matrix is None:
        raise InputError("g6 needs --matrix 'a,b;c,d'")
    try:
        N = Mat2.parse(args.matrix)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not N.is_unimodular():
        raise InputError(f"{N} is not unimodular")
    return {"report": g6_classify(N).to_json()}


def cmd_pipeline(polys, args, witness) -> dict:
    a, b = _poly(polys, args.poly), _poly(polys, args.other)
    out: dict[str, Any] = {"pair": [args.poly, args.other]}
    if witness is not None:
        N, m = witness["N"], witness["m"]
        out["witness_source"] = "input"
    else:
        res = necessary_morita(a, b, args.bound)
        out["necessary"] = res.to_json()
        if not isinstance(res, Holds):
            out["torus_M"] = None
            return out
        N, m = Mat2.from_rows(res.N), res.M
        out["witness_source"] = "necessary_morita"
    out["N"], out["m"] = str(N), list(m)
    if not check_cn3(a, b, N, *m):
        raise InputError(f"witness ({N}, {tuple(m)}) does not satisfy (cn3) for this pair")
    nhat, swapped = build_nhat(N)
    M = morita_to_torus(a, b, N, m)
    out.update(
        Nhat=_matrix_json(nhat),
        swapped_mu=swapped,
        torus_M=_matrix_json(M),
        torus_iso_verified=check_torus_iso(theta_of(a), theta_of(b), M),
    )
    if args.paper_cd:
        lit, _ = build_nhat(N, alternative_cd=True)
        b_used = b.permuted((2, 1, 3)) if swapped else b
        out["alternative_cd"] = {"Nhat": _matrix_json(lit), "transport_holds": transport_holds(lit, a, b_used)}
    return out


HANDLERS = {
    "analyze": cmd_analyze,
    "iso": cmd_iso,
    "morita": cmd_morita,
    "trace": cmd_trace,
    "torus": cmd_torus,
    "g6": cmd_g6,
    "pipeline": cmd_pipeline,
}


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gwa-morita", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="JSON problem file ('-' for stdin)")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="search bound (default %(default)s)")
    p.add_argument("--matrix", help="2x2 integer matrix 'a,b;c,d' for g6")
    p.add_argument("--poly", default="a", help="polynomial name (default %(default)s)")
    p.add_argument("--other", default="b", help="second polynomial name (default %(default)s)")
    p.add_argument("--index", type=int, help="restrict trace to one root index (1-based)")
    p.add_argument("--paper-cd", action="store_true", help="also report the alternative c,d lift")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    return p


def _read_input(path: Optional[str]) -> Any:
    if path is None:
        return {}
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def run(command: str, data: Any, args: argparse.Namespace) -> dict:
    """Validate ``data`` and dispatch; returns the report object."""
    _, polys, witness = load_problem(data)
    start = time.perf_counter()
    report = {"command": command, **HANDLERS[command](polys, args, witness)}
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command != "g6" and args.input is None:
            raise InputError(f"{args.command} needs --input")
        report = run(args.command, _read_input(args.input), args)
    except UnsupportedProduct as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRODUCT
    except InternalAssertion as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, GWAError, BasisError, BasisMismatch, ValueError, KeyError, TypeError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
