"""Batch command line front end.

Every subcommand reads its operands from argv (an argument of the form
"@path" is replaced by that file's contents), computes one pure value,
and writes it to stdout; diagnostics go to stderr.  Exit codes:

    0  success
    1  the input text does not parse or denotes no valid value
    2  a precondition is violated (rank mismatch, non-unipotent log, ...)
    3  a verification check failed
    4  a series query needed coefficients beyond the stored order

Group elements travel as JSON (see the dsl module for the schema); all
other values use the one-line text grammar.  Output is deterministic:
the same argv and --seed always produce the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .autgroup import (AutoAction, GnElem, act, convert_form, decompose,
                       gn_inverse, multiply_formula)
from .dsl import (gnelem_to_json, parse_gnelem, parse_lie, parse_ordinal,
                  parse_triaut, print_value)
from .errors import DomainError, DslError, TriderivError, TruncationError
from .lie import LieElem, bracket, center_solve, ideal_membership, ord_of_element
from .series import DEFAULT_ORDER
from .triaut import (conjugate_derivation, exp_map, log_map,
                     reconstruct_from_frames)
from .verify import SUITES, run_checks


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triderive",
        description="Exact computations in the Lie algebra of triangular "
                    "derivations and its automorphism group.")
    parser.add_argument("--n", type=int, default=None,
                        help="rank of the algebra (inferred when omitted)")
    parser.add_argument("--order", type=int, default=None,
                        help=f"series order for decompositions and "
                             f"truncations (default {DEFAULT_ORDER})")
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output style")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the verify suite")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name: str, help_text: str, *operands: str) -> None:
        p = sub.add_parser(name, help=help_text)
        for operand in operands:
            nargs = "+" if operand.endswith("...") else None
            p.add_argument(operand.rstrip("."), nargs=nargs)

    cmd("bracket", "Lie bracket of two derivations", "left", "right")
    cmd("exp", "exponential automorphism of a derivation", "derivation")
    cmd("log", "logarithm of a unipotent triangular automorphism", "aut")
    cmd("conjugate", "conjugate a derivation by an automorphism",
        "aut", "derivation")
    cmd("reconstruct", "automorphism matching a commuting frame",
        "frame...")
    cmd("act", "apply a group element to a derivation",
        "element", "derivation")
    cmd("decompose", "canonical Form A coordinates of an automorphism",
        "element")
    cmd("mul", "product of two group elements", "left", "right")
    cmd("inv", "inverse of a group element", "element")
    cmd("ord", "ordinal degree of a derivation", "derivation")
    cmd("ideal", "membership of a derivation in an ordinal ideal",
        "derivation", "ordinal")
    cmd("center", "basis of the center (needs --n)")
    verify = sub.add_parser("verify", help="run the identity check suites")
    verify.add_argument("--suite", choices=SUITES, default="all")
    return parser


def _resolve(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as handle:
            return handle.read()
    return text


def _element(text: str, n: int | None) -> GnElem:
    """A group element operand: JSON coordinates, or a triangular
    automorphism in bracket notation taken as its conjugation action."""
    text = _resolve(text)
    if text.lstrip().startswith("{"):
        return parse_gnelem(text)
    sigma = parse_triaut(text, n)
    return decompose(AutoAction.from_triaut(sigma))


def _emit(value: Any, kind: str, fmt: str) -> None:
    if fmt == "json":
        if isinstance(value, GnElem):
            payload: Any = gnelem_to_json(value)
        elif isinstance(value, list):
            payload = [print_value(v) for v in value]
        elif isinstance(value, bool):
            payload = value
        else:
            payload = print_value(value)
        print(json.dumps({"kind": kind, "value": payload}, sort_keys=True))
    elif isinstance(value, bool):
        print("true" if value else "false")
    elif isinstance(value, list):
        for v in value:
            print(print_value(v))
    else:
        print(print_value(value))


def _run(args: argparse.Namespace) -> int:
    n = args.n
    if n is not None and n < 2:
        raise DomainError("rank must be at least 2")
    if args.order is not None and args.order < 1:
        raise DomainError("series order must be at least 1")
    command = args.command

    if command == "bracket":
        u = parse_lie(_resolve(args.left), n)
        v = parse_lie(_resolve(args.right), n or u.n)
        _emit(bracket(u, v), "lie", args.format)
    elif command == "exp":
        _emit(exp_map(parse_lie(_resolve(args.derivation), n)),
              "triaut", args.format)
    elif command == "log":
        _emit(log_map(parse_triaut(_resolve(args.aut), n)),
              "lie", args.format)
    elif command == "conjugate":
        sigma = parse_triaut(_resolve(args.aut), n)
        u = parse_lie(_resolve(args.derivation), sigma.n)
        _emit(conjugate_derivation(sigma, u), "lie", args.format)
    elif command == "reconstruct":
        rank = n if n is not None else max(len(args.frame), 2)
        frames = [parse_lie(_resolve(chunk), rank) for chunk in args.frame]
        _emit(reconstruct_from_frames(frames), "triaut", args.format)
    elif command == "act":
        g = _element(args.element, n)
        u = parse_lie(_resolve(args.derivation), g.n)
        _emit(act(g, u), "lie", args.format)
    elif command == "decompose":
        text = _resolve(args.element)
        order = args.order if args.order is not None else DEFAULT_ORDER
        if text.lstrip().startswith("{"):
            action = AutoAction.from_gnelem(parse_gnelem(text))
        else:
            action = AutoAction.from_triaut(parse_triaut(text, n))
        _emit(decompose(action, order=order), "gnelem", args.format)
    elif command == "mul":
        g = _element(args.left, n)
        h = _element(args.right, n)
        product = multiply_formula(convert_form(g, "B", args.order),
                                   convert_form(h, "B", args.order))
        if g.form == "A":
            product = convert_form(product, "A", args.order)
        _emit(product, "gnelem", args.format)
    elif command == "inv":
        g = _element(args.element, n)
        _emit(gn_inverse(g, args.order), "gnelem", args.format)
    elif command == "ord":
        _emit(ord_of_element(parse_lie(_resolve(args.derivation), n)),
              "ordinal", args.format)
    elif command == "ideal":
        u = parse_lie(_resolve(args.derivation), n)
        lam = parse_ordinal(_resolve(args.ordinal))
        _emit(ideal_membership(u, lam), "bool", args.format)
    elif command == "center":
        if n is None:
            raise DomainError("center needs an explicit --n")
        _emit(center_solve(n, 3), "lie-list", args.format)
    elif command == "verify":
        results = run_checks(args.suite, args.seed)
        if args.format == "json":
            payload = [{"name": name, "passed": ok, "detail": detail}
                       for name, ok, detail in results]
            print(json.dumps({"kind": "verify", "value": payload},
                             sort_keys=True))
        else:
            for name, ok, detail in results:
                print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not all(ok for _, ok, _ in results):
            return 3
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except DslError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TriderivError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
