"""Command-line surface.

Commands::

    jv bracket X Y              commutator of two basis generators
    jv normal-order WORD        PBW normal form of a word
    jv act X VECTOR             action of a generator on a module vector
    jv singular --n N --weight W [--branch-budget B]
                                singular-vector search report
    jv verify VECTOR --constraints C
                                check the lowest-weight conditions

Global flags: ``--format text|latex|json`` (default text), ``--short-names``
(use the n = 2 short names in LaTeX output), ``--n`` where the dimension
cannot be inferred from the input.

Exit status: 0 on success (including "no singular vector", which is a valid
answer), 2 on parse errors, 3 when the solver branch budget is exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .algebra import InvalidDimensionError, JacobiAlgebra
from .singular import BranchBudgetExceededError, find_singular_vectors
from .textio import (
    ParseError,
    constraints_to_json,
    parse_constraints,
    parse_generator,
    parse_vector,
    parse_weight,
    parse_word,
    render_bracket,
    render_generator,
    render_monomial,
    render_solved_form,
    render_uelement,
    render_vector,
    render_weight,
    report_to_json,
    uelement_to_json,
    vector_to_json,
)
from .verma import ConstraintSet, InconsistentConstraintsError, is_singular
from .pbw import normal_order

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _infer_n(*strings: str) -> int:
    """Smallest dimension compatible with the indices mentioned in the input."""
    import re

    n = 1
    for s in strings:
        for m in re.finditer(r"\[(\d+)(?:,(\d+))?\]", s):
            n = max(n, int(m.group(1)), int(m.group(2) or 0))
        for m in re.finditer(r"(?<![\[\d,])[abdh][+-]?(\d+)", s):
            n = max(n, int(m.group(1)))
        for m in re.finditer(r"L(\d+)", s):
            n = max(n, int(m.group(1)))
        if re.search(r"[cd][+-]|b[+-]\d|(?<![a-zA-Z\[])h\d", s):
            n = max(n, 2)
    return n


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def _cmd_bracket(args) -> int:
    n = args.n or _infer_n(args.x, args.y)
    alg = JacobiAlgebra(n)
    x = parse_generator(args.x, n)
    y = parse_generator(args.y, n)
    br = alg.bracket(x, y)
    if args.format == "json":
        terms = [
            {"generator": render_generator(g, n), "coeff": _frac(br.terms[g])}
            for g in sorted(br.terms, key=lambda g: alg.index[g])
        ]
        print(_json_dump({"scalar": _frac(br.scalar), "terms": terms}))
    elif args.format == "latex":
        print(render_bracket(alg, br, short=args.short_names, latex=True))
    else:
        print(render_bracket(alg, br))
    return EXIT_OK


def _frac(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _cmd_normal_order(args) -> int:
    n = args.n or _infer_n(args.word)
    alg = JacobiAlgebra(n)
    word = parse_word(args.word, n)
    u = normal_order(alg, word)
    if args.format == "json":
        print(_json_dump(uelement_to_json(alg, u)))
    elif args.format == "latex":
        print(render_uelement(alg, u, short=args.short_names, latex=True))
    else:
        print(render_uelement(alg, u))
    return EXIT_OK


def _cmd_act(args) -> int:
    n = args.n or _infer_n(args.x, args.vector)
    alg = JacobiAlgebra(n)
    x = parse_generator(args.x, n)
    v = parse_vector(args.vector, alg)
    from .verma import act

    result = act(alg, x, v)
    if args.format == "json":
        print(_json_dump(vector_to_json(alg, result)))
    elif args.format == "latex":
        print(render_vector(alg, result, short=args.short_names, latex=True))
    else:
        print(render_vector(alg, result))
    return EXIT_OK


def _cmd_singular(args) -> int:
    alg = JacobiAlgebra(args.n)
    w = parse_weight(args.weight, args.n)
    report = find_singular_vectors(alg, w, branch_budget=args.branch_budget)
    if args.format == "json":
        print(_json_dump(report_to_json(alg, report)))
        return EXIT_OK
    latex = args.format == "latex"
    short = args.short_names if latex else None
    print(f"weight: {render_weight(report.weight)}")
    mono_text = ", ".join(
        render_monomial(alg, m, short=short, latex=latex) for m in report.monomials
    )
    print(f"ansatz monomials: {mono_text if mono_text else '(none)'}")
    if report.trivial:
        print("trivial: the lowest weight vector itself; excluded from singular vectors")
        return EXIT_OK
    if not report.branches:
        print("no singular vector")
        return EXIT_OK
    for k, br in enumerate(report.branches, start=1):
        print(f"branch {k}:")
        eqs = ", ".join(
            (p.to_latex() if latex else p.to_text()) + " = 0"
            for p in br.constraints.equations
        )
        print(f"  constraints: {eqs if eqs else '(none)'}")
        solved = render_solved_form(br.constraints, latex=latex)
        if solved:
            print(f"  solved form: {', '.join(solved)}")
        for v in br.vectors:
            print(f"  singular vector: {render_vector(alg, v, short=short, latex=latex)}")
        print(f"  verified: {'yes' if br.verified else 'no'}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    n = args.n or _infer_n(args.vector, args.constraints or "")
    alg = JacobiAlgebra(n)
    v = parse_vector(args.vector, alg)
    eqs = parse_constraints(args.constraints, n) if args.constraints else []
    try:
        cs = ConstraintSet.from_equations(n, eqs)
    except InconsistentConstraintsError:
        print("constraints are inconsistent", file=sys.stderr)
        return EXIT_PARSE
    report = is_singular(alg, v, cs)
    if args.format == "json":
        payload = {
            "vector": vector_to_json(alg, v),
            "constraints": constraints_to_json(cs),
            "by_generator": [
                {"generator": render_generator(g, n), "annihilates": ok}
                for g, ok in report.by_generator
            ],
            "singular": report.singular,
            "unverifiable": report.unverifiable,
        }
        print(_json_dump(payload))
        return EXIT_OK
    if report.unverifiable:
        print(f"unverifiable: {report.message}")
        return EXIT_OK
    for g, ok in report.by_generator:
        print(f"{render_generator(g, n)}: {'annihilates' if ok else 'does not annihilate'}")
    print(f"singular: {'yes' if report.singular else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "latex", "json"), default="text", help="output format"
    )
    common.add_argument(
        "--short-names",
        action="store_true",
        help="use the n=2 short names (b,c,d,h) in LaTeX output",
    )
    parser = argparse.ArgumentParser(
        prog="jv",
        description="Exact Verma-module computations over the Jacobi algebra",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="commutator of two basis generators", parents=[common])
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("normal-order", help="PBW normal form of a word", parents=[common])
    p.add_argument("word")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_normal_order)

    p = sub.add_parser("act", help="act with a generator on a module vector", parents=[common])
    p.add_argument("x")
    p.add_argument("vector")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser(
        "singular", help="search singular vectors of a given weight", parents=[common]
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--branch-budget", type=int, default=64)
    p.set_defaults(func=_cmd_singular)

    p = sub.add_parser(
        "verify", help="check the lowest-weight conditions on a vector", parents=[common]
    )
    p.add_argument("vector")
    p.add_argument("--constraints", default="")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidDimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BranchBudgetExceededError as exc:
        print(f"solver budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
