"""Command-line front end.

Exit codes: 0 ok, 1 a property or residual failed, 2 input could not be
parsed, 3 the options do not make sense together.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .checks import SUITES, VerifyConfig, run_suite
from .electro import extract_equations, load_fields
from .exterior import MAX_DIM, Form, FormSyntaxError, format_form, parse_form
from .hodge import StarVariant, star_closed, star_convention
from .polynomial import PolynomialSyntaxError
from .structures import Kind, SpacetimeStructure, make
from .tables import table_rows, table_text, TITLES

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_OPTION = 0, 1, 2, 3


class OptionError(Exception):
    pass


def _kind(name: str) -> Kind:
    try:
        return Kind.parse(name)
    except ValueError as exc:
        raise OptionError(str(exc)) from None


_RAW = {
    (Kind.GALILEAN, "h"): StarVariant.GALILEAN_H,
    (Kind.GALILEAN, "k"): StarVariant.GALILEAN_K,
    (Kind.CARROLLIAN, "h"): StarVariant.CARROLLIAN_H,
    (Kind.CARROLLIAN, "k"): StarVariant.CARROLLIAN_K,
    (Kind.MINKOWSKI, "h"): StarVariant.MINKOWSKI_METRIC,
}


def _form_json(a: Form) -> dict:
    names = ["dt"] + (["dx", "dy", "dz"] if a.n == 3 else [f"dx{i}" for i in range(1, a.n + 1)])
    return {
        "degree": a.degree,
        "form": format_form(a),
        "terms": {"^".join(names[i] for i in idx) or "1": str(c) for idx, c in a.items()},
    }


def cmd_star(args) -> int:
    kind = _kind(args.kind)
    if not 1 <= args.n < MAX_DIM:
        raise OptionError(f"--n must be in 1..{MAX_DIM - 1}")
    a = parse_form(args.literal, n=args.n)
    if args.variant == "table":
        out = star_convention(a, kind)
    else:
        variant = _RAW.get((kind, args.variant))
        if variant is None:
            raise OptionError(f"variant {args.variant!r} is not defined for {kind.value}")
        out = star_closed(a, make(kind, args.n), variant)
    if args.json:
        print(json.dumps(_form_json(out)))
    else:
        print(format_form(out))
    return EXIT_OK


def cmd_table(args) -> int:
    kind = _kind(args.kind)
    if args.json:
        rows = [{"degree": r.degree, "input": f"*{r.lhs}", "output": r.rhs} for r in table_rows(kind)]
        print(json.dumps({"kind": kind.value, "title": TITLES[kind], "rows": rows}, ensure_ascii=False))
    else:
        sys.stdout.write(table_text(kind))
    return EXIT_OK


def _load_structure(path: str) -> SpacetimeStructure:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _ParseError(f"cannot read structure file: {exc}") from None
    try:
        return SpacetimeStructure.from_json(doc)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise OptionError(f"bad structure: {exc}") from None


class _ParseError(Exception):
    pass


def cmd_verify(args) -> int:
    if args.suite not in SUITES + ("all",):
        raise OptionError(f"unknown suite {args.suite!r}; expected one of {', '.join(SUITES + ('all',))}")
    if not 2 <= args.max_dim <= MAX_DIM:
        raise OptionError(f"--max-dim must be in 2..{MAX_DIM}")
    structure = _load_structure(args.structure) if args.structure else None
    cfg = VerifyConfig(
        max_dim=args.max_dim,
        seed=args.seed,
        structure=structure,
        invariance_samples=args.invariance_samples,
        naturality_samples=args.naturality_samples,
    )
    results = run_suite(args.suite, cfg)
    ok = all(r.passed for r in results)
    if args.json:
        print(json.dumps({"passed": ok, "suites": [r.to_json() for r in results]}))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.name}: {r.cases} cases, {r.failures} failures")
            if r.counterexample:
                print(f"  counterexample: {r.counterexample}")
            for note in r.notes:
                print(f"  {note}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_maxwell(args) -> int:
    kind = _kind(args.kind)
    try:
        E, B = load_fields(args.file)
    except (OSError, json.JSONDecodeError, PolynomialSyntaxError, ValueError) as exc:
        raise _ParseError(f"cannot read field file: {exc}") from None
    report = extract_equations(E, B, kind)
    print(json.dumps(report.to_json(), indent=None if args.json else 2))
    return EXIT_OK if report.satisfied else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hodgestar", description="Exact Hodge stars on Lorentzian, Galilean and Carrollian spacetimes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("star", help="apply a star to a form literal")
    s.add_argument("literal", help='e.g. "dt^dx + 2/3 dy^dz"')
    s.add_argument("--kind", default="minkowski", help="minkowski, galilei or carroll")
    s.add_argument("--variant", default="table", help="table, h or k")
    s.add_argument("--n", type=int, default=3, help="spatial dimension")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_star)

    t = sub.add_parser("table", help="print the symbolic 1+3 star table")
    t.add_argument("kind")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("suite", help=", ".join(SUITES + ("all",)))
    v.add_argument("--max-dim", type=int, default=6)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--structure", help="JSON structure file")
    v.add_argument("--invariance-samples", type=int, default=200)
    v.add_argument("--naturality-samples", type=int, default=50)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("maxwell", help="extract the source-free field equations")
    m.add_argument("file", help='JSON file {"E": [...], "B": [...]}')
    m.add_argument("--kind", default="minkowski")
    m.add_argument("--json", action="store_true", help="compact single-line JSON")
    m.set_defaults(func=cmd_maxwell)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormSyntaxError, _ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OptionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPTION


if __name__ == "__main__":
    sys.exit(main())
