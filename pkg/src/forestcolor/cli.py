"""Command-line entry points.

Exit codes: 0 success, 1 a check failed (verify, check-sparse), 2 the
hypothesis does not hold, 3 the parameters are outside the engine's regime,
64 usage or input errors, 65 size-guard violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import constructions as cons
from .engine import HypothesisViolation, RegimeViolation, color
from .graph import GraphError, Params, SizeGuardError, WeightedMultigraph, format_fraction, girth, subset_potential
from .io import DocumentError, load, parse_coloring, serialize, serialize_coloring
from .potential import InfeasibleConstraint, check_strict_sparsity, min_potential, min_potential_bruteforce
from .verify import brute_force_color, is_critical, verify_coloring

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_HYPOTHESIS = 2
EXIT_REGIME = 3
EXIT_USAGE = 64
EXIT_SIZE = 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _exact(value: int, params: Params) -> str:
    return f"{format_fraction(params.unscale(value))} (scaled {value})"


def _ids(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad id list {text!r}") from exc


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"bad rational {text!r}") from exc


def _load(path: str) -> WeightedMultigraph:
    try:
        g = load(path)
    except OSError as exc:
        raise _UsageError(str(exc)) from exc
    for note in g.warnings:
        print(f"warning: {note}", file=sys.stderr)
    return g


def _emit_graph(g: WeightedMultigraph) -> None:
    sys.stdout.write(serialize(g))


# -- subcommands ----------------------------------------------------------


def _cmd_color(args) -> int:
    g = _load(args.file)
    try:
        col, trace = color(g, strategy=args.strategy)
    except HypothesisViolation as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        json.dump({"witness": exc.witness, "potential": _exact(exc.potential, g.params)}, sys.stdout)
        sys.stdout.write("\n")
        return EXIT_HYPOTHESIS
    except RegimeViolation as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_REGIME
    for note in trace.diagnostics:
        print(f"note: {note}", file=sys.stderr)
    sys.stdout.write(serialize_coloring(col, trace.to_list()))
    return EXIT_OK


def _cmd_potential(args) -> int:
    g = _load(args.file)
    subset = g.vertices if args.subset is None else _ids(args.subset)
    missing = [v for v in subset if v not in g]
    if missing:
        raise _UsageError(f"vertices {missing} are not in the graph")
    print(_exact(subset_potential(g, subset), g.params))
    return EXIT_OK


def _print_subset(result, params: Params) -> None:
    print(_exact(result.potential, params))
    print("subset: " + ",".join(map(str, result.sorted())))


def _cmd_min_potential(args) -> int:
    g = _load(args.file)
    _print_subset(min_potential(g, args.constraint), g.params)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load(args.file)
    try:
        with open(args.coloring) as fh:
            col = parse_coloring(fh.read())
    except OSError as exc:
        raise _UsageError(str(exc)) from exc
    try:
        verdict = verify_coloring(g, col)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    if verdict.ok:
        print("ok")
        return EXIT_OK
    for v in verdict.violations:
        print(f"{v.kind} class {v.cls}: " + ",".join(map(str, v.vertices)))
    return EXIT_FAIL


def _cmd_check_sparse(args) -> int:
    g = _load(args.file)
    result = check_strict_sparsity(g, _fraction(args.a), _fraction(args.b))
    if result.ok:
        print("ok")
        return EXIT_OK
    print("violated by subset: " + ",".join(map(str, sorted(result.witness or ()))))
    return EXIT_FAIL


def _cmd_girth(args) -> int:
    value = girth(_load(args.file))
    print("inf" if value == float("inf") else int(value))
    return EXIT_OK


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind in ("dodecahedron", "cycle", "grid"):
        params = Params(args.d1, args.d2)
        if kind == "dodecahedron":
            g = cons.dodecahedron(params)
        elif kind == "cycle":
            g = cons.cycle(params, args.n)
        else:
            g = cons.grid_subdivided(params, args.rows, args.cols, args.s)
    elif kind == "flag":
        parts = []
        for item in args.part:
            path, _, v = item.rpartition(":")
            if not path:
                raise _UsageError(f"--part needs FILE:VERTEX, got {item!r}")
            parts.append((_load(path), _ids(v)[0]))
        g = cons.attach_flag(parts, _ids(args.assignment))
    else:
        if args.file is None or args.vertex is None:
            raise _UsageError(f"construct {kind} needs a graph file and --vertex")
        host = _load(args.file)
        if kind == "pennon":
            g = cons.attach_double_pennon(host, args.vertex)
        elif kind == "pendant-host":
            g = cons.attach_pendant_host(host, args.vertex)
        else:
            g = cons.attach_null_leaf(host, args.vertex, args.color)
    _emit_graph(g)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    g = _load(args.file)
    if args.what == "color":
        col = brute_force_color(g)
        if col is None:
            print("no desired coloring exists", file=sys.stderr)
            return EXIT_FAIL
        sys.stdout.write(serialize_coloring(col))
    elif args.what == "min-potential":
        _print_subset(min_potential_bruteforce(g, args.constraint), g.params)
    else:
        critical = is_critical(g)
        print("critical" if critical else "not critical")
        return EXIT_OK if critical else EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="forestcolor", description="Colorings of weighted multigraphs into two bounded-degree forests.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("color", help="color a graph that satisfies the hypothesis")
    p.add_argument("file")
    p.add_argument("--strategy", choices=["strict", "guarded"], default="strict")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("potential", help="exact potential of the graph or a subset")
    p.add_argument("file")
    p.add_argument("--subset", help="comma-separated vertex ids")
    p.set_defaults(func=_cmd_potential)

    constraints = ["any", "nonempty", "nonempty-nonspanning"]
    p = sub.add_parser("min-potential", help="minimum subset potential")
    p.add_argument("file")
    p.add_argument("--constraint", choices=constraints, default="any")
    p.set_defaults(func=_cmd_min_potential)

    p = sub.add_parser("verify", help="check a coloring document")
    p.add_argument("file")
    p.add_argument("--coloring", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-sparse", help="is e(H) < a*n(H) - b for every subgraph H")
    p.add_argument("file")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True, help="write negative values as --b=-1/7")
    p.set_defaults(func=_cmd_check_sparse)

    p = sub.add_parser("girth", help="length of a shortest cycle, or inf")
    p.add_argument("file")
    p.set_defaults(func=_cmd_girth)

    p = sub.add_parser("construct", help="emit a generated graph document")
    p.add_argument("kind", choices=["pennon", "flag", "pendant-host", "null-leaf", "dodecahedron", "cycle", "grid"])
    p.add_argument("file", nargs="?", help="host graph for pennon, pendant-host and null-leaf")
    p.add_argument("--vertex", type=int)
    p.add_argument("--color", type=int, choices=[1, 2], default=1, help="color index for null-leaf")
    p.add_argument("--part", action="append", default=[], help="flag part as FILE:VERTEX, repeatable")
    p.add_argument("--assignment", default="", help="flag part index per star vertex, comma-separated")
    p.add_argument("--d1", type=int, default=2)
    p.add_argument("--d2", type=int, default=6)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--s", type=int, default=0)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("oracle", help="brute-force counterparts for small graphs")
    p.add_argument("what", choices=["color", "min-potential", "critical"])
    p.add_argument("file")
    p.add_argument("--constraint", choices=constraints, default="any")
    p.set_defaults(func=_cmd_oracle)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (_UsageError, DocumentError, GraphError, InfeasibleConstraint, cons.ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
