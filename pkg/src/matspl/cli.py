"""matspl command line: build, splice, analyze, verify.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import AxiomViolation, MatroidError, NotMatched
from .jsonio import SCHEMA, dumps, load_matroid, matroid_from_doc, matroid_to_doc
from .verify import SUITES, run_suite


def _read(path: str):
    if path == "-":
        return matroid_from_doc(json.load(sys.stdin))
    return load_matroid(path)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    m = _read(args.input)
    _emit(dumps(matroid_to_doc(m)), args.output)
    return 0


def cmd_splice(args) -> int:
    from .splice import enumerate_splices, free_splice, matched_pair, splice_poset_dot, weak_order_covers
    M, N = _read(args.M), _read(args.N)
    pair = matched_pair(M, N)
    F = free_splice(pair)
    if not args.enumerate:
        if args.dot:
            _emit(splice_poset_dot([F], F), args.output)
        else:
            _emit(dumps({"schema": SCHEMA, "free_splice": matroid_to_doc(F)}), args.output)
        return 0
    splices = enumerate_splices(pair, cap=args.cap)
    if args.dot:
        _emit(splice_poset_dot(splices, F), args.output)
        return 0
    doc = {
        "schema": SCHEMA,
        "free_splice": matroid_to_doc(F),
        "free_index": splices.index(F),
        "splices": [matroid_to_doc(L, summary=False) for L in splices],
        "covers": [list(c) for c in weak_order_covers(splices)],
    }
    _emit(dumps(doc), args.output)
    return 0


def _sep_doc(s) -> dict:
    a, b = s.names()
    return {"A": list(a), "B": list(b)}


def cmd_analyze(args) -> int:
    from .constructions import base_orderable
    from .factor import (class_n_decompose, clones, is_irreducible, is_nested,
                         minimal_free_separators, nontrivial_separators, tree_to_dot)
    L = _read(args.input)
    chosen = args.separators or args.minimal or args.irreducible or args.clones or args.classify
    if not chosen:
        args.irreducible = args.clones = args.classify = True
    report = {"schema": SCHEMA, "ground": list(L.labels), "rank": L.r}
    tree = None
    if args.separators:
        report["separators"] = [_sep_doc(s) for s in nontrivial_separators(L)]
    if args.minimal:
        report["minimal_separators"] = [_sep_doc(s) for s in minimal_free_separators(L)]
    if args.irreducible:
        report["irreducible"] = is_irreducible(L)
    if args.clones:
        report["clones"] = [list(c) for c in clones(L)]
    if args.classify:
        tree = class_n_decompose(L)
        report["classify"] = {
            "nested": is_nested(L),
            "class_n": tree is not None,
            "factor_tree": tree.to_json() if tree is not None else None,
            "base_orderable": base_orderable(L),
        }
    if args.dot:
        if tree is None:
            tree = class_n_decompose(L)
        if tree is None:
            raise MatroidError("no factor tree: the matroid is not built from single elements by free splices")
        _emit(tree_to_dot(tree), args.output)
        return 0
    _emit(dumps(report), args.output)
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, n=args.n, seed=args.seed, count=args.count)
    _emit(dumps(report), args.output)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matspl", description="Free splices of matroids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="validate a matroid document and print its canonical form")
    p.add_argument("input", help="JSON file, or - for stdin")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("splice", help="free splice of a matched pair, optionally all splices")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--enumerate", action="store_true", help="list every splice with the weak order")
    p.add_argument("--dot", action="store_true", help="emit the weak-order Hasse diagram as DOT")
    p.add_argument("--cap", type=int, default=8, help="largest ground set to enumerate over")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_splice)

    p = sub.add_parser("analyze", help="separators, irreducibility, clones and classification")
    p.add_argument("input")
    p.add_argument("--separators", action="store_true")
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("--clones", action="store_true")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--dot", action="store_true", help="emit the factor tree as DOT")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--n", type=int, default=5, help="largest ground set size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20, help="random instances per suite")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotMatched as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AxiomViolation as exc:
        print(json.dumps({"error": exc.axiom, "witness": [list(w) for w in exc.witness]}),
              file=sys.stderr)
        return 1
    except MatroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
