"""Command line entry point.

Every command writes line records to stdout. Exit status is 0 when the check
holds, 1 when it finds a violation and 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import nu as nu_mod
from . import verify
from .core2d import TwoOrbifold, classify_two_orbifold
from .splitproc import run_split
from .sumtree import (
    InvalidTree,
    canonicalize,
    efficiency_violations,
    equivalent,
    validate,
)
from .textfmt import Document, ParseError, parse

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str | None) -> Document:
    if path is None:
        raise UsageError("this command needs a document (-f FILE, or -f - for stdin)")
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse(text)


def _realization(args, name: str):
    doc = _load(args.file)
    try:
        return doc.realization(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


def cmd_validate(args, out) -> int:
    t = _realization(args, args.realization)
    vs = validate(t)
    for v in vs:
        out(f"violation: {v}")
    if not vs:
        out(f"valid: {args.realization}")
    return VIOLATION if vs else OK


def cmd_classify(args, out) -> int:
    if args.genus < 0 or any(o < 2 for o in args.orders):
        raise UsageError("genus must be non-negative and cone orders at least 2")
    out(str(classify_two_orbifold(TwoOrbifold(args.genus, tuple(args.orders)))))
    return OK


def cmd_efficient(args, out) -> int:
    t = _realization(args, args.realization)
    bad = efficiency_violations(t)
    for node, e in bad:
        out(f"inefficient: node {node} ({t.atom(node).name}); sum {e}")
    if not bad:
        out(f"efficient: {args.realization}")
    return VIOLATION if bad else OK


def cmd_canonicalize(args, out) -> int:
    out(str(canonicalize(_realization(args, args.realization))))
    return OK


def cmd_equivalent(args, out) -> int:
    doc = _load(args.file)
    try:
        a, b = doc.realization(args.first), doc.realization(args.second)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    same = equivalent(a, b)
    out(f"first: {canonicalize(a)}")
    out(f"second: {canonicalize(b)}")
    out(f"equivalent: {'yes' if same else 'no'}")
    return OK if same else VIOLATION


def cmd_split(args, out) -> int:
    t = _realization(args, args.realization)
    tr = run_split(t, args.strategy, args.seed)
    for s in tr.steps:
        out(f"step: {s}")
    out(f"final: {tr.final}")
    agrees = tr.final == canonicalize(t)
    out(f"agrees with canonical form: {'yes' if agrees else 'no'}")
    return OK if agrees else VIOLATION


def cmd_nu(args, out) -> int:
    t = _realization(args, args.realization)
    try:
        value = nu_mod.nu(t, args.p)
    except (nu_mod.HasVertexSums, nu_mod.Inefficient) as exc:
        out(f"refused: {exc}")
        return VIOLATION
    replay = nu_mod.nu_replay(t, args.p)
    out(f"nu: {value}; p: {args.p}; replay: {replay}")
    return OK if value == replay else VIOLATION


def _report(reports, out) -> int:
    for r in reports:
        for line in r.lines():
            out(line)
    failed = sum(not r.ok for r in reports)
    out(f"suites: {len(reports)}; failed: {failed}")
    return VIOLATION if failed else OK


def cmd_verify(args, out) -> int:
    if args.max_edges < 0 or args.iters < 0:
        raise UsageError("--max-edges and --iters must be non-negative")
    reports = verify.run_all(args.max_edges, exhaustive=not args.random, seed=args.seed,
                             iters=args.iters)
    return _report(reports, out)


def cmd_lemma_check(args, out) -> int:
    reports = [
        verify.check_tree_lemma(args.max_edges),
        verify.check_alpha_invariance(min(args.max_edges, 5)),
        verify.check_external_c(min(args.max_edges, 5)),
    ]
    return _report(reports, out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbisum", description=__doc__.splitlines()[0])
    ap.add_argument("-f", "--file", help="document with atom and realization declarations ('-' for stdin)")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_real(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("realization")
        p.set_defaults(func=func)
        return p

    with_real("validate", cmd_validate, "check tree shape, build order and attachments")
    p = sub.add_parser("classify", help="classify a closed orientable 2-orbifold")
    p.add_argument("genus", type=int)
    p.add_argument("orders", type=int, nargs="*")
    p.set_defaults(func=cmd_classify)
    with_real("efficient", cmd_efficient, "list identity nodes on sums of their own type")
    with_real("canonicalize", cmd_canonicalize, "summands and sum types of the reduced realization")
    p = sub.add_parser("equivalent", help="compare canonical forms")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equivalent)
    p = with_real("split", cmd_split, "run the phase-ordered split process")
    p.add_argument("--strategy", choices=("first-fit", "random"), default="first-fit")
    p.add_argument("--seed", type=int, default=0)
    p = with_real("nu", cmd_nu, "count p-cyclic sums touching a vertex-free component")
    p.add_argument("--p", type=int, required=True)
    p = sub.add_parser("verify", help="run every invariance suite")
    p.add_argument("--max-edges", type=int, default=5)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="enumerate all small instances (default)")
    mode.add_argument("--random", action="store_true", help="draw random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=200)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("lemma-check", help="tree lemma and alpha-sum suites only")
    p.add_argument("--max-edges", type=int, default=6)
    p.set_defaults(func=cmd_lemma_check)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK

    def out(line: str):
        print(line)

    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
    except InvalidTree as exc:
        for v in exc.violations:
            out(f"violation: {v}")
        return VIOLATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
