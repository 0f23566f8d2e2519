"""Command-line interface.

Exit codes: 0 when the verdict is true / the statement holds / the search is
exhausted, 1 when it is false / a counterexample is found, 2 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import fileformat
from .core import (
    DomainError,
    PreconditionError,
    associativity_witness,
    format_subset,
    subset,
)
from .dsl import DSLError, hunt, parse
from .enumeration import EnumerationSpec, Filter, enumerate, named_alphabet
from .ideals import (
    _generated,
    _is_bi,
    _is_idempotent,
    _is_left,
    _is_quasi,
    _is_right,
)
from .regularity import (
    is_regular,
    verify_corollary13,
    verify_corollary14,
    verify_lemma11,
    verify_proposition7,
    verify_theorem8,
    verify_theorem9,
    verify_theorem12,
)

OK, FALSE, USAGE = 0, 1, 2

_VERIFIERS = {
    "7": verify_proposition7,
    "8": verify_theorem8,
    "9": verify_theorem9,
    "11": verify_lemma11,
    "12": verify_theorem12,
    "13": verify_corollary13,
    "14": verify_corollary14,
}


class UsageError(Exception):
    pass


def _parse_subset(text: str, order: int) -> int:
    try:
        elems = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--subset expects comma-separated indices, got {text!r}") from None
    if not elems:
        raise UsageError("--subset must name at least one element")
    bad = [e for e in elems if not 0 <= e < order]
    if bad:
        raise UsageError(f"--subset index {bad[0]} outside 0..{order - 1}")
    return subset(*elems)


def cmd_check(args) -> int:
    H = fileformat.load(args.file)
    w = associativity_witness(H)
    if w is None:
        print("associative: yes (hypersemigroup)")
        return OK
    print("associative: no")
    print(f"witness {w}")
    return FALSE


def cmd_props(args) -> int:
    H = fileformat.load(args.file)
    A = _parse_subset(args.subset, H.order)
    assoc = associativity_witness(H) is None
    yn = {True: "yes", False: "no"}
    print(f"subset {format_subset(A)}")
    print(f"left ideal: {yn[_is_left(H, A)]}")
    print(f"right ideal: {yn[_is_right(H, A)]}")
    print(f"ideal: {yn[_is_left(H, A) and _is_right(H, A)]}")
    print(f"bi-ideal: {yn[_is_bi(H, A)] if assoc else 'n/a (not associative)'}")
    print(f"quasi-ideal: {yn[_is_quasi(H, A)]}")
    print(f"idempotent: {yn[_is_idempotent(H, A)]}")
    if assoc:
        g = _generated(H, A)
        print(f"R(A) = {format_subset(g.right)}")
        print(f"L(A) = {format_subset(g.left)}")
        print(f"I(A) = {format_subset(g.two_sided)}")
    else:
        print("generated ideals: n/a (not associative)")
    return OK


def cmd_regular(args) -> int:
    H = fileformat.load(args.file)
    ev = is_regular(H)
    print(ev)
    return OK if ev else FALSE


def cmd_verify(args) -> int:
    H = fileformat.load(args.file)
    report = _VERIFIERS[args.theorem](H)
    if report.theorem.startswith("thm12"):
        both = "true" if report.details["regular"] else "false"
        if report.holds:
            print(f"equivalence holds: both sides {both}")
        else:
            d = report.details
            print(f"equivalence fails: regular={d['regular']}, ideal condition={d['ideal_condition']}")
    else:
        print(f"{report.theorem}: {'holds' if report.holds else 'fails'} "
              f"({report.checked} instances checked)")
    if report.details and not report.theorem.startswith("thm12"):
        for k, v in report.details.items():
            print(f"  {k}: {v}")
    if report.witness is not None:
        print(f"witness: {report.witness}")
    return OK if report.holds else FALSE


def cmd_enumerate(args) -> int:
    cells = named_alphabet(args.alphabet, args.order)
    spec = EnumerationSpec(args.order,
                           Filter.ASSOCIATIVE if args.associative else Filter.ALL,
                           args.canonical, cells)
    spec.validate()
    if args.count:
        print(enumerate(spec))
        return OK
    out = sys.stdout

    def visit(H):
        out.write(fileformat.dumps(H) + "\n")

    enumerate(spec, visit, count_regular=False)
    return OK


def cmd_hunt(args) -> int:
    if args.conjecture_file:
        text = Path(args.conjecture_file).read_text(encoding="utf-8")
    else:
        text = args.conjecture
    c = parse(text)
    premise = parse(args.assuming) if args.assuming else None
    result = hunt(c, args.max_order, assuming=premise, alphabet=args.alphabet,
                  alphabet_from=args.alphabet_from,
                  canonicalize=args.canonical, workers=args.workers)
    print(f"conjecture: {c}")
    if premise is not None:
        print(f"assuming: {premise}")
    if result.restriction:
        print(f"restriction: {result.restriction}")
    print(f"structures examined: {result.stats.visited}")
    if result.exhausted:
        print(f"exhausted: no counterexample up to order {args.max_order}")
        return OK
    print("counterexample found")
    print(fileformat.dumps(result.counterexample.structure))
    print(result.counterexample)
    return FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypersemi", description="Finite hypersemigroup toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="associativity verdict")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("props", help="ideal predicates and generated ideals of a subset")
    s.add_argument("file")
    s.add_argument("--subset", required=True, help="comma-separated element indices, e.g. 0,2")
    s.set_defaults(func=cmd_props)

    s = sub.add_parser("regular", help="regularity verdict with evidence")
    s.add_argument("file")
    s.set_defaults(func=cmd_regular)

    s = sub.add_parser("verify", help="check a theorem on one structure")
    s.add_argument("file")
    s.add_argument("--theorem", required=True, choices=list(_VERIFIERS))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="enumerate structures of one order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--associative", action="store_true")
    s.add_argument("--canonical", action="store_true")
    s.add_argument("--count", action="store_true", help="print stats instead of structures")
    s.add_argument("--alphabet", default="all", choices=["all", "singletons", "singletons-full"])
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("hunt", help="search for a counterexample to a conjecture")
    s.add_argument("--max-order", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--conjecture")
    g.add_argument("--conjecture-file")
    s.add_argument("--alphabet", default="all", choices=["all", "singletons", "singletons-full"])
    s.add_argument("--assuming", help="only examine structures satisfying this conjecture")
    s.add_argument("--alphabet-from", type=int, default=1,
                   help="first order the alphabet restriction applies to")
    s.add_argument("--canonical", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_hunt)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except (UsageError, DomainError, PreconditionError, DSLError,
            fileformat.StructureFileError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
