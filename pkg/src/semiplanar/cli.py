"""Command-line front end: ``semiplanar count|planar|census|verify-paper|bench``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from collections import Counter
from pathlib import Path

from . import catalog
from .catalog import Catalog, UnknownId
from .census import census, random_join_semilattice, read_census, write_census
from .groupoid import SpecError, StructureSpec, from_join_semilattice, parse_specs
from .order import NotASemilattice, OrderError, Poset, SizeLimitExceeded, join_semilattice_table
from .planarity import semilattice_verdict
from .subcount import count_subuniverses, count_subuniverses_naive
from .verify import Context, RunReport, check_names, run_checks, run_spec
from .dyadic import DyadicValue

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def read_poset_file(text: str) -> Poset:
    """``elements: abcd`` and ``edges: ab bc`` lines (covers or comparabilities, lower first)."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("elements", "edges") or key in fields:
            raise InputError(f"line {lineno}: expected 'elements:' or 'edges:', got {raw.strip()!r}")
        fields[key] = value.strip()
    if "elements" not in fields:
        raise InputError("missing 'elements:' line")
    elements = fields["elements"].replace(" ", "")
    try:
        return Poset.from_edge_string(elements, fields.get("edges", ""))
    except (OrderError, KeyError, ValueError) as exc:
        raise InputError(f"bad order: {exc}") from exc


def _catalog_report(entry: catalog.CatalogEntry, jobs: int) -> RunReport:
    start = time.perf_counter()
    if entry.groupoid is not None:
        g = entry.groupoid
    else:
        g = from_join_semilattice(join_semilattice_table(entry.poset))
    sub = count_subuniverses(g, jobs=jobs)
    return RunReport(entry.id, sub, DyadicValue(sub, 8 - g.size), (time.perf_counter() - start) * 1000)


def cmd_count(args: argparse.Namespace) -> int:
    if args.input:
        specs: list[StructureSpec] = parse_specs(Path(args.input).read_text(encoding="utf-8"))
        if not specs:
            raise InputError(f"{args.input}: no structure blocks found")
        reports = [run_spec(s, args.jobs) for s in specs]
    else:
        reports = [_catalog_report(catalog.build(args.id), args.jobs)]
    for r in reports:
        print(r.render())
        print()
    return EXIT_OK


def cmd_planar(args: argparse.Namespace) -> int:
    if args.input:
        p = read_poset_file(Path(args.input).read_text(encoding="utf-8"))
    else:
        entry = catalog.build(args.id)
        if entry.poset is None:
            raise InputError(f"{entry.id} is a partial groupoid, not an order")
        p = entry.poset
    try:
        verdict = semilattice_verdict(p)
    except NotASemilattice as exc:
        raise InputError(f"not a join-semilattice: {p.name(exc.x)} and {p.name(exc.y)} "
                         "have no least upper bound") from exc
    print(verdict.describe(p))
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    if args.read:
        n, rows = read_census(args.census_file)
    else:
        n = args.n
        if n is None:
            raise InputError("census needs a size n (or --read with --census-file)")
        rows = census(n, with_planarity=True, jobs=args.jobs)
        if args.census_file:
            write_census(args.census_file, n, rows)
    verdicts = Counter(r.verdict for r in rows)
    print(f"n={n}: {len(rows)} classes of join-semilattices")
    for verdict, count in sorted(verdicts.items(), key=lambda kv: str(kv[0])):
        print(f"  {verdict}: {count}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    only = None
    if args.only:
        only = [name for item in args.only for name in item.split(",") if name]
        unknown = set(only) - set(check_names())
        if unknown:
            raise InputError(f"unknown check(s) {sorted(unknown)}; choose from {', '.join(check_names())}")
    cat = Catalog(Path(args.appendix).read_text(encoding="utf-8")) if args.appendix else catalog.default_catalog()
    ctx = Context(catalog=cat, seed=args.seed, jobs=args.jobs, census_file=args.census_file)
    results = []
    for r in run_checks(ctx, only):
        print(r.line(), flush=True)
        results.append(r)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_FAILED


def _ms(fn, *a) -> tuple[int, float]:
    start = time.perf_counter()
    value = fn(*a)
    return value, (time.perf_counter() - start) * 1000


def cmd_bench(args: argparse.Namespace) -> int:
    cases = []
    for key in catalog.SIGMA_TABLE:
        cases.append((key, catalog.build(key).groupoid))
    rng = random.Random(args.seed)
    for size in args.sizes or [14]:
        for i in range(args.samples):
            p = random_join_semilattice(rng, max_size=size, min_size=size)
            cases.append((f"random{size}#{i}", from_join_semilattice(join_semilattice_table(p))))
    print(f"{'structure':<14}{'n':>4}{'|Sub|':>9}{'naive ms':>11}{'pruned ms':>11}")
    mismatches = 0
    for name, g in cases:
        slow, t_slow = _ms(count_subuniverses_naive, g)
        fast, t_fast = _ms(count_subuniverses, g)
        flag = "" if slow == fast else f"  MISMATCH naive={slow}"
        mismatches += slow != fast
        print(f"{name:<14}{g.size:>4}{fast:>9}{t_slow:>11.2f}{t_fast:>11.2f}{flag}")
    return EXIT_OK if not mismatches else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semiplanar",
                                     description="Subuniverse counts and planarity of small semilattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count subuniverses of appendix-style blocks or a catalog structure")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE")
    src.add_argument("--id", metavar="NAME")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("planar", help="planarity verdict for a semilattice")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="file with 'elements:' and 'edges:' lines")
    src.add_argument("--id", metavar="NAME")
    p.set_defaults(func=cmd_planar)

    p = sub.add_parser("census", help="enumerate n-element join-semilattices with verdicts")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--census-file", metavar="PATH")
    p.add_argument("--read", action="store_true", help="summarise an existing census file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify-paper", help="run the reproduction checklist")
    p.add_argument("--only", action="append", metavar="CHECK", help=", ".join(check_names()))
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--census-file", metavar="PATH", help="precomputed n=8 census to reuse")
    p.add_argument("--appendix", metavar="FILE", help="alternative appendix transcription")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="naive versus pruned counter timings")
    p.add_argument("sizes", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "census" and args.read and not args.census_file:
        print("error: --read needs --census-file", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (InputError, SpecError, UnknownId, NotASemilattice, SizeLimitExceeded, OSError) as exc:
        message = exc.args[0] if isinstance(exc, UnknownId) else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
