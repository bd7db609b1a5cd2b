"""Named reproduction checks, shared by ``semiplanar verify-paper`` and the tests.

Each check takes a :class:`Context` (appendix transcription, seed, cached
censuses) and returns a :class:`CheckResult`.  Checks never raise on a
mismatch; they report it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable

from . import catalog
from .catalog import (AlreadySubsemilattice, Catalog, KeyLemmaViolation, enrich_crown,
                      enrich_down_fence, enrich_up_fence, key_lemma_extension, sharpness_family)
from .census import CensusRow, census, read_census, random_join_semilattice, all_lattices
from .dyadic import DyadicValue
from .embed import contains_any
from .groupoid import (PartialGroupoid, StructureSpec, from_join_semilattice, from_spec,
                       is_weak_subgroupoid, relabel_by_labels, restrict)
from .order import (Poset, add_bottom, certificate, is_join_semilattice, join_semilattice_table,
                    remove_element, bottom)
from .planarity import (NONPLANAR, PLANAR, UNKNOWN, kr_verdict, load_witness, platt_planar_lattice,
                        semilattice_verdict, verify_drawing)
from .subcount import count_subuniverses, count_subuniverses_naive, sigma

# published sigma values, kept independent of the appendix text
SIGMA_VALUES: dict[str, Fraction] = {
    "A0": Fraction(122), "B": Fraction(108), "Bdual": Fraction(114), "C": Fraction(123),
    "Cdual": Fraction(113), "D": Fraction(116), "Ddual": Fraction(124), "E0": Fraction(114),
    "E0dual": Fraction(110), "E1": Fraction(319, 4), "E1dual": Fraction(169, 2),
    "F0": Fraction(127), "F1": Fraction(355, 4), "G0": Fraction(395, 4), "H0": Fraction(199, 2),
}

# (|Sub|, sigma) of the enriched structures used to rule out the large Kelly-Rival members
ENRICHMENT_VALUES: dict[str, tuple[int, Fraction]] = {
    "DownFence9_i": (494, Fraction(247, 2)),
    "Crown8_i": (250, Fraction(125)),
    "UpFence9_fail": (548, Fraction(137)),
    "UpFence9_case1": (488, Fraction(122)),
    "UpFence9_case2": (914, Fraction(457, 4)),
    "EnrichedFence8": (312, Fraction(78)),
    "Snake10": (502, Fraction(251, 2)),
}

APPENDIX_BLOCKS = 23


@dataclass(frozen=True)
class RunReport:
    name: str
    sub_count: int
    sigma: DyadicValue
    elapsed_ms: float

    def render(self) -> str:
        return (f"Result for A={self.name}:  |Sub(A)| = {self.sub_count}, whence\n"
                f"sigma(A) = |Sub(A)|*2^(8-|A|) = {self.sigma.decimal():>21} .\n"
                f"({self.elapsed_ms:.1f} ms)")


def run_spec(spec: StructureSpec, jobs: int = 1) -> RunReport:
    start = time.perf_counter()
    g = from_spec(spec)
    sub = count_subuniverses(g, jobs=jobs)
    elapsed = (time.perf_counter() - start) * 1000
    return RunReport(spec.name, sub, DyadicValue(sub, 8 - g.size), elapsed)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float = 0.0
    budget: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.detail} ({self.elapsed:.1f}s, budget {self.budget:.0f}s)"


@dataclass
class Context:
    catalog: Catalog = field(default_factory=catalog.default_catalog)
    seed: int = 2024
    jobs: int = 1
    census_file: str | Path | None = None
    _census: dict[int, list[CensusRow]] = field(default_factory=dict)

    def census(self, n: int) -> list[CensusRow]:
        if n not in self._census:
            rows = None
            if self.census_file is not None and Path(self.census_file).exists():
                file_n, file_rows = read_census(self.census_file)
                if file_n == n and all(r.verdict is not None for r in file_rows):
                    rows = file_rows
            self._census[n] = rows if rows is not None else census(n, with_planarity=True, jobs=self.jobs)
        return self._census[n]


def _fail(problems: list[str], ok: str) -> tuple[bool, str]:
    if problems:
        more = f" (+{len(problems) - 3} more)" if len(problems) > 3 else ""
        return False, "; ".join(problems[:3]) + more
    return True, ok


def _semilattice_groupoid(p: Poset) -> PartialGroupoid:
    return from_join_semilattice(join_semilattice_table(p))


def check_sigma_table(ctx: Context) -> tuple[bool, str]:
    problems = []
    for key, expected in SIGMA_VALUES.items():
        entry = ctx.catalog.build(key)
        from_block = sigma(entry.groupoid)
        from_order = sigma(_semilattice_groupoid(entry.poset))
        if from_block != expected:
            problems.append(f"{key}: constraint block gives {from_block.decimal()}, expected {float(expected)}")
        if from_order != expected:
            problems.append(f"{key}: order gives {from_order.decimal()}, expected {float(expected)}")
    return _fail(problems, f"{len(SIGMA_VALUES)} values reproduced")


def check_enrichment_values(ctx: Context) -> tuple[bool, str]:
    built = {
        "DownFence9_i": enrich_down_fence(),
        "Crown8_i": enrich_crown(),
        "UpFence9_fail": enrich_up_fence("fail"),
        "UpFence9_case1": enrich_up_fence("case1"),
        "UpFence9_case2": enrich_up_fence("case2"),
    }
    problems = []
    for key, (sub, value) in ENRICHMENT_VALUES.items():
        sources = [("appendix", ctx.catalog.build(key).groupoid)]
        if key in built:
            sources.append(("equations", built[key]))
        for origin, g in sources:
            got = count_subuniverses(g)
            if got != sub or DyadicValue(got, 8 - g.size) != value:
                problems.append(f"{key} ({origin}): |Sub|={got}, expected {sub}")
    return _fail(problems, f"{len(ENRICHMENT_VALUES)} structures reproduced")


def _catalog_groupoids(cat: Catalog) -> list[tuple[str, PartialGroupoid]]:
    out = []
    for key in catalog.all_ids():
        entry = cat.build(key)
        if entry.groupoid is not None:
            out.append((key, entry.groupoid))
        if entry.poset is not None and is_join_semilattice(entry.poset):
            out.append((key + "/order", _semilattice_groupoid(entry.poset)))
    return out


def check_counter_oracle(ctx: Context, samples: int = 200, max_size: int = 14) -> tuple[bool, str]:
    problems = []
    cases = _catalog_groupoids(ctx.catalog)
    rng = random.Random(ctx.seed)
    for i in range(samples):
        cases.append((f"random#{i}", _semilattice_groupoid(random_join_semilattice(rng, max_size))))
    for name, g in cases:
        fast, slow = count_subuniverses(g), count_subuniverses_naive(g)
        if fast != slow:
            problems.append(f"{name}: pruned {fast} != naive {slow}")
    return _fail(problems, f"{len(cases)} structures agree")


def _random_weak_pair(rng: random.Random) -> tuple[PartialGroupoid, PartialGroupoid, list[int]]:
    big = _semilattice_groupoid(random_join_semilattice(rng, 10))
    keep = sorted(rng.sample(range(big.size), rng.randint(1, big.size)))
    small = restrict(big, keep)
    ops = {k: r for k, r in small.ops.items() if rng.random() < 0.7}
    return PartialGroupoid(small.size, ops), big, keep


def check_weak_subgroupoid(ctx: Context, samples: int = 500) -> tuple[bool, str]:
    cat = ctx.catalog
    pairs: list[tuple[str, PartialGroupoid, PartialGroupoid, list[int]]] = []
    for key in catalog.SIGMA_TABLE + ("EnrichedFence8", "Snake10"):
        entry = cat.build(key)
        full = from_join_semilattice(join_semilattice_table(entry.poset), entry.poset.labels)
        full = relabel_by_labels(full, entry.groupoid.labels)
        pairs.append((f"{key} block in its semilattice", entry.groupoid, full, list(range(full.size))))
    fail = cat.build("UpFence9_fail").groupoid
    for case in ("UpFence9_case1", "UpFence9_case2"):
        big = cat.build(case).groupoid
        inject = [big.labels.index(c) for c in fail.labels]
        pairs.append((f"UpFence9_fail in {case}", fail, big, inject))
    rng = random.Random(ctx.seed + 1)
    for i in range(samples):
        small, big, inject = _random_weak_pair(rng)
        pairs.append((f"random#{i}", small, big, inject))
    problems = []
    for name, small, big, inject in pairs:
        if not is_weak_subgroupoid(small, big, inject):
            problems.append(f"{name}: not a weak subgroupoid")
        elif sigma(small) < sigma(big):
            problems.append(f"{name}: sigma {sigma(small)} < {sigma(big)}")
    return _fail(problems, f"{len(pairs)} pairs monotone")


def check_key_lemma(ctx: Context, max_n: int = 7) -> tuple[bool, str]:
    problems = []
    pairs = steps = 0
    for n in range(1, max_n + 1):
        for row in ctx.census(n):
            host = row.poset
            for k in range(1, n + 1):
                for s in combinations(range(n), k):
                    sub = host.induced(s)
                    if not is_join_semilattice(sub):
                        continue
                    pairs += 1
                    sub_value = sigma(_semilattice_groupoid(sub))
                    if sub_value < row.sigma:
                        problems.append(f"{row.certificate} S={s}: sigma(S) < sigma(L)")
                    current, budget = s, n - k
                    while True:
                        try:
                            step = key_lemma_extension(host, current)
                        except AlreadySubsemilattice:
                            break
                        except KeyLemmaViolation as exc:
                            problems.append(f"{row.certificate}: {exc}")
                            break
                        steps += 1
                        budget -= 1
                        current = step.elements
                        if budget < 0:
                            problems.append(f"{row.certificate} S={s}: iteration did not terminate in time")
                            break
    return _fail(problems, f"{pairs} pairs (L, S), {steps} extension steps")


def check_bottom_doubling(ctx: Context, max_n: int = 7) -> tuple[bool, str]:
    posets = [(row.certificate, row.poset) for n in range(1, max_n + 1) for row in ctx.census(n)]
    for key in catalog.all_ids():
        p = ctx.catalog.build(key).poset
        if p is not None and is_join_semilattice(p):
            posets.append((key, p))
    problems = []
    for name, p in posets:
        sub = count_subuniverses(_semilattice_groupoid(p))
        doubled = count_subuniverses(_semilattice_groupoid(add_bottom(p)))
        if doubled != 2 * sub:
            problems.append(f"{name}: {doubled} != 2*{sub}")
    return _fail(problems, f"{len(posets)} semilattices double")


def check_sharpness(ctx: Context) -> tuple[bool, str]:
    problems = []
    for n in range(9, 15):
        p = sharpness_family(n)
        sub = count_subuniverses(_semilattice_groupoid(p))
        if sub != 127 << (n - 8):
            problems.append(f"n={n}: |Sub|={sub}, expected {127 << (n - 8)}")
        verdict = semilattice_verdict(p)
        if verdict.verdict != NONPLANAR:
            problems.append(f"n={n}: verdict {verdict.short()}")
    return _fail(problems, "n=9..14 have 127*2^(n-8) subuniverses and are nonplanar")


def check_main_theorem(ctx: Context, max_n: int = 8) -> tuple[bool, str]:
    from .planarity import _kr_patterns
    problems = []
    above = 0
    for n in range(1, max_n + 1):
        for row in ctx.census(n):
            if row.sigma <= 127:
                continue
            above += 1
            q = add_bottom(row.poset)
            hit = contains_any(_kr_patterns(), q)
            if hit is not None:
                problems.append(f"{row.certificate}: bottom extension contains {hit[0]}")
            if not platt_planar_lattice(q):
                problems.append(f"{row.certificate}: bottom extension fails Platt")
            if not row.verdict or not row.verdict.startswith(PLANAR + "("):
                problems.append(f"{row.certificate}: verdict {row.verdict}")
    return _fail(problems, f"{above} semilattices with sigma > 127, no exceptions")


def _minus_bottom(key: str) -> Poset:
    p = catalog.build(key).poset
    return remove_element(p, bottom(p))


def check_small_semilattices(ctx: Context) -> tuple[bool, str]:
    problems = []
    for n in range(1, 8):
        bad = [r for r in ctx.census(n) if not r.verdict or not r.verdict.startswith(PLANAR + "(")]
        if bad:
            problems.append(f"n={n}: {len(bad)} rows not Planar")
    rows = ctx.census(8)
    expected_drawn = {certificate(_minus_bottom(k)): k for k in ("C", "Ddual", "F0")}
    non_platt = {}
    for r in rows:
        if r.sub_count < 123:
            continue
        if not r.verdict or not r.verdict.startswith(PLANAR + "("):
            problems.append(f"{r.certificate} (|Sub|={r.sub_count}): verdict {r.verdict}")
        p = r.poset
        if not platt_planar_lattice(add_bottom(p)):
            non_platt[r.certificate] = p
    if set(non_platt) != set(expected_drawn):
        problems.append(f"non-Platt classes with |Sub| >= 123: {len(non_platt)}, expected C, Ddual, F0 minus bottom")
    for cert, key in expected_drawn.items():
        p = non_platt.get(cert)
        if p is None:
            continue
        witness = load_witness(key)
        if not verify_drawing(_minus_bottom(key), witness):
            problems.append(f"stored drawing for {key} minus bottom does not verify")
    nonplanar = [r for r in rows if r.verdict and r.verdict.startswith(NONPLANAR)]
    a0 = certificate(catalog.build("A0").poset)
    if [(r.sub_count, r.certificate) for r in nonplanar] != [(122, a0)]:
        problems.append(f"nonplanar rows: {[(r.sub_count, r.verdict) for r in nonplanar]}")
    unknown = sum(1 for r in rows if r.verdict and r.verdict.startswith(UNKNOWN))
    return _fail(problems, f"n<=7 planar; n=8: 3 drawn classes, A0 the only nonplanar "
                           f"({unknown} undecided rows all have |Sub| < 123)")


def check_kr_platt(ctx: Context, max_n: int = 9) -> tuple[bool, str]:
    problems = []
    total = 0
    for n in range(1, max_n + 1):
        for p in all_lattices(n):
            total += 1
            kr = kr_verdict(p)
            if kr.verdict == UNKNOWN:
                problems.append(f"{certificate(p)}: Kelly-Rival undecided")
            elif (kr.verdict == PLANAR) != platt_planar_lattice(p):
                problems.append(f"{certificate(p)}: Kelly-Rival {kr.verdict} disagrees with Platt")
    return _fail(problems, f"{total} lattices, oracles agree")


def check_appendix_golden(ctx: Context) -> tuple[bool, str]:
    specs = list(ctx.catalog.specs.values())
    problems = []
    if len(specs) != APPENDIX_BLOCKS:
        problems.append(f"{len(specs)} blocks parsed, expected {APPENDIX_BLOCKS}")
    for spec in specs:
        report = run_spec(spec, ctx.jobs)
        if report.sub_count != spec.expected_sub:
            problems.append(f"{spec.name}: |Sub|={report.sub_count}, printed {spec.expected_sub}")
        if spec.expected_sigma is None or report.sigma != Fraction(spec.expected_sigma):
            problems.append(f"{spec.name}: sigma {report.sigma.decimal()}, printed {spec.expected_sigma}")
    return _fail(problems, f"{len(specs)} blocks reproduced")


@dataclass(frozen=True)
class Check:
    name: str
    criterion: int
    budget: float
    run: Callable[[Context], tuple[bool, str]]


CHECKS: tuple[Check, ...] = (
    Check("sigma-table", 1, 5, check_sigma_table),
    Check("enrichment-values", 2, 5, check_enrichment_values),
    Check("counter-oracle", 3, 60, check_counter_oracle),
    Check("weak-subgroupoid-monotone", 4, 30, check_weak_subgroupoid),
    Check("key-lemma-sweep", 5, 600, check_key_lemma),
    Check("bottom-doubling", 6, 60, check_bottom_doubling),
    Check("sharpness-family", 7, 30, check_sharpness),
    Check("main-theorem", 8, 900, check_main_theorem),
    Check("small-semilattices", 9, 900, check_small_semilattices),
    Check("kr-platt-agreement", 10, 1200, check_kr_platt),
    Check("appendix-golden", 11, 5, check_appendix_golden),
)


def check_names() -> list[str]:
    return [c.name for c in CHECKS]


def run_check(check: Check, ctx: Context) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = check.run(ctx)
    except Exception as exc:  # a crash is a failed check, not an aborted run
        passed, detail = False, f"error: {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if passed and elapsed > check.budget:
        passed, detail = False, f"{detail}; over time budget"
    return CheckResult(check.name, passed, detail, elapsed, check.budget)


def run_checks(ctx: Context | None = None, only: list[str] | None = None) -> list[CheckResult]:
    ctx = ctx or Context()
    selected = [c for c in CHECKS if only is None or c.name in only]
    unknown = set(only or ()) - {c.name for c in CHECKS}
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(sorted(unknown))}")
    return [run_check(c, ctx) for c in selected]
