"""Isomorph-free generation of small join-semilattices and lattices, and censuses.

Join-semilattices grow by adding a new minimal element: deleting a minimal
element of a join-semilattice leaves a join-semilattice, so every class of
size n arises from one of size n-1.  Lattices are generated independently,
from the other end: prefixes of a linear extension of a lattice are
meet-semilattices with a bottom, which grow by adding maximal elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator

from .dyadic import DyadicValue
from .groupoid import from_join_semilattice
from .order import (Poset, SizeLimitExceeded, bits, canonical_form, from_certificate,
                    join_semilattice_table, top)
from .subcount import count_subuniverses

MAX_SEMILATTICE_SIZE = 8
MAX_LATTICE_SIZE = 9
GENERATOR_VERSION = "semiplanar-census-1"


def _extend_below(p: Poset, upset: int) -> Poset:
    n = p.size
    return Poset(n + 1, p.up + ((1 << n) | upset,))


def _join_extensions(p: Poset) -> Iterator[int]:
    """Up-sets U such that a new element with strict up-set U keeps joins."""
    full = p.full
    for u in range(1, full + 1):
        if any(p.up[x] & ~u for x in bits(u)):
            continue
        # the new element joined with x is the least element of U ∩ ↑x
        good = True
        for x in range(p.size):
            common = u & p.up[x]
            least = [y for y in bits(common) if p.down[y] & common == 1 << y]
            if len(least) != 1:
                good = False
                break
        if good:
            yield u


def _canonical(p: Poset) -> tuple[str, Poset]:
    perm, cert = canonical_form(p)
    return cert, Poset(p.size, p.relabel(perm).up)


@lru_cache(maxsize=None)
def _semilattices(n: int) -> tuple[Poset, ...]:
    if n == 1:
        return (Poset(1, (1,)),)
    found: dict[str, Poset] = {}
    for p in _semilattices(n - 1):
        for u in _join_extensions(p):
            cert, q = _canonical(_extend_below(p, u))
            found.setdefault(cert, q)
    return tuple(found[c] for c in sorted(found))


def all_join_semilattices(n: int) -> Iterator[Poset]:
    """One canonically labelled representative per class, ordered by certificate."""
    if n > MAX_SEMILATTICE_SIZE:
        raise SizeLimitExceeded(f"all_join_semilattices supports n <= {MAX_SEMILATTICE_SIZE}")
    if n < 1:
        return iter(())
    return iter(_semilattices(n))


def _meet_extensions(p: Poset) -> Iterator[int]:
    """Down-sets D such that a new maximal element with strict down-set D keeps meets."""
    full = p.full
    for d in range(1, full + 1):
        if any(p.down[x] & ~d for x in bits(d)):
            continue
        good = True
        for x in range(p.size):
            common = d & p.down[x]
            greatest = [y for y in bits(common) if p.up[y] & common == 1 << y]
            if len(greatest) != 1:
                good = False
                break
        if good:
            yield d


@lru_cache(maxsize=None)
def _meet_semilattices_with_bottom(n: int) -> tuple[Poset, ...]:
    if n == 1:
        return (Poset(1, (1,)),)
    found: dict[str, Poset] = {}
    for p in _meet_semilattices_with_bottom(n - 1):
        for d in _meet_extensions(p):
            up = list(p.up)
            for x in bits(d):
                up[x] |= 1 << p.size
            cert, q = _canonical(Poset(p.size + 1, tuple(up) + (1 << p.size,)))
            found.setdefault(cert, q)
    return tuple(found[c] for c in sorted(found))


def all_lattices(n: int) -> Iterator[Poset]:
    if n > MAX_LATTICE_SIZE:
        raise SizeLimitExceeded(f"all_lattices supports n <= {MAX_LATTICE_SIZE}")
    if n < 1:
        return iter(())
    return iter(p for p in _meet_semilattices_with_bottom(n) if top(p) is not None)


def all_posets(n: int) -> Iterator[Poset]:
    """Every poset class of size n by unrestricted maximal-element extension (slow; n <= 7)."""
    if n > 7:
        raise SizeLimitExceeded("all_posets supports n <= 7")
    if n < 1:
        return iter(())
    current = [Poset(1, (1,))]
    for k in range(1, n):
        found: dict[str, Poset] = {}
        for p in current:
            for d in range(1 << k):
                if any(p.down[x] & ~d for x in bits(d)):
                    continue
                up = list(p.up)
                for x in bits(d):
                    up[x] |= 1 << k
                cert, q = _canonical(Poset(k + 1, tuple(up) + (1 << k,)))
                found.setdefault(cert, q)
        current = [found[c] for c in sorted(found)]
    return iter(current)


def certificate_of(p: Poset) -> str:
    return canonical_form(p)[1]


# census

@dataclass(frozen=True)
class CensusRow:
    certificate: str
    size: int
    sub_count: int
    sigma: DyadicValue
    verdict: str | None = None

    @property
    def poset(self) -> Poset:
        return from_certificate(self.certificate)

    def line(self) -> str:
        return f"{self.certificate}\t{self.sub_count}\t{self.sigma.decimal()}\t{self.verdict or '-'}"


def measure(p: Poset, with_planarity: bool = False) -> CensusRow:
    from .planarity import semilattice_verdict

    g = from_join_semilattice(join_semilattice_table(p))
    sub = count_subuniverses(g)
    value = DyadicValue(sub, 8 - p.size)
    verdict = semilattice_verdict(p, value).short() if with_planarity else None
    return CensusRow(certificate_of(p), p.size, sub, value, verdict)


def census(n: int, with_planarity: bool = False, jobs: int = 1) -> list[CensusRow]:
    """One row per class of n-element join-semilattices, ordered by certificate."""
    posets = list(all_join_semilattices(n))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(partial(measure, with_planarity=with_planarity), posets, chunksize=16))
    else:
        rows = [measure(p, with_planarity) for p in posets]
    return sorted(rows, key=lambda r: r.certificate)


def write_census(path: str | Path, n: int, rows: list[CensusRow]) -> None:
    lines = [f"# n={n}\tgenerator={GENERATOR_VERSION}\trows={len(rows)}"]
    lines += [r.line() for r in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_census(path: str | Path) -> tuple[int, list[CensusRow]]:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    header = dict(part.split("=", 1) for part in text[0].lstrip("# ").split("\t"))
    n = int(header["n"])
    rows = []
    for line in text[1:]:
        if not line.strip():
            continue
        cert, sub, _sigma, verdict = line.split("\t")
        size = int(cert.split(":")[0])
        rows.append(CensusRow(cert, size, int(sub), DyadicValue(int(sub), 8 - size),
                              None if verdict == "-" else verdict))
    if int(header.get("rows", len(rows))) != len(rows):
        raise ValueError("census file truncated")
    return n, rows


def random_join_semilattice(rng, max_size: int = 14, min_size: int = 2) -> Poset:
    """Random union-closed family ordered by inclusion, of uniformly chosen size.

    Every finite join-semilattice is isomorphic to such a family (send x to
    the meet-irreducibles not above it), so all types have positive weight.
    """
    target = rng.randint(min_size, max_size)
    while True:
        ground = rng.randint(2, 7)
        family: set[int] = set()
        for _ in range(4 * target):
            x = rng.randrange(1, 1 << ground)
            new = {x} | {s | x for s in family}
            if len(family | new) > target:
                continue
            family |= new
            if len(family) == target:
                sets = sorted(family, key=lambda s: (s.bit_count(), s))
                up = tuple(sum(1 << j for j, t in enumerate(sets) if s & t == s) for s in sets)
                return Poset(len(sets), up)
