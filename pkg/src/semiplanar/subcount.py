"""Counting subuniverses of partial groupoids.

Subsets are int bitmasks; counts are Python ints.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

import numpy as np

from .dyadic import DyadicValue
from .groupoid import PartialGroupoid, closure_pairs
from .order import SizeLimitExceeded, bits, to_mask

NAIVE_MAX_SIZE = 24
_CHUNK = 1 << 18


def _as_mask(x: Iterable[int] | int) -> int:
    return x if isinstance(x, int) else to_mask(x)


def is_subuniverse(g: PartialGroupoid, x: Iterable[int] | int) -> bool:
    mask = _as_mask(x)
    for pm, rb in closure_pairs(g):
        if mask & pm == pm and not mask & rb:
            return False
    return True


def count_subuniverses_naive(g: PartialGroupoid) -> int:
    """Test every subset against every constraint."""
    n = g.size
    if n > NAIVE_MAX_SIZE:
        raise SizeLimitExceeded(f"naive counting supports n <= {NAIVE_MAX_SIZE}, got {n}")
    pairs = closure_pairs(g)
    total = 0
    for start in range(0, 1 << n, _CHUNK):
        subsets = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        ok = np.ones(subsets.shape, dtype=bool)
        for pm, rb in pairs:
            ok &= ((subsets & pm) != pm) | ((subsets & rb) != 0)
        total += int(ok.sum())
    return total


class _Counter:
    """Include/exclude search with forced-closure propagation on one component."""

    def __init__(self, elements: list[int], pairs: list[tuple[int, int]]):
        self.pairs = pairs
        degree = {x: 0 for x in elements}
        for pm, rb in pairs:
            for x in bits(pm | rb):
                degree[x] += 1
        # by descending constraint degree, ties by index
        self.order = sorted(elements, key=lambda x: (-degree[x], x))
        self.universe = to_mask(elements)

    def propagate(self, inc: int, exc: int) -> tuple[int, int] | None:
        changed = True
        while changed:
            changed = False
            for pm, rb in self.pairs:
                if inc & pm == pm:
                    if exc & rb:
                        return None
                    if not inc & rb:
                        inc |= rb
                        changed = True
                elif exc & rb:
                    rest = pm & ~inc
                    # all but one argument included and the result excluded:
                    # the remaining argument must be excluded too
                    if rest & (rest - 1) == 0 and not exc & rest:
                        exc |= rest
                        changed = True
        return inc, exc

    def live(self, inc: int, exc: int) -> bool:
        for pm, rb in self.pairs:
            if not (inc & rb or exc & pm):
                return True
        return False

    def count(self, inc: int, exc: int) -> int:
        state = self.propagate(inc, exc)
        if state is None:
            return 0
        inc, exc = state
        free = self.universe & ~(inc | exc)
        if not free:
            return 1
        if not self.live(inc, exc):
            return 1 << free.bit_count()
        x = next(v for v in self.order if free >> v & 1)
        b = 1 << x
        return self.count(inc | b, exc) + self.count(inc, exc | b)

    def frontier(self, depth: int) -> list[tuple[int, int]]:
        """Disjoint partial assignments covering the search space, in fixed order."""
        states = [(0, 0)]
        for _ in range(depth):
            nxt = []
            for inc, exc in states:
                state = self.propagate(inc, exc)
                if state is None:
                    continue
                inc, exc = state
                free = self.universe & ~(inc | exc)
                if not free:
                    nxt.append((inc, exc))
                    continue
                x = next(v for v in self.order if free >> v & 1)
                nxt.append((inc | 1 << x, exc))
                nxt.append((inc, exc | 1 << x))
            states = nxt
        return states


def _components(g: PartialGroupoid) -> list[tuple[list[int], list[tuple[int, int]]]]:
    parent = list(range(g.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = closure_pairs(g)
    for pm, rb in pairs:
        members = list(bits(pm | rb))
        for m in members[1:]:
            a, b = find(members[0]), find(m)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(g.size):
        groups.setdefault(find(x), []).append(x)
    out = []
    for root in sorted(groups):
        members = groups[root]
        mask = to_mask(members)
        out.append((members, [(pm, rb) for pm, rb in pairs if (pm | rb) & mask]))
    return out


def _count_state(args: tuple[list[int], list[tuple[int, int]], int, int]) -> int:
    elements, pairs, inc, exc = args
    return _Counter(elements, pairs).count(inc, exc)


def count_subuniverses(g: PartialGroupoid, jobs: int = 1) -> int:
    """|Sub(g)|, including the empty set.

    The constraint hypergraph is split into connected components whose counts
    multiply.  With ``jobs > 1`` the top of each component's search tree is
    farmed out to worker processes; the sum does not depend on ``jobs``.
    """
    total = 1
    for elements, pairs in _components(g):
        if not pairs:
            total <<= len(elements)
            continue
        counter = _Counter(elements, pairs)
        if jobs <= 1 or len(elements) < 12:
            total *= counter.count(0, 0)
            continue
        states = counter.frontier(min(len(elements), max(1, jobs.bit_length() + 2)))
        work = [(elements, pairs, inc, exc) for inc, exc in states]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            total *= sum(pool.map(_count_state, work))
    return total


def sigma(g: PartialGroupoid) -> DyadicValue:
    return DyadicValue(count_subuniverses(g), 8 - g.size)


def sigma_exceeds(value: DyadicValue, bound: int = 127) -> bool:
    """``count * 2**(8-n) > bound`` in integer arithmetic."""
    shift = value.shift
    return value.count << max(0, shift) > bound << max(0, -shift)


def generated_subuniverse(g: PartialGroupoid, seed: Iterable[int]) -> frozenset[int]:
    return frozenset(bits(closure_chain(g, seed)[-1]))


def closure_chain(g: PartialGroupoid, seed: Iterable[int]) -> list[int]:
    """Masks Z0 = seed, Z(i+1) = Z(i) plus all defined products of Z(i), up to the fixpoint."""
    pairs = closure_pairs(g)
    z = to_mask(seed)
    chain = [z]
    while True:
        nxt = z
        for pm, rb in pairs:
            if z & pm == pm:
                nxt |= rb
        if nxt == z:
            return chain
        z = nxt
        chain.append(z)
