from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest

from semiplanar.groupoid import PartialGroupoid
from semiplanar.order import OrderError, Poset, validate


def brute_count(g: PartialGroupoid) -> int:
    """Third, dependency-free counter: test each subset with plain sets."""
    total = 0
    triples = g.triples()
    for mask in range(1 << g.size):
        members = {i for i in range(g.size) if mask >> i & 1}
        if all(r in members for x, y, r in triples if x in members and y in members):
            total += 1
    return total


def brute_isomorphic(p: Poset, q: Poset) -> bool:
    if p.size != q.size:
        return False
    n = p.size
    return any(all(p.leq(a, b) == q.leq(perm[a], perm[b]) for a in range(n) for b in range(n))
               for perm in permutations(range(n)))


def brute_classes(posets: list[Poset]) -> list[Poset]:
    reps: list[Poset] = []
    for p in posets:
        if not any(brute_isomorphic(p, r) for r in reps):
            reps.append(p)
    return reps


def naturally_labelled_posets(n: int):
    """Every poset on 0..n-1 whose order extends the natural order of indices."""
    pairs = list(combinations(range(n), 2))
    for choice in range(1 << len(pairs)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if choice >> k & 1:
                rel[i][j] = True
        try:
            yield validate(rel)
        except OrderError:
            continue


def random_poset(rng: random.Random, n: int, density: float = 0.35) -> Poset:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    perm = list(range(n))
    rng.shuffle(perm)
    return Poset.from_covers(n, [(perm[i], perm[j]) for i, j in edges])


def random_groupoid(rng: random.Random, n: int, density: float = 0.3) -> PartialGroupoid:
    ops = {}
    for x in range(n):
        for y in range(x, n):
            if rng.random() < density:
                ops[(x, y)] = rng.randrange(n)
    return PartialGroupoid(n, ops)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(7)
