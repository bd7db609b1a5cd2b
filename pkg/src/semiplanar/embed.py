"""Order embeddings (subposet witnesses) by backtracking over bitmask candidate sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .order import Poset, bits


@dataclass(frozen=True)
class Embedding:
    map: tuple[int, ...]

    def __getitem__(self, x: int) -> int:
        return self.map[x]

    def compose(self, outer: "Embedding") -> "Embedding":
        """``outer`` after ``self``."""
        return Embedding(tuple(outer.map[y] for y in self.map))

    def describe(self, x: Poset, host: Poset) -> str:
        if x.size == host.size and all(x.name(i) == host.name(self.map[i]) for i in range(x.size)):
            return "identity"
        return " ".join(f"{x.name(i)}->{host.name(self.map[i])}" for i in range(x.size))


def is_embedding(x: Poset, host: Poset, mapping: Sequence[int]) -> bool:
    """Direct double-loop check: injective, order preserving and reflecting."""
    if len(mapping) != x.size or len(set(mapping)) != x.size:
        return False
    return all(x.leq(a, b) == host.leq(mapping[a], mapping[b])
               for a in range(x.size) for b in range(x.size))


def _search_order(x: Poset) -> list[int]:
    degree = [(x.up[v] | x.down[v]).bit_count() for v in range(x.size)]
    order = []
    placed = 0
    remaining = set(range(x.size))
    # descending comparability degree, preferring elements comparable to
    # something already placed so that candidate masks shrink early
    while remaining:
        v = min(remaining, key=lambda u: (-((x.up[u] | x.down[u]) & placed).bit_count(), -degree[u], u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def iter_embeddings(x: Poset, host: Poset) -> Iterator[Embedding]:
    """All embeddings, lexicographic in the search order with ascending host candidates."""
    if x.size > host.size:
        return
    if x.size == 0:
        yield Embedding(())
        return
    xh, xd = x.heights(), x.depths()
    hh, hd = host.heights(), host.depths()
    static = []
    for v in range(x.size):
        nu, nd = x.up[v].bit_count(), x.down[v].bit_count()
        mask = 0
        for w in range(host.size):
            if (host.up[w].bit_count() >= nu and host.down[w].bit_count() >= nd
                    and hh[w] >= xh[v] and hd[w] >= xd[v]):
                mask |= 1 << w
        if not mask:
            return
        static.append(mask)
    order = _search_order(x)
    image = [-1] * x.size
    full = host.full

    def extend(k: int, used: int) -> Iterator[Embedding]:
        if k == x.size:
            yield Embedding(tuple(image))
            return
        v = order[k]
        cand = static[v] & ~used
        for u in order[:k]:
            fu = image[u]
            if x.up[v] >> u & 1:          # v < u
                cand &= host.down[fu]
            elif x.down[v] >> u & 1:      # u < v
                cand &= host.up[fu]
            else:
                cand &= full & ~(host.up[fu] | host.down[fu])
            if not cand:
                return
        for w in bits(cand):
            image[v] = w
            yield from extend(k + 1, used | 1 << w)
        image[v] = -1

    yield from extend(0, 0)


def find_embedding(x: Poset, host: Poset) -> Embedding | None:
    """First embedding of ``x`` into ``host`` in the fixed search order, or None."""
    return next(iter_embeddings(x, host), None)


def find_isomorphism(p: Poset, q: Poset) -> Embedding | None:
    if p.size != q.size:
        return None
    return find_embedding(p, q)


def contains_any(patterns: Iterable[tuple[str, Poset]] | Iterable[Poset],
                 host: Poset) -> tuple[str, Embedding] | None:
    """First pattern (in list order) that embeds in ``host``, with its witness."""
    for i, item in enumerate(patterns):
        name, pat = item if isinstance(item, tuple) else (str(i), item)
        emb = find_embedding(pat, host)
        if emb is not None:
            return name, emb
    return None
