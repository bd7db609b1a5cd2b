"""Finite posets stored as bit-packed up-set rows.

Element ``i`` of an ``n``-element poset is the integer ``i``; ``up[i]`` is a
bitmask with bit ``j`` set iff ``i <= j``.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_CORE_SIZE = 64
MAX_CANONICAL_SIZE = 12


class OrderError(ValueError):
    pass


class NotReflexive(OrderError):
    def __init__(self, x: int):
        super().__init__(f"relation is not reflexive at {x}")
        self.x = x


class NotAntisymmetric(OrderError):
    def __init__(self, x: int, y: int):
        super().__init__(f"relation is not antisymmetric: {x} <= {y} <= {x}")
        self.x, self.y = x, y


class NotTransitive(OrderError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"relation is not transitive: {x} <= {y} <= {z} but not {x} <= {z}")
        self.x, self.y, self.z = x, y, z


class NotASemilattice(OrderError):
    def __init__(self, x: int, y: int):
        super().__init__(f"elements {x} and {y} have no least upper bound")
        self.x, self.y = x, y


class NotALattice(OrderError):
    pass


class SizeLimitExceeded(ValueError):
    pass


def bits(mask: int) -> Iterable[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


@dataclass(frozen=True)
class Poset:
    size: int
    up: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    down: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.size > MAX_CORE_SIZE:
            raise SizeLimitExceeded(f"poset size {self.size} exceeds {MAX_CORE_SIZE}")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("need exactly one label per element")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be pairwise distinct")
        down = [0] * self.size
        for i, row in enumerate(self.up):
            for j in bits(row):
                down[j] |= 1 << i
        object.__setattr__(self, "down", tuple(down))

    # construction

    @classmethod
    def from_covers(cls, size: int, edges: Iterable[tuple[int, int]],
                    labels: Sequence[str] | None = None) -> "Poset":
        """Reflexive-transitive closure of ``edges`` (pairs ``(lower, upper)``)."""
        up = [1 << i for i in range(size)]
        for a, b in edges:
            up[a] |= 1 << b
        # Warshall over bitmask rows
        for k in range(size):
            bk = 1 << k
            for i in range(size):
                if up[i] & bk:
                    up[i] |= up[k]
        for i in range(size):
            for j in bits(up[i]):
                if j != i and up[j] >> i & 1:
                    raise NotAntisymmetric(i, j)
        return cls(size, tuple(up), tuple(labels) if labels is not None else None)

    @classmethod
    def from_edge_string(cls, elements: str, edges: str) -> "Poset":
        """Build from appendix-style text, e.g. ``("oiab", "oa ob ai bi")``."""
        index = {c: i for i, c in enumerate(elements)}
        pairs = [(index[e[0]], index[e[1]]) for e in edges.split()]
        return cls.from_covers(len(elements), pairs, labels=tuple(elements))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(n, tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, tuple(1 << i for i in range(n)))

    # queries

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool((self.up[x] | self.down[x]) >> y & 1)

    def relation(self) -> list[list[bool]]:
        return [[self.leq(i, j) for j in range(self.size)] for i in range(self.size)]

    def name(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def minimal(self) -> list[int]:
        return [x for x in range(self.size) if self.down[x] == 1 << x]

    def maximal(self) -> list[int]:
        return [x for x in range(self.size) if self.up[x] == 1 << x]

    def upper_covers(self, x: int) -> int:
        strict = self.up[x] & ~(1 << x)
        covers = strict
        for y in bits(strict):
            covers &= ~(self.up[y] & ~(1 << y))
        return covers

    def heights(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        h = [0] * self.size
        for x in sorted(range(self.size), key=lambda v: bin(self.down[v]).count("1")):
            for y in bits(self.down[x] & ~(1 << x)):
                h[x] = max(h[x], h[y] + 1)
        return h

    def depths(self) -> list[int]:
        """Length of the longest chain starting at each element."""
        return dual(self).heights()

    def induced(self, elements: Iterable[int]) -> "Poset":
        """Subposet on ``elements`` (in the given order), reindexed from 0."""
        keep = list(elements)
        pos = {x: i for i, x in enumerate(keep)}
        up = []
        for x in keep:
            row = 0
            for y in bits(self.up[x]):
                if y in pos:
                    row |= 1 << pos[y]
            up.append(row)
        labels = tuple(self.labels[x] for x in keep) if self.labels is not None else None
        return Poset(len(keep), tuple(up), labels)

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset whose element ``perm[i]`` plays the role of old element ``i``."""
        up = [0] * self.size
        for i in range(self.size):
            row = 0
            for j in bits(self.up[i]):
                row |= 1 << perm[j]
            up[perm[i]] = row
        labels = None
        if self.labels is not None:
            new = [""] * self.size
            for i, lab in enumerate(self.labels):
                new[perm[i]] = lab
            labels = tuple(new)
        return Poset(self.size, tuple(up), labels)

    def __str__(self) -> str:
        edges = " ".join(self.name(a) + self.name(b) for a, b in sorted(covers(self)))
        return f"Poset({self.size}: {edges})"


@dataclass(frozen=True)
class JoinTable:
    size: int
    join: tuple[tuple[int, ...], ...]

    def __call__(self, x: int, y: int) -> int:
        return self.join[x][y]


def validate(relation: Sequence[Sequence[bool]], labels: Sequence[str] | None = None) -> Poset:
    """Check the partial-order axioms and return the poset.

    Raises the first violated axiom with a witness, scanning reflexivity,
    then antisymmetry, then transitivity.
    """
    n = len(relation)
    if any(len(row) != n for row in relation):
        raise ValueError("relation must be square")
    for x in range(n):
        if not relation[x][x]:
            raise NotReflexive(x)
    for x in range(n):
        for y in range(x + 1, n):
            if relation[x][y] and relation[y][x]:
                raise NotAntisymmetric(x, y)
    for x in range(n):
        for y in range(n):
            if not relation[x][y]:
                continue
            for z in range(n):
                if relation[y][z] and not relation[x][z]:
                    raise NotTransitive(x, y, z)
    up = tuple(to_mask(j for j in range(n) if relation[i][j]) for i in range(n))
    return Poset(n, up, tuple(labels) if labels is not None else None)


def covers(p: Poset) -> set[tuple[int, int]]:
    return {(x, y) for x in range(p.size) for y in bits(p.upper_covers(x))}


def dual(p: Poset) -> Poset:
    return Poset(p.size, p.down, p.labels)


def add_bottom(p: Poset, label: str | None = None) -> Poset:
    """Ordinal sum of a one-element poset below ``p``; the new element is index ``n``."""
    n = p.size
    labels = None
    if p.labels is not None:
        if label is None:
            label = next(c for c in "0_#$%&*" + "".join(map(chr, range(0x21, 0x7f)))
                         if c not in p.labels)
        labels = p.labels + (label,)
    up = p.up + ((1 << (n + 1)) - 1,)
    return Poset(n + 1, up, labels)


def remove_element(p: Poset, x: int) -> Poset:
    return p.induced(i for i in range(p.size) if i != x)


def upper_bounds(p: Poset, xs: Iterable[int]) -> frozenset[int]:
    return frozenset(bits(upper_bounds_mask(p, to_mask(xs))))


def upper_bounds_mask(p: Poset, mask: int) -> int:
    ub = p.full
    for x in bits(mask):
        ub &= p.up[x]
    return ub


def minimal_in(p: Poset, mask: int) -> list[int]:
    return [x for x in bits(mask) if p.down[x] & mask == 1 << x]


def mi_elements(p: Poset) -> frozenset[int]:
    return frozenset(x for x in range(p.size) if p.upper_covers(x).bit_count() == 1)


def join_semilattice_table(p: Poset) -> JoinTable:
    n = p.size
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        join[x][x] = x
        for y in range(x + 1, n):
            ub = p.up[x] & p.up[y]
            least = minimal_in(p, ub)
            if len(least) != 1:
                raise NotASemilattice(x, y)
            join[x][y] = join[y][x] = least[0]
    return JoinTable(n, tuple(map(tuple, join)))


def is_join_semilattice(p: Poset) -> bool:
    try:
        join_semilattice_table(p)
    except NotASemilattice:
        return False
    return True


def is_lattice(p: Poset) -> bool:
    return is_join_semilattice(p) and is_join_semilattice(dual(p))


def bottom(p: Poset) -> int | None:
    mins = p.minimal()
    return mins[0] if len(mins) == 1 and p.up[mins[0]] == p.full else None


def top(p: Poset) -> int | None:
    maxs = p.maximal()
    return maxs[0] if len(maxs) == 1 and p.down[maxs[0]] == p.full else None


def is_chain(p: Poset) -> bool:
    return all(p.comparable(x, y) for x in range(p.size) for y in range(x + 1, p.size))


# canonical form

def _refine(p: Poset, colour: list[int]) -> list[int]:
    """Equitable refinement by strict up/down colour multisets.

    Colours are ranks of sorted signatures, so the result depends only on
    the isomorphism type of (p, colour).
    """
    n = p.size
    while True:
        sigs = []
        for x in range(n):
            ups = sorted(colour[y] for y in bits(p.up[x] & ~(1 << x)))
            downs = sorted(colour[y] for y in bits(p.down[x] & ~(1 << x)))
            sigs.append((colour[x], tuple(ups), tuple(downs)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colour)):
            return new
        colour = new


def _certificate_rows(p: Poset, order: list[int]) -> tuple[int, ...]:
    pos = [0] * p.size
    for i, x in enumerate(order):
        pos[x] = i
    rows = []
    for x in order:
        row = 0
        for y in bits(p.up[x]):
            row |= 1 << pos[y]
        rows.append(row)
    return tuple(rows)


def canonical_form(p: Poset) -> tuple[tuple[int, ...], str]:
    """Return ``(perm, certificate)``; ``perm[i]`` is the canonical index of element ``i``.

    Individualisation/refinement over all leaves, keeping the least relation
    matrix.  Exponential only in the size of symmetric colour classes.
    """
    n = p.size
    if n > MAX_CANONICAL_SIZE:
        raise SizeLimitExceeded(f"canonical_form supports n <= {MAX_CANONICAL_SIZE}, got {n}")
    heights, depths = p.heights(), p.depths()
    start = [(p.down[x].bit_count(), p.up[x].bit_count(), heights[x], depths[x]) for x in range(n)]
    ranks = {s: i for i, s in enumerate(sorted(set(start)))}
    colour = _refine(p, [ranks[s] for s in start])

    best: tuple[int, ...] | None = None
    best_order: list[int] = []
    stack = [colour]
    while stack:
        col = stack.pop()
        counts: dict[int, int] = {}
        for c in col:
            counts[c] = counts.get(c, 0) + 1
        split = min((c for c, k in counts.items() if k > 1), default=None)
        if split is None:
            order = sorted(range(n), key=col.__getitem__)
            rows = _certificate_rows(p, order)
            if best is None or rows < best:
                best, best_order = rows, order
            continue
        for v in reversed([x for x in range(n) if col[x] == split]):
            sigs = [(c, 0 if x == v else 1) for x, c in enumerate(col)]
            r = {s: i for i, s in enumerate(sorted(set(sigs)))}
            stack.append(_refine(p, [r[s] for s in sigs]))
    perm = [0] * n
    for i, x in enumerate(best_order):
        perm[x] = i
    cert = f"{n}:" + "".join(f"{row:0{(n + 3) // 4}x}" for row in best)
    return tuple(perm), cert


def certificate(p: Poset) -> str:
    return canonical_form(p)[1]


def canonical(p: Poset) -> Poset:
    """Canonically relabelled copy of ``p`` (labels dropped)."""
    perm, _ = canonical_form(p)
    return Poset(p.size, p.relabel(perm).up)


def from_certificate(cert: str) -> Poset:
    n_text, body = cert.split(":")
    n = int(n_text)
    width = (n + 3) // 4
    up = tuple(int(body[i * width:(i + 1) * width], 16) for i in range(n))
    return Poset(n, up)


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return p.size == q.size and certificate(p) == certificate(q)
