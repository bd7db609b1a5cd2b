"""Named structures: the small Kelly-Rival lattices, fences, crown, snake, chains.

Constraint blocks come from the bundled appendix transcription
(``data/appendix.txt``); orders come from the edge lists printed above each
block.  Two of those edge lists contain a typo (``ab`` for ``ob``), fixed
below so that every order reproduces its constraint block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .dyadic import DyadicValue
from .groupoid import PartialGroupoid, StructureSpec, from_spec, parse_specs
from .order import Poset, add_bottom, bits, dual, join_semilattice_table, NotASemilattice, OrderError
from .subcount import count_subuniverses


class UnknownId(KeyError):
    pass


class NotASubposetSemilattice(OrderError):
    pass


class AlreadySubsemilattice(Exception):
    """Raised by :func:`key_lemma_extension` when there is nothing to extend."""


class KeyLemmaViolation(AssertionError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    poset: Poset | None
    groupoid: PartialGroupoid | None
    expected_sub: int | None
    expected_sigma: DyadicValue | None
    anchor: str
    spec: StructureSpec | None = None

    @property
    def size(self) -> int:
        if self.poset is not None:
            return self.poset.size
        assert self.groupoid is not None
        return self.groupoid.size


# id -> (appendix result name, edge string, order is the dual of the edges?)
_SEMILATTICES: dict[str, tuple[str, str, bool]] = {
    "A0": ("A_0", "oa ob oc Ai Bi Ci aB aC bA bC cA cB", False),  # printed "oa ab oc ..."
    "B": ("B", "oa ob oc od ae be bf bg cf dg ei fi gi", False),  # printed "oa ab oc ..."
    "C": ("C", "ai bi ci da db eb ec fb gd ge og of", False),
    "D": ("D", "oa ob ac ae ad be cf dg ef eg fi gi", False),
    "E0": ("E_0", "ai bi ci db ea ed fd fc gb oe of og", False),
    "E1": ("E_1", "ai bi ca da ei fb fc gc gd hd he ja of og oh oj", False),
    "F0": ("F_0", "ai bi ca da eb ec fe fd gc of og", False),
    "F1": ("F_1", "oa od ab ac ah be bf cf cg dg ei fj gj hj ji", False),
    "G0": ("G_0", "oa ob ac ad ag bd ce de df eh ej fj gj hi ji", False),
    "H0": ("H_0", "oa ob oc ad bd be bh cg df dg eg fi gi hi", False),
    "EnrichedFence8": ("Enriched 8-element fence", "ae af bf bg cg ch dh fj gj ei ji hi", False),
    "Snake10": ("10-element snake", "oa ob ac ad bd ce de df eg eh fh gi hi", False),
}
for _base in ("B", "C", "D", "E0", "E1"):
    _name, _edges, _ = _SEMILATTICES[_base]
    _SEMILATTICES[_base + "dual"] = ("dual-" + _name, _edges, True)

# appendix blocks that are partial groupoids only
_GROUPOIDS = {
    "Crown8_i": "Eight-crown",
    "Fence8_i": "8fence & i",
    "DownFence9_i": "9-element down-fence (and i)",
    "UpFence9_fail": "9-element up-fence &i(failure)",
    "UpFence9_case1": "9-element up-fence & i; Case 1",
    "UpFence9_case2": "9-element up-fence&i k; Case 2",
}

_POSETS = {
    "Crown8": ("abcdefgh", "ae ah be bf cf cg dg dh"),
    "DownFence9": ("abcdefghj", "af bf bg cg ch dh dj ej"),
    "UpFence9": ("abcdefghj", "ae af bf bg cg ch dh dj"),
    "Fence8": ("abcdefgh", "ae be bf cf cg dg dh"),
}

KR_UP_TO_NINE = ("A0", "B", "Bdual", "C", "Cdual", "D", "Ddual", "E0", "E0dual", "F0")
SIGMA_TABLE = ("A0", "B", "Bdual", "C", "Cdual", "D", "Ddual", "E0", "E0dual",
               "E1", "E1dual", "F0", "F1", "G0", "H0")

_ALIASES = {
    "a_0": "A0", "e_0": "E0", "e_1": "E1", "f_0": "F0", "f_1": "F1", "g_0": "G0", "h_0": "H0",
    "eight-crown": "Crown8_i", "8-crown": "Crown8", "snake": "Snake10",
    "enriched 8-element fence": "EnrichedFence8", "10-element snake": "Snake10",
}


def appendix_text() -> str:
    return resources.files("semiplanar").joinpath("data/appendix.txt").read_text(encoding="utf-8")


def all_ids() -> list[str]:
    return list(_SEMILATTICES) + list(_POSETS) + list(_GROUPOIDS)


def normalize_id(name: str) -> str:
    """Resolve case-insensitive names and aliases (``dual-B`` -> ``Bdual``, ``chain4`` -> ``Chain(4)``)."""
    key = name.strip()
    m = re.fullmatch(r"(?i)chain\(?(\d+)\)?", key)
    if m:
        return f"Chain({int(m.group(1))})"
    low = key.lower()
    if low in _ALIASES:
        return _ALIASES[low]
    if low.startswith("dual-") or low.startswith("dual_"):
        key = key[5:].replace("_", "") + "dual"
        low = key.lower()
    for known in all_ids():
        if known.lower() == low:
            return known
    for known, (appendix_name, _, _) in _SEMILATTICES.items():
        if appendix_name.lower() == name.strip().lower():
            return known
    for known, appendix_name in _GROUPOIDS.items():
        if appendix_name.lower() == name.strip().lower():
            return known
    raise UnknownId(name)


def _expected_sigma(spec: StructureSpec) -> DyadicValue | None:
    if spec.expected_sub is None:
        return None
    return DyadicValue(spec.expected_sub, 8 - len(spec.elements))


class Catalog:
    """Registry over one appendix transcription (the bundled one by default)."""

    def __init__(self, text: str | None = None):
        self.text = appendix_text() if text is None else text
        self.specs = {s.name: s for s in parse_specs(self.text)}
        self._cache: dict[str, CatalogEntry] = {}

    def build(self, id: str) -> CatalogEntry:
        key = normalize_id(id)
        if key not in self._cache:
            self._cache[key] = self._build(key, id)
        return self._cache[key]

    def _build(self, key: str, id: str) -> CatalogEntry:
        m = re.fullmatch(r"Chain\((\d+)\)", key)
        if m:
            n = int(m.group(1))
            if n < 1:
                raise UnknownId(id)
            p = Poset.chain(n)
            return CatalogEntry(key, p, None, 1 << n, DyadicValue(1 << n, 8 - n),
                                "every subset of a chain is closed")
        if key in _SEMILATTICES:
            name, edges, is_dual = _SEMILATTICES[key]
            spec = self.specs[name]
            p = Poset.from_edge_string("".join(spec.elements), edges)
            if is_dual:
                p = dual(p)
            return CatalogEntry(key, p, from_spec(spec), spec.expected_sub, _expected_sigma(spec),
                                f"appendix, Result for A={name}", spec)
        if key in _GROUPOIDS:
            name = _GROUPOIDS[key]
            spec = self.specs[name]
            return CatalogEntry(key, None, from_spec(spec), spec.expected_sub, _expected_sigma(spec),
                                f"appendix, Result for A={name}", spec)
        if key in _POSETS:
            elements, edges = _POSETS[key]
            return CatalogEntry(key, Poset.from_edge_string(elements, edges), None, None, None,
                                "fence/crown posets, black top element removed")
        raise UnknownId(id)


@lru_cache(maxsize=None)
def default_catalog() -> Catalog:
    return Catalog()


def appendix_specs() -> dict[str, StructureSpec]:
    return default_catalog().specs


def build(id: str) -> CatalogEntry:
    return default_catalog().build(id)


def kr_members_up_to_nine() -> list[CatalogEntry]:
    return [build(i) for i in KR_UP_TO_NINE]


# the enriched partial groupoids, written out from the join equations

def _groupoid(elements: str, equations: str) -> PartialGroupoid:
    index = {c: i for i, c in enumerate(elements)}
    ops = {}
    for eq in equations.split():
        lhs, r = eq.split("=")
        x, y = lhs.split("v")
        ops[(index[x], index[y])] = index[r]
    return PartialGroupoid(len(elements), ops, tuple(elements))


def enrich_down_fence() -> PartialGroupoid:
    return _groupoid("abcdefghji", "avb=f bvc=g cvd=h dve=j gvh=i bvh=i gvd=i")


def enrich_crown() -> PartialGroupoid:
    return _groupoid("abcdefghi", "avb=e avd=h bvc=f cvd=g fvg=i bvg=i fvd=i")


def enrich_up_fence(case: str = "fail") -> PartialGroupoid:
    base = "avb=f bvc=g cvd=h fvg=i avg=i fvc=i"
    case = case.lower()
    if case == "fail":
        return _groupoid("abcdefghji", base)
    if case == "case1":
        return _groupoid("abcdefghji", base + " hvj=i cvj=i")
    if case == "case2":
        return _groupoid("abcdefghjik", base + " hvj=k cvj=k")
    raise ValueError(f"unknown up-fence case {case!r}")


def sharpness_family(n: int) -> Poset:
    """L9 = F0 and Ln = Ln-1 with a new bottom."""
    if n < 9:
        raise ValueError("the sharpness family starts at n = 9")
    p = build("F0").poset
    labels = iter("0123456789")
    for _ in range(n - 9):
        p = add_bottom(p, next(labels, None))
    return p


# the Key Lemma construction B = S + {d}

@dataclass(frozen=True)
class KeyLemmaStep:
    elements: tuple[int, ...]           # B as a sorted tuple of host indices
    join: dict[tuple[int, int], int]    # join of B in host indices, both orders
    d: int
    j: int
    a: int
    b: int

    def poset(self, host: Poset) -> Poset:
        return host.induced(self.elements)


def _host_join(host: Poset, x: int, y: int) -> int:
    ub = host.up[x] & host.up[y]
    least = [z for z in bits(ub) if host.down[z] & ub == 1 << z]
    if len(least) != 1:
        raise NotASemilattice(x, y)
    return least[0]


def subposet_join(host: Poset, s: tuple[int, ...]) -> dict[tuple[int, int], int]:
    """Join of the subposet on ``s`` (host indices); raises if it is not a semilattice."""
    sub = host.induced(s)
    try:
        t = join_semilattice_table(sub)
    except NotASemilattice as exc:
        raise NotASubposetSemilattice(f"{s[exc.x]} and {s[exc.y]} have no join in S") from exc
    return {(s[x], s[y]): s[t.join[x][y]] for x in range(len(s)) for y in range(len(s))}


def key_lemma_extension(host: Poset, s: set[int] | frozenset[int] | tuple[int, ...]) -> KeyLemmaStep:
    """One step of the Key Lemma: adjoin d = a v_L b below the minimal offending join j.

    The join of B is assembled from the five case rules rather than from the
    order, so that :func:`key_lemma_postconditions` can compare the two.
    """
    s_sorted = tuple(sorted(s))
    join_s = subposet_join(host, s_sorted)
    offending: dict[int, list[tuple[int, int]]] = {}
    for ia, a in enumerate(s_sorted):
        for b in s_sorted[ia + 1:]:
            if join_s[(a, b)] != _host_join(host, a, b):
                offending.setdefault(join_s[(a, b)], []).append((a, b))
    if not offending:
        raise AlreadySubsemilattice("S is a subsemilattice of L")
    candidates = set(offending)
    j = min(x for x in candidates if not any(host.lt(y, x) for y in candidates))
    a, b = offending[j][0]
    d = _host_join(host, a, b)
    assert d not in s_sorted and host.lt(d, j)

    below_d = [x for x in s_sorted if host.leq(x, d)]
    join: dict[tuple[int, int], int] = {}
    b_elems = tuple(sorted(s_sorted + (d,)))
    for x in b_elems:
        for y in b_elems:
            if host.leq(x, y):
                join[(x, y)] = y
            elif host.leq(y, x):
                join[(x, y)] = x
            elif y == d:
                join[(x, y)] = join_s[(x, j)]
            elif x == d:
                join[(x, y)] = join_s[(j, y)]
            elif join_s[(x, y)] != j:
                join[(x, y)] = join_s[(x, y)]
            elif x in below_d and y in below_d:
                join[(x, y)] = d
            else:
                join[(x, y)] = j
    step = KeyLemmaStep(b_elems, join, d, j, a, b)
    failed = [k for k, ok in key_lemma_postconditions(host, s_sorted, step).items() if not ok]
    if failed:
        raise KeyLemmaViolation(f"postconditions failed for S={s_sorted}: {failed}")
    return step


def _groupoid_of(join: dict[tuple[int, int], int], elements: tuple[int, ...]) -> PartialGroupoid:
    pos = {x: i for i, x in enumerate(elements)}
    return PartialGroupoid(len(elements), {(pos[x], pos[y]): pos[r] for (x, y), r in join.items()})


def key_lemma_postconditions(host: Poset, s: tuple[int, ...], step: KeyLemmaStep) -> dict[str, bool]:
    """B is a semilattice, d has j as its only upper cover in B, |Sub B| <= 2 |Sub S|."""
    try:
        order_join = subposet_join(host, step.elements)
    except NotASubposetSemilattice:
        semilattice = False
    else:
        semilattice = order_join == step.join
    bp = step.poset(host)
    pos = {x: i for i, x in enumerate(step.elements)}
    unique_cover = bp.upper_covers(pos[step.d]) == 1 << pos[step.j]
    sub_b = count_subuniverses(_groupoid_of(step.join, step.elements))
    sub_s = count_subuniverses(_groupoid_of(subposet_join(host, s), s))
    return {"semilattice": semilattice, "unique_upper_cover": unique_cover, "phi_bound": sub_b <= 2 * sub_s}


def is_subsemilattice(host: Poset, s) -> bool:
    s = set(s)
    return all(_host_join(host, a, b) in s for a in s for b in s)


__all__ = [
    "CatalogEntry", "UnknownId", "NotASubposetSemilattice", "AlreadySubsemilattice",
    "KR_UP_TO_NINE", "SIGMA_TABLE", "all_ids", "normalize_id", "build",
    "kr_members_up_to_nine", "enrich_down_fence", "enrich_crown", "enrich_up_fence",
    "sharpness_family", "KeyLemmaStep", "KeyLemmaViolation", "key_lemma_extension",
    "key_lemma_postconditions", "subposet_join",
    "is_subsemilattice", "appendix_specs", "appendix_text", "Catalog", "default_catalog",
]
