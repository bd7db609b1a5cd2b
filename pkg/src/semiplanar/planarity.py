"""Planarity verdicts for lattices and join-semilattices.

Two independent routes decide lattice planarity: forbidden subposets from
the Kelly-Rival list (members with at most nine elements) and Platt's
criterion (cover graph plus a bottom-top edge is planar).  Semilattices that
are not lattices are decided only by sufficient conditions; everything else
is ``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Union

import networkx as nx

from . import catalog
from .dyadic import DyadicValue
from .embed import Embedding, contains_any, find_isomorphism
from .groupoid import from_join_semilattice
from .order import (NotALattice, Poset, SizeLimitExceeded, add_bottom, bottom, covers,
                    is_lattice, join_semilattice_table, remove_element, top)
from .subcount import sigma, sigma_exceeds

MAX_GRAPH_SIZE = 16

PLANAR, NONPLANAR, UNKNOWN = "Planar", "NonPlanar", "Unknown"


class MissingCoordinate(KeyError):
    pass


class OracleDisagreement(AssertionError):
    pass


# undirected planarity

@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str                                  # "K5" or "K3,3"
    branch: tuple[int, ...]                    # for K3,3: first three vs last three
    paths: tuple[tuple[int, ...], ...]         # one per edge of the pattern


def _trace(sub: nx.Graph, branch: set[int]) -> list[tuple[int, ...]]:
    paths = []
    seen_edges = set()
    for b in sorted(branch):
        for nb in sorted(sub[b]):
            if frozenset((b, nb)) in seen_edges:
                continue
            path = [b, nb]
            prev, cur = b, nb
            while cur not in branch:
                nxt = next(v for v in sub[cur] if v != prev)
                path.append(nxt)
                prev, cur = cur, nxt
            for u, v in zip(path, path[1:]):
                seen_edges.add(frozenset((u, v)))
            paths.append(tuple(path))
    return paths


def _classify(sub: nx.Graph) -> KuratowskiWitness:
    branch = {v for v in sub if sub.degree(v) > 2}
    paths = _trace(sub, branch)
    if len(branch) == 5:
        return KuratowskiWitness("K5", tuple(sorted(branch)), tuple(paths))
    # K3,3: two-colour the branch vertices by the contracted paths
    contracted = nx.Graph((p[0], p[-1]) for p in paths)
    left, right = nx.bipartite.sets(contracted)
    return KuratowskiWitness("K3,3", tuple(sorted(left)) + tuple(sorted(right)), tuple(paths))


def verify_kuratowski(n: int, edges: Iterable[tuple[int, int]], w: KuratowskiWitness) -> bool:
    """Check that ``w`` is a subdivision of K5 or K3,3 inside the graph."""
    edge_set = {frozenset(e) for e in edges}
    branch = set(w.branch)
    if w.kind == "K5":
        if len(branch) != 5:
            return False
        wanted = {frozenset((a, b)) for a in branch for b in branch if a != b}
    elif w.kind == "K3,3":
        if len(branch) != 6:
            return False
        left, right = w.branch[:3], w.branch[3:]
        wanted = {frozenset((a, b)) for a in left for b in right}
    else:
        return False
    ends = [frozenset((p[0], p[-1])) for p in w.paths]
    if len(ends) != len(wanted) or set(ends) != wanted:
        return False
    interior_seen: set[int] = set()
    for p in w.paths:
        if any(frozenset((u, v)) not in edge_set for u, v in zip(p, p[1:])):
            return False
        inner = p[1:-1]
        if len(set(inner)) != len(inner) or set(inner) & (branch | interior_seen):
            return False
        if any(not 0 <= v < n for v in p):
            return False
        interior_seen |= set(inner)
    return True


def undirected_planar(n: int, edges: Iterable[tuple[int, int]]) -> tuple[bool, KuratowskiWitness | None]:
    edges = [tuple(e) for e in edges]
    if n > MAX_GRAPH_SIZE:
        raise SizeLimitExceeded(f"undirected_planar supports at most {MAX_GRAPH_SIZE} vertices")
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((a, b) for a, b in edges if a != b)
    planar, certificate = nx.check_planarity(g, counterexample=True)
    if planar:
        return True, None
    witness = _classify(certificate)
    assert verify_kuratowski(n, edges, witness)
    return False, witness


# lattices

def platt_graph(p: Poset) -> list[tuple[int, int]]:
    b, t = bottom(p), top(p)
    edges = sorted(covers(p))
    if b is not None and t is not None and b != t and (b, t) not in edges:
        edges.append((b, t))
    return edges


def platt_planar_lattice(p: Poset) -> bool:
    return platt_check(p)[0]


def platt_check(p: Poset) -> tuple[bool, KuratowskiWitness | None]:
    if not is_lattice(p):
        raise NotALattice("Platt's criterion applies to lattices only")
    return undirected_planar(p.size, platt_graph(p))


@dataclass(frozen=True)
class KRForbidden:
    pattern: str
    embedding: Embedding


@dataclass(frozen=True)
class PlattGraph:
    planar: bool
    witness: KuratowskiWitness | None = None


@dataclass(frozen=True)
class SigmaThreshold:
    value: DyadicValue


@dataclass(frozen=True)
class BottomExtensionPlanar:
    pass


@dataclass(frozen=True)
class DrawingWitnessUsed:
    id: str


Reason = Union[KRForbidden, PlattGraph, SigmaThreshold, BottomExtensionPlanar, DrawingWitnessUsed, None]


@dataclass(frozen=True)
class PlanarityVerdict:
    verdict: str
    reason: Reason = None

    def describe(self, host: Poset | None = None) -> str:
        r = self.reason
        if isinstance(r, KRForbidden):
            emb = r.embedding
            pattern = catalog.build(r.pattern).poset
            how = emb.describe(pattern, host) if host is not None else " ".join(map(str, emb.map))
            return f"{self.verdict}: contains {r.pattern} as subposet ({how})"
        if isinstance(r, PlattGraph):
            extra = f", {r.witness.kind} subdivision" if r.witness else ""
            return f"{self.verdict}: cover graph plus bottom-top edge is {'planar' if r.planar else 'nonplanar'}{extra}"
        if isinstance(r, SigmaThreshold):
            return f"{self.verdict}: sigma = {r.value} > 127"
        if isinstance(r, BottomExtensionPlanar):
            return f"{self.verdict}: adding a bottom gives a planar lattice"
        if isinstance(r, DrawingWitnessUsed):
            return f"{self.verdict}: stored drawing {r.id} verified"
        return self.verdict

    def short(self) -> str:
        kinds = {KRForbidden: "kr", PlattGraph: "platt", SigmaThreshold: "sigma",
                 BottomExtensionPlanar: "bottom", DrawingWitnessUsed: "drawing"}
        kind = kinds.get(type(self.reason), "none")
        if isinstance(self.reason, KRForbidden):
            kind += ":" + self.reason.pattern
        if isinstance(self.reason, DrawingWitnessUsed):
            kind += ":" + self.reason.id
        return f"{self.verdict}({kind})"


@lru_cache(maxsize=None)
def _kr_patterns() -> tuple[tuple[str, Poset], ...]:
    return tuple((e.id, e.poset) for e in catalog.kr_members_up_to_nine())


def kr_verdict(p: Poset) -> PlanarityVerdict:
    if not is_lattice(p):
        raise NotALattice("the Kelly-Rival criterion applies to lattices only")
    hit = contains_any([(i, q) for i, q in _kr_patterns() if q.size <= p.size], p)
    if hit is not None:
        return PlanarityVerdict(NONPLANAR, KRForbidden(*hit))
    if p.size <= 9:
        return PlanarityVerdict(PLANAR, None)
    return PlanarityVerdict(UNKNOWN, None)


def lattice_verdict(p: Poset) -> PlanarityVerdict:
    """Kelly-Rival and Platt together; raises if they disagree."""
    kr = kr_verdict(p)
    planar, witness = platt_check(p)
    if kr.verdict == UNKNOWN:
        return PlanarityVerdict(PLANAR if planar else NONPLANAR, PlattGraph(planar, witness))
    if (kr.verdict == PLANAR) != planar:
        raise OracleDisagreement(f"Kelly-Rival says {kr.verdict}, Platt says planar={planar}")
    if kr.verdict == NONPLANAR:
        return kr
    return PlanarityVerdict(PLANAR, PlattGraph(True))


def semilattice_verdict(p: Poset, value: DyadicValue | None = None) -> PlanarityVerdict:
    """First applicable of: sigma > 127, lattice criteria, planar bottom extension, stored drawing."""
    t = join_semilattice_table(p)
    if value is None:
        value = sigma(from_join_semilattice(t))
    if sigma_exceeds(value, 127):
        return PlanarityVerdict(PLANAR, SigmaThreshold(value))
    if is_lattice(p):
        return lattice_verdict(p)
    if p.size + 1 <= MAX_GRAPH_SIZE and platt_planar_lattice(add_bottom(p)):
        return PlanarityVerdict(PLANAR, BottomExtensionPlanar())
    for wid, wposet, witness in stored_witnesses():
        iso = find_isomorphism(p, wposet)
        if iso is None:
            continue
        moved = DrawingWitness({p.name(x): witness.coordinates[wposet.name(iso[x])] for x in range(p.size)})
        if verify_drawing(p, moved):
            return PlanarityVerdict(PLANAR, DrawingWitnessUsed(wid))
    return PlanarityVerdict(UNKNOWN, None)


# drawings

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class DrawingWitness:
    coordinates: Mapping[str, Point]


def parse_witness(text: str) -> DrawingWitness:
    coords: dict[str, Point] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'label x y'")
        label, x, y = parts
        if label in coords:
            raise ValueError(f"line {lineno}: duplicate label {label!r}")
        coords[label] = (Fraction(x), Fraction(y))
    return DrawingWitness(coords)


def render_witness(w: DrawingWitness) -> str:
    def q(v: Fraction) -> str:
        return f"{v.numerator}/{v.denominator}"
    return "".join(f"{lab} {q(x)} {q(y)}\n" for lab, (x, y) in w.coordinates.items())


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """``p`` lies on the closed segment ab."""
    return (_orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return (_on_segment(c, a, b) or _on_segment(d, a, b)
            or _on_segment(a, c, d) or _on_segment(b, c, d))


def verify_drawing(p: Poset, w: DrawingWitness) -> bool:
    """Exact check that ``w`` draws the Hasse diagram of ``p`` upward and without crossings."""
    pts = []
    for x in range(p.size):
        name = p.name(x)
        if name not in w.coordinates:
            raise MissingCoordinate(name)
        pts.append(w.coordinates[name])
    if len(set(pts)) != len(pts):
        return False
    edges = sorted(covers(p))
    if any(pts[a][1] >= pts[b][1] for a, b in edges):
        return False
    for a, b in edges:
        for v in range(p.size):
            if v not in (a, b) and _on_segment(pts[v], pts[a], pts[b]):
                return False
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1:]:
            if {a, b} & {c, d}:
                continue
            if _segments_meet(pts[a], pts[b], pts[c], pts[d]):
                return False
    return True


def drop_element(w: DrawingWitness, label: str) -> DrawingWitness:
    return DrawingWitness({k: v for k, v in w.coordinates.items() if k != label})


WITNESS_FILES = {"A0": "A0_minus_bottom.txt", "C": "C_minus_bottom.txt",
                 "Ddual": "Ddual_minus_bottom.txt", "F0": "F0_minus_bottom.txt"}


def load_witness(name: str) -> DrawingWitness:
    """Stored drawing by catalog id (``"C"``) or file name."""
    path = resources.files("semiplanar").joinpath("data/witnesses").joinpath(WITNESS_FILES.get(name, name))
    return parse_witness(path.read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def stored_witnesses() -> tuple[tuple[str, Poset, DrawingWitness], ...]:
    """``(id, poset, drawing)`` for each catalog lattice with its bottom removed."""
    out = []
    for cid, fname in WITNESS_FILES.items():
        p = catalog.build(cid).poset
        q = remove_element(p, bottom(p))
        out.append((f"{cid}-minus-bottom", q, load_witness(fname)))
    return tuple(out)


__all__ = [
    "PLANAR", "NONPLANAR", "UNKNOWN", "MissingCoordinate", "OracleDisagreement",
    "KuratowskiWitness", "verify_kuratowski", "undirected_planar", "platt_graph",
    "platt_planar_lattice", "platt_check", "KRForbidden", "PlattGraph", "SigmaThreshold",
    "BottomExtensionPlanar", "DrawingWitnessUsed", "PlanarityVerdict", "kr_verdict",
    "lattice_verdict", "semilattice_verdict", "DrawingWitness", "parse_witness",
    "render_witness", "verify_drawing", "drop_element", "stored_witnesses", "load_witness",
]
