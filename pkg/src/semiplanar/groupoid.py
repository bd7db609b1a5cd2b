"""Partial commutative groupoids and the appendix constraint dialect.

A structure block looks like::

    |A|=8, A(without commas)={oiabcABC}. Constraints:
    a+b=C a+c=B a+A=i  b+c=A
     b+g=i ; trailing comments are ignored

``+`` and ``@`` both denote the single partial operation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .order import JoinTable, bits

_ELEMENTS_RE = re.compile(r"A\(without commas\)=\{([^}]*)\}")
_CONSTRAINT_RE = re.compile(r"^(\S)([+@])(\S)=(\S)$")
_NEAR_CONSTRAINT_RE = re.compile(r"[+@].*=|=.*[+@]")
_RESULT_RE = re.compile(r"Result for A=(.*?):\s*\|Sub\(A\)\|\s*=\s*(\d+)")
_SIGMA_RE = re.compile(r"sigma\(A\)\s*=.*=\s*([0-9]+\.[0-9]+)")


class SpecError(ValueError):
    pass


class UnknownElement(SpecError):
    def __init__(self, char: str, lineno: int | None = None):
        where = f" (line {lineno})" if lineno is not None else ""
        super().__init__(f"unknown element {char!r}{where}")
        self.char, self.lineno = char, lineno


class ConflictingConstraint(SpecError):
    def __init__(self, pair: tuple[str, str], lineno: int | None = None):
        where = f" (line {lineno})" if lineno is not None else ""
        super().__init__(f"conflicting results for {pair[0]}{pair[1]}{where}")
        self.pair, self.lineno = pair, lineno


class MalformedLine(SpecError):
    def __init__(self, lineno: int, text: str = ""):
        super().__init__(f"malformed line {lineno}: {text.strip()!r}")
        self.lineno = lineno


class EmptySubset(ValueError):
    pass


@dataclass(frozen=True)
class PartialGroupoid:
    """Partial commutative operation; ``ops`` maps ``(x, y)`` with ``x <= y`` to the result."""

    size: int
    ops: Mapping[tuple[int, int], int]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        clean = {}
        for (x, y), r in self.ops.items():
            key = (x, y) if x <= y else (y, x)
            if key in clean and clean[key] != r:
                raise ConflictingConstraint((self.name(x), self.name(y)))
            for v in (x, y, r):
                if not 0 <= v < self.size:
                    raise ValueError(f"element {v} out of range")
            clean[key] = r
        object.__setattr__(self, "ops", dict(sorted(clean.items())))

    def name(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    @property
    def dom(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.ops)

    def op(self, x: int, y: int) -> int | None:
        return self.ops.get((x, y) if x <= y else (y, x))

    def triples(self) -> list[tuple[int, int, int]]:
        return [(x, y, r) for (x, y), r in self.ops.items()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialGroupoid):
            return NotImplemented
        return (self.size, dict(self.ops), self.labels) == (other.size, dict(other.ops), other.labels)

    def __hash__(self) -> int:
        return hash((self.size, tuple(self.ops.items()), self.labels))


@dataclass(frozen=True)
class StructureSpec:
    name: str
    elements: tuple[str, ...]
    constraints: tuple[tuple[str, str, str, str], ...]
    comments: tuple[str, ...] = ()
    expected_sub: int | None = None
    expected_sigma: str | None = None
    prose: tuple[str, ...] = field(default=(), compare=False)


def from_join_semilattice(t: JoinTable, labels: Sequence[str] | None = None) -> PartialGroupoid:
    ops = {(x, y): t.join[x][y] for x in range(t.size) for y in range(x, t.size)}
    return PartialGroupoid(t.size, ops, tuple(labels) if labels is not None else None)


def _classify(line: str, lineno: int) -> tuple[str, object]:
    # result names may themselves contain ';' ("... & i; Case 1:")
    if _RESULT_RE.search(line) or _SIGMA_RE.search(line):
        return "prose", (line.strip(), "")
    body, _, comment = line.partition(";")
    comment = comment.strip()
    m = _ELEMENTS_RE.search(body)
    if m:
        return "elements", (m.group(1), comment)
    if "A(without commas)" in body:
        raise MalformedLine(lineno, line)
    tokens = body.split()
    hits = [_CONSTRAINT_RE.match(t) for t in tokens]
    if tokens and all(hits):
        return "constraints", ([h.groups() for h in hits], comment)
    if any(hits) or any(_NEAR_CONSTRAINT_RE.search(t) for t in tokens):
        raise MalformedLine(lineno, line)
    return "prose", (body.strip(), comment)


def _split_blocks(text: str) -> list[list[tuple[int, str]]]:
    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            current.append((lineno, line))
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    return blocks


def _parse_block(lines: list[tuple[int, str]]) -> StructureSpec | None:
    elements: str | None = None
    constraints: list[tuple[str, str, str, str]] = []
    seen: dict[frozenset[str], tuple[str, str, str, str]] = {}
    comments: list[str] = []
    prose: list[str] = []
    expected_sub = expected_sigma = result_name = None
    for lineno, line in lines:
        kind, payload = _classify(line, lineno)
        if kind == "elements":
            if elements is not None:
                raise MalformedLine(lineno, line)
            elements, comment = payload
            if len(set(elements)) != len(elements) or not elements:
                raise MalformedLine(lineno, line)
        elif kind == "constraints":
            found, comment = payload
            if elements is None:
                raise MalformedLine(lineno, line)
            for x, opch, y, r in found:
                for ch in (x, y, r):
                    if ch not in elements:
                        raise UnknownElement(ch, lineno)
                key = frozenset((x, y))
                old = seen.get(key)
                if old is not None:
                    if old[3] != r:
                        raise ConflictingConstraint((x, y), lineno)
                    continue
                seen[key] = (x, opch, y, r)
                constraints.append((x, opch, y, r))
        else:
            text, comment = payload
            res = _RESULT_RE.search(text)
            sig = _SIGMA_RE.search(text)
            if res:
                result_name, expected_sub = res.group(1).strip(), int(res.group(2))
            elif sig:
                expected_sigma = sig.group(1)
            elif text:
                prose.append(text)
        if comment:
            comments.append(comment)
    if elements is None:
        return None
    name = result_name or (prose[0] if prose else "")
    return StructureSpec(name, tuple(elements), tuple(constraints), tuple(comments),
                         expected_sub, expected_sigma, tuple(prose))


def parse_specs(text: str) -> list[StructureSpec]:
    """Parse every structure block (blank-line separated) in ``text``."""
    specs = []
    for block in _split_blocks(text):
        spec = _parse_block(block)
        if spec is not None:
            specs.append(spec)
    return specs


def parse_spec(text: str) -> StructureSpec:
    """Parse a single structure; blank lines inside are tolerated."""
    lines = [(i, line) for i, line in enumerate(text.splitlines(), start=1) if line.strip()]
    spec = _parse_block(lines)
    if spec is None:
        raise SpecError("no element-set line 'A(without commas)={...}' found")
    return spec


def render_spec(spec: StructureSpec) -> str:
    """Inverse of :func:`parse_spec` (prose other than the name is dropped)."""
    out = []
    if spec.name and spec.expected_sub is None:
        out.append(spec.name)
    els = "".join(spec.elements)
    out.append(f"|A|={len(spec.elements)}, A(without commas)={{{els}}}. Constraints:")
    for i in range(0, len(spec.constraints), 8):
        chunk = spec.constraints[i:i + 8]
        out.append(" ".join(f"{x}{o}{y}={r}" for x, o, y, r in chunk))
    for c in spec.comments:
        out.append(f"; {c}")
    if spec.expected_sub is not None:
        out.append(f"Result for A={spec.name}:  |Sub(A)| = {spec.expected_sub}, whence")
        if spec.expected_sigma is not None:
            out.append(f"sigma(A) = |Sub(A)|*2^(8-|A|) = {spec.expected_sigma:>21} .")
    return "\n".join(out) + "\n"


def spec_to_json(spec: StructureSpec) -> str:
    return json.dumps({
        "name": spec.name,
        "elements": list(spec.elements),
        "constraints": [list(c) for c in spec.constraints],
    })


def spec_from_json(text: str) -> StructureSpec:
    data = json.loads(text)
    elements = tuple(data["elements"])
    seen: dict[frozenset[str], str] = {}
    constraints = []
    for x, o, y, r in data["constraints"]:
        if o not in "+@":
            raise SpecError(f"unknown operator {o!r}")
        for ch in (x, y, r):
            if ch not in elements:
                raise UnknownElement(ch)
        key = frozenset((x, y))
        if key in seen:
            if seen[key] != r:
                raise ConflictingConstraint((x, y))
            continue
        seen[key] = r
        constraints.append((x, o, y, r))
    return StructureSpec(data.get("name", ""), elements, tuple(constraints))


def from_spec(spec: StructureSpec) -> PartialGroupoid:
    index = {c: i for i, c in enumerate(spec.elements)}
    ops = {}
    for x, _, y, r in spec.constraints:
        ops[(index[x], index[y])] = index[r]
    return PartialGroupoid(len(spec.elements), ops, spec.elements)


def restrict(g: PartialGroupoid, subset: Iterable[int]) -> PartialGroupoid:
    """Keep the operation on pairs whose arguments and result all lie in ``subset``.

    Elements are renumbered in increasing order; ``sorted(subset)`` is the
    inclusion map back into ``g``.
    """
    keep = sorted(set(subset))
    if not keep:
        raise EmptySubset("cannot restrict to the empty set")
    pos = {x: i for i, x in enumerate(keep)}
    ops = {(pos[x], pos[y]): pos[r] for (x, y), r in g.ops.items()
           if x in pos and y in pos and r in pos}
    labels = tuple(g.labels[x] for x in keep) if g.labels is not None else None
    return PartialGroupoid(len(keep), ops, labels)


def is_weak_subgroupoid(small: PartialGroupoid, big: PartialGroupoid,
                        inject: Sequence[int] | Mapping[int, int]) -> bool:
    """``inject[x]`` is the image in ``big`` of element ``x`` of ``small``."""
    images = [inject[x] for x in range(small.size)]
    if len(set(images)) != len(images):
        raise ValueError("inject must be injective")
    for (x, y), r in small.ops.items():
        if big.op(images[x], images[y]) != images[r]:
            return False
    return True


def relabel_by_labels(g: PartialGroupoid, labels: Sequence[str]) -> PartialGroupoid:
    """Same groupoid with elements renumbered to follow the order of ``labels``."""
    assert g.labels is not None
    index = {c: i for i, c in enumerate(labels)}
    ops = {(index[g.labels[x]], index[g.labels[y]]): index[g.labels[r]] for (x, y), r in g.ops.items()}
    return PartialGroupoid(g.size, ops, tuple(labels))


def closure_pairs(g: PartialGroupoid) -> list[tuple[int, int]]:
    """``(argument mask, result bit)`` per non-trivial constraint."""
    out = []
    for (x, y), r in g.ops.items():
        if r in (x, y):
            continue
        out.append(((1 << x) | (1 << y), 1 << r))
    return out


__all__ = [
    "PartialGroupoid", "StructureSpec", "SpecError", "UnknownElement",
    "ConflictingConstraint", "MalformedLine", "EmptySubset",
    "from_join_semilattice", "parse_spec", "parse_specs", "render_spec",
    "spec_to_json", "spec_from_json", "from_spec", "restrict",
    "is_weak_subgroupoid", "relabel_by_labels", "closure_pairs", "bits",
]
