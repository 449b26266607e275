"""Weighted digraph models of partial algebraic systems.

Each defined product ``a ∘ b = c`` becomes an arc ``a -> c`` carrying the weight
``(tag, b)``; the tag names the system so that unions of several systems keep
their operations apart.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groups import FiniteGroup


class AlgebraError(ValueError):
    """Raised for malformed tables and inconsistent weighted digraphs."""


UNDEFINED = "*"


@dataclass(frozen=True)
class PartialBinarySystem:
    """``table[i][j]`` is ``elements[i] ∘ elements[j]`` or ``None`` when undefined."""

    elements: tuple[str, ...]
    table: tuple[tuple[str | None, ...], ...]

    def __post_init__(self) -> None:
        els = tuple(str(x) for x in self.elements)
        if len(set(els)) != len(els):
            raise AlgebraError("duplicate element labels")
        rows = tuple(
            tuple(None if c is None or c == UNDEFINED else str(c) for c in row) for row in self.table
        )
        if len(rows) != len(els) or any(len(r) != len(els) for r in rows):
            raise AlgebraError("table must be |A| x |A|")
        known = set(els)
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                if c is not None and c not in known:
                    raise AlgebraError(f"{els[i]} ∘ {els[j]} = {c!r} is outside the element list")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_group(cls, group: FiniteGroup) -> "PartialBinarySystem":
        return cls(group.elements, group.table)

    @classmethod
    def from_products(cls, elements: Sequence[str], products: dict[tuple[str, str], str]) -> "PartialBinarySystem":
        pos = {x: k for k, x in enumerate(elements)}
        rows = [[None] * len(elements) for _ in elements]
        for (a, b), c in products.items():
            rows[pos[a]][pos[b]] = c
        return cls(tuple(elements), tuple(tuple(r) for r in rows))

    def op(self, a: str, b: str) -> str | None:
        pos = {x: k for k, x in enumerate(self.elements)}
        return self.table[pos[a]][pos[b]]

    def products(self) -> dict[tuple[str, str], str]:
        return {
            (a, b): c
            for a, row in zip(self.elements, self.table)
            for b, c in zip(self.elements, row)
            if c is not None
        }

    def is_complete(self) -> bool:
        return all(c is not None for row in self.table for c in row)


Weight = tuple[int, str]


@dataclass(frozen=True, order=True)
class Arc:
    tail: str
    head: str
    weight: Weight


@dataclass(frozen=True)
class WeightedDigraph:
    vertices: tuple[str, ...]
    arcs: tuple[Arc, ...]

    def out_arcs(self, v: str) -> list[Arc]:
        return [a for a in self.arcs if a.tail == v]

    def in_arcs(self, v: str) -> list[Arc]:
        return [a for a in self.arcs if a.head == v]

    def out_degree(self, v: str) -> int:
        return len(self.out_arcs(v))

    def in_degree(self, v: str) -> int:
        return len(self.in_arcs(v))

    def tags(self) -> list[int]:
        return sorted({a.weight[0] for a in self.arcs})


def graph_model(system: PartialBinarySystem, tag: int = 0) -> WeightedDigraph:
    """One arc ``a -> a∘b`` weighted ``(tag, b)`` per defined cell."""
    arcs = tuple(Arc(a, c, (tag, b)) for (a, b), c in system.products().items())
    return WeightedDigraph(system.elements, arcs)


def multispace_graph(systems: Sequence[PartialBinarySystem]) -> WeightedDigraph:
    """Union of the per-system models; system ``i`` tags its weights with ``i``."""
    vertices: list[str] = []
    arcs: list[Arc] = []
    for i, s in enumerate(systems):
        for v in s.elements:
            if v not in vertices:
                vertices.append(v)
        arcs.extend(graph_model(s, i).arcs)
    return WeightedDigraph(tuple(vertices), tuple(arcs))


@dataclass(frozen=True)
class ConflictingArcs(AlgebraError):
    first: Arc
    second: Arc

    def __str__(self) -> str:
        return f"arcs {self.first} and {self.second} give two values for one product"


def reconstruct_systems(d: WeightedDigraph) -> list[PartialBinarySystem]:
    """Inverse of ``multispace_graph``: one partial system per weight tag.

    Each system lives on the vertices its arcs touch, listed in ``d.vertices`` order.
    """
    tags = d.tags() or [0]
    out = []
    for tag in tags:
        arcs = [a for a in d.arcs if a.weight[0] == tag]
        used = {a.tail for a in arcs} | {a.head for a in arcs} | {a.weight[1] for a in arcs}
        els = [v for v in d.vertices if v in used] if len(tags) > 1 else list(d.vertices)
        out.append(_system_from_arcs(els, arcs))
    return out


def reconstruct_system(d: WeightedDigraph) -> PartialBinarySystem:
    """Inverse of ``graph_model`` for a single-tag digraph."""
    if len(d.tags()) > 1:
        raise AlgebraError("digraph carries several operations; use reconstruct_systems")
    return _system_from_arcs(list(d.vertices), list(d.arcs))


def _system_from_arcs(elements: list[str], arcs: Iterable[Arc]) -> PartialBinarySystem:
    known = set(elements)
    seen: dict[tuple[str, str], Arc] = {}
    for arc in arcs:
        b = arc.weight[1]
        if arc.tail not in known or arc.head not in known or b not in known:
            raise AlgebraError(f"arc {arc} mentions an unknown element")
        key = (arc.tail, b)
        if key in seen and seen[key].head != arc.head:
            raise ConflictingArcs(seen[key], arc)
        seen[key] = arc
    return PartialBinarySystem.from_products(elements, {k: a.head for k, a in seen.items()})


# properties P1 to P5


def weak_components(d: WeightedDigraph) -> list[list[str]]:
    parent = {v: v for v in d.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in d.arcs:
        parent[find(a.tail)] = find(a.head)
    groups: dict[str, list[str]] = defaultdict(list)
    for v in d.vertices:
        groups[find(v)].append(v)
    return list(groups.values())


@dataclass(frozen=True)
class PropertyReport:
    connected: bool
    partition: tuple[tuple[str, ...], tuple[str, ...]] | None
    left_units: tuple[str, ...]
    right_units: tuple[str, ...]
    units: tuple[str, ...]
    inverse_pairs: tuple[tuple[str, str], ...]
    commuting_pairs: tuple[tuple[str, str], ...]
    cancellation: bool
    parallel_witness: tuple[Arc, Arc] | None = None


def analyze_properties(d: WeightedDigraph) -> PropertyReport:
    """Read P1 to P5 off the digraph alone (single operation tag)."""
    if len(d.tags()) > 1:
        raise AlgebraError("property analysis works on one operation at a time")
    comps = weak_components(d)
    connected = len(comps) == 1
    partition = None
    if not connected:
        first = tuple(comps[0])
        partition = (first, tuple(v for v in d.vertices if v not in first))
    out = defaultdict(list)
    for a in d.arcs:
        out[a.tail].append(a)
    # P2: a left unit sends every x it multiplies to x; a right unit fixes every a it multiplies
    left = tuple(v for v in d.vertices if out[v] and all(a.head == a.weight[1] for a in out[v]))
    by_weight = defaultdict(list)
    for a in d.arcs:
        by_weight[a.weight[1]].append(a)
    right = tuple(v for v in d.vertices if by_weight[v] and all(a.head == a.tail for a in by_weight[v]))
    units = tuple(v for v in left if v in right)
    # P3: opposite 2-edge (1, a) weighted ∘a and ∘a^{-1}, checked on both sides
    inverses = []
    for u in units:
        hits = {(a.tail, a.weight[1]) for a in d.arcs if a.head == u}
        for x in d.vertices:
            for y in d.vertices:
                if x <= y and (x, y) in hits and (y, x) in hits:
                    inverses.append((x, y))
    # P4: arcs (a, x) weighted ∘b and (b, x) weighted ∘a
    into = defaultdict(set)
    for a in d.arcs:
        into[a.head].add((a.tail, a.weight[1]))
    commuting = set()
    for x, pairs in into.items():
        for a, b in pairs:
            if (b, a) in pairs:
                commuting.add((min(a, b), max(a, b)))
    # P5: two arcs from one tail to one head with different weights
    parallel = None
    seen: dict[tuple[str, str], Arc] = {}
    for a in sorted(d.arcs):
        key = (a.tail, a.head)
        if key in seen and seen[key].weight != a.weight:
            parallel = (seen[key], a)
            break
        seen[key] = a
    return PropertyReport(
        connected,
        partition,
        left,
        right,
        units,
        tuple(sorted(set(inverses))),
        tuple(sorted(commuting)),
        parallel is None,
        parallel,
    )


# Euler analysis


@dataclass(frozen=True)
class EulerReport:
    is_euler: bool
    witness: str | None  # unbalanced vertex, or None
    pairing: dict[str, dict[Weight, Weight]] = field(default_factory=dict)
    global_map: dict[str, str] | None = None
    circuit: tuple[Arc, ...] = ()


def euler_circuit(d: WeightedDigraph) -> list[Arc]:
    """Hierholzer's algorithm; assumes balanced degrees and one non-trivial component."""
    if not d.arcs:
        return []
    out: dict[str, list[Arc]] = defaultdict(list)
    for a in sorted(d.arcs, reverse=True):
        out[a.tail].append(a)
    stack: list[tuple[str, Arc | None]] = [(d.arcs[0].tail, None)]
    circuit: list[Arc] = []
    while stack:
        v, via = stack[-1]
        if out[v]:
            a = out[v].pop()
            stack.append((a.head, a))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    return circuit[::-1]


def euler_analysis(d: WeightedDigraph) -> EulerReport:
    """Balanced degrees on a connected arc set give an Euler circuit and a one-way function.

    At every vertex the out-weights are paired with the in-weights, matching equal
    weights first; ``global_map`` is reported when these pairings agree everywhere.
    """
    for v in d.vertices:
        if d.out_degree(v) != d.in_degree(v):
            return EulerReport(False, v)
    active = {a.tail for a in d.arcs} | {a.head for a in d.arcs}
    comps = [c for c in weak_components(d) if any(v in active for v in c)]
    if len(comps) > 1:
        return EulerReport(False, comps[1][0])
    pairing: dict[str, dict[Weight, Weight]] = {}
    for v in d.vertices:
        outs = sorted(a.weight for a in d.out_arcs(v))
        ins = Counter(a.weight for a in d.in_arcs(v))
        match: dict[Weight, Weight] = {}
        rest = []
        for w in outs:
            if ins[w]:
                ins[w] -= 1
                match[w] = w
            else:
                rest.append(w)
        leftovers = sorted(ins.elements())
        for w, w2 in zip(rest, leftovers):
            match[w] = w2
        pairing[v] = match
    glob: dict[str, str] | None = {}
    for match in pairing.values():
        for (_, b), (_, c) in match.items():
            if glob.get(b, c) != c:
                glob = None
                break
            glob[b] = c
        if glob is None:
            break
    return EulerReport(True, None, pairing, glob, tuple(euler_circuit(d)))


def check_one_way_pairing(d: WeightedDigraph, report: EulerReport) -> bool:
    """Each vertex's pairing is a bijection from its out-weights onto its in-weights."""
    for v in d.vertices:
        outs = Counter(a.weight for a in d.out_arcs(v))
        ins = Counter(a.weight for a in d.in_arcs(v))
        match = report.pairing.get(v, {})
        if Counter(match.keys()) != outs or Counter(match.values()) != ins:
            return False
    return True


def is_euler_circuit(d: WeightedDigraph, circuit: Sequence[Arc]) -> bool:
    if Counter(circuit) != Counter(d.arcs):
        return False
    return all(circuit[k].head == circuit[(k + 1) % len(circuit)].tail for k in range(len(circuit)))


# reference tables


CYCLIC3_TABLE = PartialBinarySystem(("e", "a", "b"), (("e", "a", "b"), ("a", "b", "e"), ("b", "e", "a")))

PARTIAL4_TABLE = PartialBinarySystem(
    ("1", "2", "a", "b"),
    (
        (None, "a", "b", None),
        ("b", None, None, "a"),
        (None, None, None, "1"),
        (None, None, "2", None),
    ),
)


__all__ = [
    "AlgebraError",
    "Arc",
    "ConflictingArcs",
    "EulerReport",
    "PartialBinarySystem",
    "PropertyReport",
    "CYCLIC3_TABLE",
    "PARTIAL4_TABLE",
    "UNDEFINED",
    "WeightedDigraph",
    "analyze_properties",
    "check_one_way_pairing",
    "euler_analysis",
    "euler_circuit",
    "graph_model",
    "is_euler_circuit",
    "multispace_graph",
    "reconstruct_system",
    "reconstruct_systems",
    "weak_components",
]
