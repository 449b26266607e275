"""Finite groups and multi-groups given by operation tables, and their Cayley graphs.

Elements are string labels. A :class:`MultiGroup` is a list of groups whose
element sets may overlap; overlap is by label equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core_graph import Multigraph


class GroupError(ValueError):
    """Raised on malformed tables or invalid Cayley data."""


@dataclass(frozen=True)
class GroupCheck:
    ok: bool
    axiom: str | None = None
    witness: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_group(elements: Sequence[str], table: Sequence[Sequence[str]]) -> GroupCheck:
    """Check closure, associativity, identity and inverses of a label table.

    ``table[i][j]`` is ``elements[i] * elements[j]``.
    """
    n = len(elements)
    if len(set(elements)) != n:
        raise GroupError("element labels must be distinct")
    if len(table) != n or any(len(row) != n for row in table):
        raise GroupError("table must be square over the element list")
    index = {x: i for i, x in enumerate(elements)}
    for i, row in enumerate(table):
        for j, c in enumerate(row):
            if c not in index:
                return GroupCheck(False, "closure", (elements[i], elements[j], str(c)))
    t = [[index[c] for c in row] for row in table]
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return GroupCheck(False, "associativity", (elements[a], elements[b], elements[c]))
    ident = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
    if not ident:
        return GroupCheck(False, "identity", ())
    e = ident[0]
    for a in range(n):
        if not any(t[a][b] == e and t[b][a] == e for b in range(n)):
            return GroupCheck(False, "inverse", (elements[a],))
    return GroupCheck(True)


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``elements`` with ``table[i][j]`` the label of ``elements[i] * elements[j]``."""

    elements: tuple[str, ...]
    table: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(str(x) for x in self.elements))
        object.__setattr__(self, "table", tuple(tuple(str(c) for c in row) for row in self.table))
        check = verify_group(self.elements, self.table)
        if not check:
            raise GroupError(f"not a group: {check.axiom} fails at {check.witness}")
        index = {x: i for i, x in enumerate(self.elements)}
        object.__setattr__(self, "_index", index)
        mul = tuple(tuple(index[c] for c in row) for row in self.table)
        object.__setattr__(self, "_mul", mul)
        n = len(self.elements)
        e = next(i for i in range(n) if all(mul[i][x] == x for x in range(n)))
        object.__setattr__(self, "_e", e)
        object.__setattr__(self, "_inv", tuple(next(b for b in range(n) if mul[a][b] == e) for a in range(n)))

    # index-level access

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise GroupError(f"{x!r} is not an element of the group") from None

    def __contains__(self, x: object) -> bool:
        return x in self._index

    @property
    def identity(self) -> str:
        return self.elements[self._e]

    def mul(self, a: str, b: str) -> str:
        return self.elements[self._mul[self.index(a)][self.index(b)]]

    def inv(self, a: str) -> str:
        return self.elements[self._inv[self.index(a)]]

    def element_order(self, a: str) -> int:
        x, k = self.index(a), 1
        cur = x
        while cur != self._e:
            cur = self._mul[cur][x]
            k += 1
        return k

    def product(self, seq: Iterable[str]) -> str:
        out = self.identity
        for x in seq:
            out = self.mul(out, x)
        return out

    def generated(self, gens: Iterable[str]) -> frozenset[str]:
        """Subgroup generated by ``gens``."""
        gens = [self.index(g) for g in gens]
        seen = {self._e}
        frontier = [self._e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self._mul[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(self.elements[i] for i in seen)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self._mul[a][b] == self._mul[b][a] for a in range(n) for b in range(n))

    def relabeled(self, mapping: dict[str, str] | Sequence[str]) -> "FiniteGroup":
        """Copy with each label ``x`` renamed to ``mapping[x]`` (or positionally)."""
        if not isinstance(mapping, dict):
            mapping = dict(zip(self.elements, mapping))
        return FiniteGroup(
            tuple(mapping[x] for x in self.elements),
            tuple(tuple(mapping[c] for c in row) for row in self.table),
        )


def cyclic_group(n: int, labels: Sequence[str] | None = None) -> FiniteGroup:
    """``Z_n`` with labels ``"0".."n-1"`` unless ``labels`` are given."""
    if n < 1:
        raise GroupError("order must be positive")
    names = [str(i) for i in range(n)] if labels is None else [str(x) for x in labels]
    return FiniteGroup(tuple(names), tuple(tuple(names[(i + j) % n] for j in range(n)) for i in range(n)))


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in g.elements for b in h.elements]
    name = {p: f"({p[0]},{p[1]})" for p in pairs}
    table = tuple(tuple(name[(g.mul(a, c), h.mul(b, d))] for c, d in pairs) for a, b in pairs)
    return FiniteGroup(tuple(name[p] for p in pairs), table)


def symmetric_group(n: int) -> FiniteGroup:
    """``S_n`` acting on ``0..n-1``; labels are one-line notation strings."""
    perms = list(itertools.permutations(range(n)))
    name = {p: "".join(map(str, p)) for p in perms}
    # (p * q)(i) = p(q(i))
    table = tuple(tuple(name[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    return FiniteGroup(tuple(name[p] for p in perms), table)


def abelian_groups(order: int) -> list[FiniteGroup]:
    """One representative per isomorphism class, built from invariant factors."""

    def factor_chains(n: int, bound: int | None) -> list[list[int]]:
        # invariant factors with product n, largest first, each dividing the previous
        if n == 1:
            return [[]]
        out = []
        for d in range(2, n + 1):
            if n % d or (bound is not None and bound % d):
                continue
            for rest in factor_chains(n // d, d):
                out.append([d] + rest)
        return out

    if order == 1:
        return [cyclic_group(1)]
    groups = []
    for chain in factor_chains(order, None):
        g = cyclic_group(chain[0])
        for d in chain[1:]:
            g = direct_product(g, cyclic_group(d))
        groups.append(g)
    return groups


# multi-groups


@dataclass(frozen=True)
class MultiGroup:
    """Union of constituent groups over a shared label universe."""

    groups: tuple[FiniteGroup, ...]
    universe: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        groups = tuple(self.groups)
        if not groups:
            raise GroupError("a multi-group needs at least one constituent")
        object.__setattr__(self, "groups", groups)
        seen: dict[str, None] = {}
        for g in groups:
            for x in g.elements:
                seen.setdefault(x, None)
        if self.universe:
            universe = tuple(str(x) for x in self.universe)
            if not set(seen) <= set(universe):
                raise GroupError("constituent elements missing from the universe")
        else:
            universe = tuple(seen)
        object.__setattr__(self, "universe", universe)

    @property
    def size(self) -> int:
        return len(self.universe)

    @property
    def operation_count(self) -> int:
        return len(self.groups)

    def index(self, x: str) -> int:
        try:
            return self.universe.index(x)
        except ValueError:
            raise GroupError(f"{x!r} is not in the universe") from None

    def op(self, i: int, a: str, b: str) -> str | None:
        """``a o_i b`` or ``None`` when either operand lies outside constituent ``i``."""
        g = self.groups[i]
        if a in g and b in g:
            return g.mul(a, b)
        return None

    def containing(self, *xs: str) -> list[int]:
        return [i for i, g in enumerate(self.groups) if all(x in g for x in xs)]

    def overlaps(self) -> dict[tuple[int, int], frozenset[str]]:
        out = {}
        for i, j in itertools.combinations(range(len(self.groups)), 2):
            out[(i, j)] = frozenset(self.groups[i].elements) & frozenset(self.groups[j].elements)
        return out

    def same_set_constituents(self) -> bool:
        first = set(self.groups[0].elements)
        return all(set(g.elements) == first and len(first) == len(self.universe) for g in self.groups)


def joint_number(mg: MultiGroup, g: str, h: str) -> int:
    """Number of constituents containing both ``g`` and ``h``."""
    mg.index(g)
    mg.index(h)
    return len(mg.containing(g, h))


def joint_sum(mg: MultiGroup, g: str, h: str) -> int:
    """Sum over operations ``i`` of the joint number of ``g`` and ``g o_i h`` (0 if undefined)."""
    mg.index(g)
    mg.index(h)
    total = 0
    for i in range(mg.operation_count):
        c = mg.op(i, g, h)
        if c is not None:
            total += joint_number(mg, g, c)
    return total


# Cayley graphs


def _check_connection_set(group: FiniteGroup, s: Sequence[str]) -> list[str]:
    s = list(dict.fromkeys(str(x) for x in s))
    for x in s:
        if x not in group:
            raise GroupError(f"{x!r} is not a group element")
    if group.identity in s:
        raise GroupError("connection set contains the identity")
    if any(group.inv(x) not in s for x in s):
        raise GroupError("connection set is not closed under inverses")
    return s


def cayley_graph(group: FiniteGroup, s: Sequence[str]) -> Multigraph:
    """Simple graph on the group elements with ``g ~ h`` iff ``g^-1 h`` lies in ``s``.

    Vertex ``i`` is ``group.elements[i]``.
    """
    s = _check_connection_set(group, s)
    edges = set()
    for g in group.elements:
        for x in s:
            a, b = group.index(g), group.index(group.mul(g, x))
            edges.add((min(a, b), max(a, b)))
    return Multigraph(group.order, tuple(sorted(edges)))


@dataclass(frozen=True)
class MultiCayleyGraph:
    graph: Multigraph
    labels: tuple[str, ...]
    provenance: dict[tuple[int, int], tuple[tuple[int, str], ...]]


def cayley_graph_multigroup(mg: MultiGroup, sets: Sequence[Sequence[str]]) -> MultiCayleyGraph:
    """Union of the constituent Cayley graphs on the universe.

    Coinciding edges are kept once; ``provenance`` lists every ``(i, s)`` producing each.
    """
    if len(sets) != mg.operation_count:
        raise GroupError("need one connection set per constituent")
    prov: dict[tuple[int, int], list[tuple[int, str]]] = {}
    for i, (group, s) in enumerate(zip(mg.groups, sets)):
        s = _check_connection_set(group, s)
        if group.generated(s) != frozenset(group.elements):
            raise GroupError(f"connection set {i} does not generate its constituent")
        for g in group.elements:
            for x in s:
                a, b = mg.index(g), mg.index(group.mul(g, x))
                key = (min(a, b), max(a, b))
                if (i, x) not in prov.setdefault(key, []) and (i, group.inv(x)) not in prov[key]:
                    prov[key].append((i, x))
    keys = sorted(prov)
    return MultiCayleyGraph(
        Multigraph(mg.size, tuple(keys)),
        mg.universe,
        {k: tuple(prov[k]) for k in keys},
    )


def is_multigroup_cayley_connected(mg: MultiGroup, sets: Sequence[Sequence[str]]) -> bool:
    """Connectivity decided from the overlap structure of the constituents.

    With one constituent the answer is whether ``s`` generates it. With several,
    every ``S_i`` must generate ``Γ_i``; the graph is then connected iff the
    constituents cover the universe and their overlap graph is connected.
    """
    if len(sets) != mg.operation_count:
        raise GroupError("need one connection set per constituent")
    if mg.operation_count == 1:
        group = mg.groups[0]
        s = _check_connection_set(group, sets[0])
        return group.generated(s) == frozenset(group.elements) and group.order == mg.size
    for group, s in zip(mg.groups, sets):
        s = _check_connection_set(group, s)
        if group.generated(s) != frozenset(group.elements):
            raise GroupError("each connection set must generate its constituent")
    covered = set().union(*(g.elements for g in mg.groups))
    if covered != set(mg.universe):
        return False
    n = mg.operation_count
    reach = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if j not in reach and set(mg.groups[i].elements) & set(mg.groups[j].elements):
                reach.add(j)
                frontier.append(j)
    return len(reach) == n


@dataclass(frozen=True)
class Factor:
    kind: str  # "1-factor" or "2-factor"
    generator: str
    edges: tuple[tuple[int, int], ...]


def factorize_cayley(group: FiniteGroup, s: Sequence[str]) -> list[Factor]:
    """One factor per pair ``{x, x^-1}`` of the connection set."""
    s = _check_connection_set(group, s)
    factors = []
    done: set[str] = set()
    for x in s:
        if x in done:
            continue
        done.update({x, group.inv(x)})
        edges = set()
        for g in group.elements:
            a, b = group.index(g), group.index(group.mul(g, x))
            edges.add((min(a, b), max(a, b)))
        kind = "1-factor" if group.mul(x, x) == group.identity else "2-factor"
        factors.append(Factor(kind, x, tuple(sorted(edges))))
    return factors


def vertex_transitivity_witness(group: FiniteGroup, s: Sequence[str], g: str) -> list[int]:
    """Left translation ``h -> g h`` as a vertex permutation of the Cayley graph."""
    _check_connection_set(group, s)
    if g not in group:
        raise GroupError(f"{g!r} is not a group element")
    return [group.index(group.mul(g, h)) for h in group.elements]
