"""Combinatorial maps on quadricells, rotation systems, surface invariants,
embedding enumeration, maximum genus, rooted counts and multi-voltage map lifts.

Quadricell ``4*e + k`` stands for ``k``-th cell of edge ``e`` with
``k = 0, 1, 2, 3`` meaning ``x, αx, βx, αβx``. So ``α`` is ``q ^ 1`` and ``β`` is
``q ^ 2``. Semi-arc ``(e, 0)`` owns cells ``x, αx`` and ``(e, 1)`` owns ``βx, αβx``.

A rotation system lists, per vertex, the cyclic order of its semi-arcs and a
twist bit per edge. Its map puts ``x`` for ``(e, 0)`` in the positive vertex
cycle and ``αβx`` (untwisted) or ``βx`` (twisted) for ``(e, 1)``; the conjugate
cycle is ``α`` of the positive cycle read backwards.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import perms
from .core_graph import (
    BudgetExceeded,
    GraphError,
    Multigraph,
    SemiArc,
    semi_arc_automorphism_order,
)
from .groups import MultiGroup

DEFAULT_BUDGET = 10**6
KNAMES = ("1", "a", "b", "ab")


class MapError(ValueError):
    """Raised for malformed maps, rotations and voltage data."""


def default_budget() -> int:
    """Enumeration budget, overridable through ``MSG_BUDGET``."""
    raw = os.environ.get("MSG_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def alpha(q: int) -> int:
    return q ^ 1


def beta(q: int) -> int:
    return q ^ 2


def quadricell_name(q: int) -> str:
    return f"e{q // 4}.{KNAMES[q % 4]}"


def parse_quadricell(name: str) -> int:
    try:
        edge, k = name.split(".")
        if not edge.startswith("e"):
            raise ValueError
        return 4 * int(edge[1:]) + KNAMES.index(k)
    except ValueError:
        raise MapError(f"bad quadricell name {name!r}") from None


# maps


@dataclass(frozen=True)
class CombinatorialMap:
    """Permutation ``P`` on the ``4 * edge_count`` quadricells."""

    edge_count: int
    P: tuple[int, ...]

    def __post_init__(self) -> None:
        p = tuple(int(x) for x in self.P)
        if len(p) != 4 * self.edge_count or not perms.is_permutation(p):
            raise MapError("P must permute the 4*edge_count quadricells")
        object.__setattr__(self, "P", p)

    @classmethod
    def from_cycles(cls, edge_count: int, cycles: Iterable[Sequence[int | str]]) -> "CombinatorialMap":
        cyc = [[parse_quadricell(x) if isinstance(x, str) else int(x) for x in c] for c in cycles]
        try:
            return cls(edge_count, perms.from_cycles(4 * edge_count, cyc))
        except ValueError as exc:
            raise MapError(str(exc)) from None

    @property
    def size(self) -> int:
        return 4 * self.edge_count

    def cycles(self) -> list[tuple[int, ...]]:
        return perms.cycles(self.P)

    def named_cycles(self) -> list[list[str]]:
        return [[quadricell_name(q) for q in c] for c in self.cycles()]

    def face_permutation(self) -> tuple[int, ...]:
        """``Pαβ``: apply ``αβ`` first, then ``P``."""
        return tuple(self.P[q ^ 3] for q in range(self.size))


@dataclass(frozen=True)
class MapCheck:
    ok: bool
    axiom: str | None = None
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_map(m: CombinatorialMap) -> MapCheck:
    """Check axioms (i) no ``P^k x = αx``, (ii) ``αP = P^{-1}α``, (iii) transitivity of ``<α, β, P>``."""
    if m.edge_count == 0:
        return MapCheck(False, "transitivity", None)
    p = m.P
    for cyc in perms.cycles(p):
        members = set(cyc)
        for x in cyc:
            if alpha(x) in members:
                return MapCheck(False, "alpha-orbit", x)
    for x in range(m.size):
        if p[alpha(p[x])] != alpha(x):
            return MapCheck(False, "alpha-conjugation", x)
    n = m.size
    orbs = perms.orbits(n, [tuple(alpha(q) for q in range(n)), tuple(beta(q) for q in range(n)), p])
    if len(orbs) != 1:
        return MapCheck(False, "transitivity", orbs[1][0])
    return MapCheck(True)


def _require_valid(m: CombinatorialMap) -> None:
    check = validate_map(m)
    if not check:
        raise MapError(f"invalid map: axiom {check.axiom} fails at {check.witness}")


@dataclass(frozen=True)
class MapOrbits:
    """Vertices and faces are conjugate pairs of cycles; edges are ``K``-orbits."""

    vertices: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    edges: tuple[tuple[int, int, int, int], ...]
    faces: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def _pair_cycles(cycs: list[tuple[int, ...]], conj) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    by_set = {frozenset(c): c for c in cycs}
    done: set[frozenset[int]] = set()
    pairs = []
    for c in cycs:
        key = frozenset(c)
        if key in done:
            continue
        partner = frozenset(conj(x) for x in c)
        if partner == key or partner not in by_set:
            raise MapError("cycle without a distinct conjugate partner")
        done.add(key)
        done.add(partner)
        pairs.append((c, by_set[partner]))
    return tuple(pairs)


def map_orbits(m: CombinatorialMap) -> MapOrbits:
    """Vertices pair ``C`` with ``αC``; faces pair a ``Pαβ`` orbit ``O`` with ``βO``."""
    _require_valid(m)
    verts = _pair_cycles(perms.cycles(m.P), alpha)
    faces = _pair_cycles(perms.cycles(m.face_permutation()), beta)
    edges = tuple((4 * e, 4 * e + 1, 4 * e + 2, 4 * e + 3) for e in range(m.edge_count))
    return MapOrbits(verts, edges, faces)


def face_count(m: CombinatorialMap) -> int:
    return len(perms.cycles(m.face_permutation())) // 2


def vertex_count(m: CombinatorialMap) -> int:
    return len(perms.cycles(m.P)) // 2


def euler_characteristic(m: CombinatorialMap) -> int:
    _require_valid(m)
    return vertex_count(m) - m.edge_count + face_count(m)


def is_orientable(m: CombinatorialMap) -> bool:
    """``<αβ, P>`` has two orbits exactly when the map is orientable."""
    _require_valid(m)
    n = m.size
    count = len(perms.orbits(n, [tuple(q ^ 3 for q in range(n)), m.P]))
    if count not in (1, 2):
        raise MapError(f"<αβ, P> has {count} orbits")
    return count == 2


@dataclass(frozen=True)
class Surface:
    chi: int
    orientable: bool
    genus: int  # handles when orientable, crosscaps otherwise


def surface(m: CombinatorialMap) -> Surface:
    chi = euler_characteristic(m)
    orientable = is_orientable(m)
    if orientable:
        if chi % 2:
            raise MapError("orientable map with odd Euler characteristic")
        return Surface(chi, True, (2 - chi) // 2)
    return Surface(chi, False, 2 - chi)


def edge_twist(m: CombinatorialMap, e: int) -> CombinatorialMap:
    """Give edge ``e`` an extra twist by swapping the roles of ``βx`` and ``αβx``."""
    if not 0 <= e < m.edge_count:
        raise MapError(f"edge {e} out of range")
    a, b = 4 * e + 2, 4 * e + 3
    swap = lambda q: b if q == a else a if q == b else q
    return CombinatorialMap(m.edge_count, tuple(swap(m.P[swap(q)]) for q in range(m.size)))


def klein_bottle_dipole() -> CombinatorialMap:
    """The dipole with four parallel edges on the Klein bottle; edges x, y, z, w are 0..3."""
    x, y, z, w = 0, 4, 8, 12
    a, b, ab = 1, 2, 3
    return CombinatorialMap.from_cycles(4, [
        (x, y, z, w),
        (x + ab, y + ab, z + b, w + b),
        (x + a, w + a, z + a, y + a),
        (x + b, w + ab, z + ab, y + b),
    ])


# rotation systems


def _canonical_cycle(cyc: Sequence[SemiArc]) -> tuple[SemiArc, ...]:
    cyc = [tuple(s) for s in cyc]
    if not cyc:
        return ()
    k = cyc.index(min(cyc))
    return tuple(cyc[k:] + cyc[:k])


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic semi-arc order per vertex plus a twist bit per edge (1 = type 1)."""

    base: Multigraph
    rotation: tuple[tuple[SemiArc, ...], ...]
    twist: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        rot = tuple(_canonical_cycle(c) for c in self.rotation)
        twist = tuple(int(b) for b in self.twist) or (0,) * self.base.edge_count
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "twist", twist)
        if len(rot) != self.base.vertex_count:
            raise MapError("need one rotation per vertex")
        if len(twist) != self.base.edge_count or any(b not in (0, 1) for b in twist):
            raise MapError("need one twist bit per edge")
        for v, cyc in enumerate(rot):
            if sorted(cyc) != sorted(self.base.incident(v)):
                raise MapError(f"rotation at vertex {v} does not cover its semi-arcs")


def _positive_cell(arc: SemiArc, twist: Sequence[int]) -> int:
    e, end = arc
    return 4 * e if end == 0 else 4 * e + (2 if twist[e] else 3)


def map_from_rotation(rs: RotationSystem) -> CombinatorialMap:
    g = rs.base
    if g.edge_count == 0 or not g.is_connected():
        raise MapError("rotation systems must be on connected graphs with at least one edge")
    image = [0] * (4 * g.edge_count)
    for cyc in rs.rotation:
        cells = [_positive_cell(s, rs.twist) for s in cyc]
        for k, q in enumerate(cells):
            nxt = cells[(k + 1) % len(cells)]
            image[q] = nxt
            image[alpha(nxt)] = alpha(q)
    m = CombinatorialMap(g.edge_count, tuple(image))
    _require_valid(m)
    return m


def spanning_tree_edges(g: Multigraph) -> list[int]:
    """BFS tree from the tail of edge 0, scanning incident edges by index."""
    if g.edge_count == 0:
        return []
    root = g.edges[0][0]
    seen = {root}
    order = deque([root])
    tree = []
    while order:
        u = order.popleft()
        for e, end in g.incident(u):
            v = g.edges[e][1 - end]
            if v not in seen:
                seen.add(v)
                tree.append(e)
                order.append(v)
    return tree


def _flip_cycle(cyc: Sequence[SemiArc]) -> tuple[SemiArc, ...]:
    return (cyc[0],) + tuple(reversed(cyc[1:])) if cyc else ()


def normalize_rotation(rs: RotationSystem) -> RotationSystem:
    """Flip vertices so every edge of the BFS spanning tree is untwisted."""
    g = rs.base
    flip = [0] * g.vertex_count
    root = g.edges[0][0] if g.edge_count else 0
    seen = {root}
    order = deque([root])
    tree = set(spanning_tree_edges(g))
    while order:
        u = order.popleft()
        for e, end in g.incident(u):
            v = g.edges[e][1 - end]
            if e in tree and v not in seen:
                seen.add(v)
                flip[v] = flip[u] ^ rs.twist[e]
                order.append(v)
    twist = tuple(
        b if t == h else b ^ flip[t] ^ flip[h] for b, (t, h) in zip(rs.twist, g.edges)
    )
    rotation = tuple(_flip_cycle(c) if flip[v] else c for v, c in enumerate(rs.rotation))
    return RotationSystem(g, rotation, twist)


def rotation_from_map(m: CombinatorialMap, base: Multigraph | None = None) -> RotationSystem:
    """Recover the graph, rotations and twists; the BFS tree comes back untwisted.

    Without ``base`` the vertices are numbered by their least semi-arc.
    """
    _require_valid(m)
    pairs = _pair_cycles(perms.cycles(m.P), alpha)
    arc_of = lambda q: (q // 4, (q % 4) >> 1)
    groups = [sorted({arc_of(q) for q in c}) for c, _ in pairs]
    if base is None:
        order = sorted(range(len(groups)), key=lambda k: groups[k][0])
        vid = {k: n for n, k in enumerate(order)}
        ends: dict[SemiArc, int] = {s: vid[k] for k, grp in enumerate(groups) for s in grp}
        base = Multigraph(len(groups), tuple((ends[(e, 0)], ends[(e, 1)]) for e in range(m.edge_count)))
    else:
        if base.edge_count != m.edge_count:
            raise MapError("base graph edge count differs from the map")
        ends = {s: base.endpoint(s) for s in base.semi_arcs()}
    pair_at: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for k, grp in enumerate(groups):
        v = ends[grp[0]]
        if any(ends[s] != v for s in grp) or v in pair_at:
            raise MapError("map vertices do not match the base graph")
        pair_at[v] = pairs[k]
    positive: dict[int, tuple[int, ...]] = {}
    root = base.edges[0][0]
    a, b = pair_at[root]
    positive[root] = a if 0 in a else b
    tree = set(spanning_tree_edges(base))
    queue = deque([root])
    while queue:
        u = queue.popleft()
        cells_u = set(positive[u])
        for e, end in base.incident(u):
            v = base.edges[e][1 - end]
            if e not in tree or v in positive:
                continue
            q_u = next(q for q in (4 * e + 2 * end, 4 * e + 2 * end + 1) if q in cells_u)
            want = q_u ^ 3
            a, b = pair_at[v]
            positive[v] = a if want in a else b
            queue.append(v)
    cell_at: dict[SemiArc, int] = {}
    for v, cyc in positive.items():
        for q in cyc:
            cell_at[arc_of(q)] = q % 4
    twist = tuple(1 if cell_at[(e, 0)] ^ cell_at[(e, 1)] == 2 else 0 for e in range(m.edge_count))
    rotation = tuple(tuple(arc_of(q) for q in positive[v]) for v in range(base.vertex_count))
    return RotationSystem(base, rotation, twist)


# embedding enumeration


def _cyclic_orders(arcs: Sequence[SemiArc]) -> list[tuple[SemiArc, ...]]:
    if not arcs:
        return [()]
    first, rest = arcs[0], list(arcs[1:])
    return [(first,) + p for p in itertools.permutations(rest)]


def embedding_count(g: Multigraph) -> tuple[int, int]:
    """(orientable, locally orientable) labelled embedding counts from the closed forms."""
    prod = math.prod(math.factorial(max(r - 1, 0)) for r in g.valencies())
    beta_g = g.edge_count - g.vertex_count + 1
    return prod, prod * 2**beta_g


def _require_embeddable(g: Multigraph) -> None:
    if g.edge_count == 0 or not g.is_connected():
        raise MapError("embedding enumeration needs a connected graph with at least one edge")


def iter_rotation_systems(g: Multigraph, normalized: bool = True, budget: int | None = None) -> Iterable[RotationSystem]:
    """Every rotation system; with ``normalized`` the BFS tree edges stay untwisted."""
    _require_embeddable(g)
    budget = default_budget() if budget is None else budget
    free = [e for e in range(g.edge_count) if not (normalized and e in set(spanning_tree_edges(g)))]
    total = math.prod(math.factorial(max(r - 1, 0)) for r in g.valencies()) * 2 ** len(free)
    if total > budget:
        raise BudgetExceeded(f"{total} rotation systems exceeds budget {budget}")
    choices = [_cyclic_orders(g.incident(v)) for v in range(g.vertex_count)]
    for rot in itertools.product(*choices):
        for bits in itertools.product((0, 1), repeat=len(free)):
            twist = [0] * g.edge_count
            for e, b in zip(free, bits):
                twist[e] = b
            yield RotationSystem(g, rot, tuple(twist))


def _count_cycles_batch(f: np.ndarray) -> np.ndarray:
    """Cycle counts of each row permutation, by pointer doubling on orbit minima."""
    n = f.shape[1]
    low = np.broadcast_to(np.arange(n), f.shape).copy()
    jump = f.copy()
    for _ in range(max(1, math.ceil(math.log2(n))) + 1):
        low = np.minimum(low, np.take_along_axis(low, jump, axis=1))
        jump = np.take_along_axis(jump, jump, axis=1)
    return (low == np.arange(n)).sum(axis=1)


@dataclass(frozen=True)
class EmbeddingCensus:
    """Genus histograms over all labelled embeddings with the BFS tree untwisted."""

    orientable: dict[int, int]
    nonorientable: dict[int, int]

    @property
    def orientable_total(self) -> int:
        return sum(self.orientable.values())

    @property
    def nonorientable_total(self) -> int:
        return sum(self.nonorientable.values())

    @property
    def total(self) -> int:
        return self.orientable_total + self.nonorientable_total


def enumerate_embeddings(g: Multigraph, budget: int | None = None, orientable_only: bool = False) -> EmbeddingCensus:
    """Face counts for every rotation system, batched over vertex rotations.

    An embedding is orientable exactly when every co-tree edge is untwisted,
    because the tree is normalised to type 0. ``orientable_only`` skips the
    twisted co-tree vectors.
    """
    _require_embeddable(g)
    budget = default_budget() if budget is None else budget
    orient_total, total = embedding_count(g)
    if orientable_only:
        total = orient_total
    if total > budget:
        raise BudgetExceeded(f"{total} rotation systems exceeds budget {budget}")
    m = g.edge_count
    n_cells = 4 * m
    tree = set(spanning_tree_edges(g))
    cotree = [e for e in range(m) if e not in tree]
    # successor semi-arc table for every combination of vertex rotations
    per_vertex = [_cyclic_orders(g.incident(v)) for v in range(g.vertex_count)]
    rows = math.prod(len(c) for c in per_vertex)
    succ = np.zeros((rows, 2 * m), dtype=np.int64)
    idx = np.arange(rows)
    stride = 1
    for orders in per_vertex:
        if not orders[0]:
            continue
        table = np.array([[0] * 0 for _ in orders], dtype=np.int64)
        cols = [2 * e + end for e, end in orders[0]]
        table = np.zeros((len(orders), len(cols)), dtype=np.int64)
        for r, cyc in enumerate(orders):
            nxt = {2 * e + end: 2 * cyc[(k + 1) % len(cyc)][0] + cyc[(k + 1) % len(cyc)][1]
                   for k, (e, end) in enumerate(cyc)}
            table[r] = [nxt[c] for c in cols]
        choice = (idx // stride) % len(orders)
        succ[:, cols] = table[choice]
        stride *= len(orders)
    arange_rows = np.arange(rows)
    chi_base = g.vertex_count - m
    orientable: Counter = Counter()
    nonorientable: Counter = Counter()
    vectors = [(0,) * len(cotree)] if orientable_only else itertools.product((0, 1), repeat=len(cotree))
    for bits in vectors:
        twist = [0] * m
        for e, b in zip(cotree, bits):
            twist[e] = b
        cell = np.array([4 * (s // 2) + (0 if s % 2 == 0 else (2 if twist[s // 2] else 3)) for s in range(2 * m)])
        p = np.zeros((rows, n_cells), dtype=np.int64)
        for s in range(2 * m):
            q = cell[s]
            nxt = cell[succ[:, s]]
            p[:, q] = nxt
            p[arange_rows, nxt ^ 1] = q ^ 1
        face = p[:, np.arange(n_cells) ^ 3]
        faces = _count_cycles_batch(face) // 2
        chis = chi_base + faces
        if any(bits):
            nonorientable.update((2 - chis).tolist())
        else:
            if np.any(chis % 2):
                raise MapError("orientable embedding with odd Euler characteristic")
            orientable.update(((2 - chis) // 2).tolist())
    census = EmbeddingCensus(dict(sorted(orientable.items())), dict(sorted(nonorientable.items())))
    if census.orientable_total != orient_total or census.total != total:
        raise MapError("enumeration total disagrees with the closed-form count")
    return census


@dataclass(frozen=True)
class GenusRange:
    orientable: tuple[int, ...]
    nonorientable: tuple[int, ...]

    @property
    def genus(self) -> int:
        return min(self.orientable)

    @property
    def max_genus(self) -> int:
        return max(self.orientable)

    @property
    def min_crosscap(self) -> int:
        return min(self.nonorientable) if self.nonorientable else 0

    @property
    def nonorientable_genus(self) -> int:
        """Crosscap number with planar graphs counted as 0, matching the closed forms."""
        return 0 if self.genus == 0 else self.min_crosscap


def genus_range(g: Multigraph, budget: int | None = None) -> GenusRange:
    census = enumerate_embeddings(g, budget)
    return GenusRange(tuple(census.orientable), tuple(census.nonorientable))


# closed forms


@dataclass(frozen=True)
class GenusValues:
    gamma: int | None
    gamma_tilde: int | None
    gamma_max: int
    gamma_tilde_max: int


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def genus_formulas(kind: str, n: int, m: int | None = None) -> GenusValues:
    """Minimum and maximum genus and crosscap numbers of ``K_n`` or ``K(m, n)``.

    Minimum values need ``n >= 3`` (and ``m >= 3``); they are ``None`` below that.

    >>> genus_formulas("complete", 7)
    GenusValues(gamma=1, gamma_tilde=3, gamma_max=7, gamma_tilde_max=15)
    """
    if kind == "complete":
        if n < 1:
            raise MapError("K_n needs n >= 1")
        small = n < 3
        gamma = None if small else _ceil_div((n - 3) * (n - 4), 12)
        gamma_t = None if small else (3 if n == 7 else _ceil_div((n - 3) * (n - 4), 6))
        edges = n * (n - 1) // 2
        return GenusValues(gamma, gamma_t, (n - 1) * (n - 2) // 4, edges - n + 1)
    if kind == "bipartite":
        if m is None or m < 1 or n < 1:
            raise MapError("K(m, n) needs m, n >= 1")
        small = m < 3 or n < 3
        gamma = None if small else _ceil_div((m - 2) * (n - 2), 4)
        gamma_t = None if small else _ceil_div((m - 2) * (n - 2), 2)
        return GenusValues(gamma, gamma_t, (m - 1) * (n - 1) // 2, m * n - m - n + 1)
    raise MapError(f"unknown graph family {kind!r}")


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[set[int], int]]:
    """Connected components with their edge counts (loops included)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = list(edges)
    for t, h in edges:
        parent[find(t)] = find(h)
    comps: dict[int, tuple[set[int], list[int]]] = {}
    for v in range(n):
        comps.setdefault(find(v), (set(), [0]))[0].add(v)
    for t, _ in edges:
        comps[find(t)][1][0] += 1
    return [(vs, cnt[0]) for vs, cnt in comps.values()]


def _spanning_trees(g: Multigraph, budget: int) -> Iterable[tuple[int, ...]]:
    candidates = [e for e, (t, h) in enumerate(g.edges) if t != h]
    k = g.vertex_count - 1
    total = math.comb(len(candidates), k)
    if total > budget:
        raise BudgetExceeded(f"{total} edge subsets exceeds budget {budget}")
    for combo in itertools.combinations(candidates, k):
        if len(_components(g.vertex_count, (g.edges[e] for e in combo))) == 1:
            yield combo


def xuong_max_genus(g: Multigraph, budget: int | None = None) -> int:
    """Half of ``β(G)`` minus the fewest odd co-tree components over spanning trees."""
    if not g.is_connected():
        raise GraphError("maximum genus needs a connected graph")
    budget = default_budget() if budget is None else budget
    best = None
    for tree in _spanning_trees(g, budget):
        rest = [g.edges[e] for e in range(g.edge_count) if e not in set(tree)]
        odd = sum(1 for _, cnt in _components(g.vertex_count, rest) if cnt % 2)
        best = odd if best is None else min(best, odd)
    beta_g = g.edge_count - g.vertex_count + 1
    return (beta_g - best) // 2


def nebesky_max_genus(g: Multigraph, budget: int | None = None) -> int:
    """``(q - n + 2 - max_A {c(A) + b(A) - |A|}) / 2`` over all edge subsets ``A``."""
    if not g.is_connected():
        raise GraphError("maximum genus needs a connected graph")
    budget = default_budget() if budget is None else budget
    if 2**g.edge_count > budget:
        raise BudgetExceeded(f"2^{g.edge_count} edge subsets exceeds budget {budget}")
    best = None
    for mask in range(2**g.edge_count):
        kept = [g.edges[e] for e in range(g.edge_count) if not mask >> e & 1]
        comps = _components(g.vertex_count, kept)
        b = sum(1 for vs, cnt in comps if cnt % 2 == len(vs) % 2)
        value = len(comps) + b - bin(mask).count("1")
        best = value if best is None else max(best, value)
    top = g.edge_count - g.vertex_count + 2 - best
    if top % 2:
        raise GraphError("odd numerator in the maximum genus formula")
    return top // 2


# rooted maps


def rooted_code(m: CombinatorialMap, root: int) -> tuple[tuple[int, int, int], ...]:
    """Relabel quadricells in BFS order from ``root`` under ``α, β, P`` and record their images."""
    label = {root: 0}
    order = [root]
    k = 0
    while k < len(order):
        x = order[k]
        for y in (alpha(x), beta(x), m.P[x]):
            if y not in label:
                label[y] = len(order)
                order.append(y)
        k += 1
    if len(order) != m.size:
        raise MapError("map is not transitive")
    return tuple((label[alpha(x)], label[beta(x)], label[m.P[x]]) for x in order)


def maps_isomorphic(m1: CombinatorialMap, m2: CombinatorialMap) -> bool:
    if m1.edge_count != m2.edge_count:
        return False
    code = rooted_code(m1, 0)
    return any(rooted_code(m2, r) == code for r in range(m2.size))


def map_automorphism_order(m: CombinatorialMap) -> int:
    code = rooted_code(m, 0)
    return sum(1 for r in range(m.size) if rooted_code(m, r) == code)


def rooted_map_count(g: Multigraph, threshold: int | None = None) -> int:
    """``2^{β+1} ε ∏(ρ(v)-1)! / |Aut_{1/2} G|``."""
    _require_embeddable(g)
    aut = semi_arc_automorphism_order(g) if threshold is None else semi_arc_automorphism_order(g, threshold)
    beta_g = g.edge_count - g.vertex_count + 1
    prod = math.prod(math.factorial(r - 1) for r in g.valencies())
    value = Fraction(2 ** (beta_g + 1) * g.edge_count * prod, aut)
    if value.denominator != 1:
        raise GraphError(f"rooted map formula is not an integer: {value}")
    return int(value)


def rooted_maps_exhaustive(g: Multigraph, budget: int | None = None) -> int:
    """Distinct rooted codes over every rotation system with every twist vector."""
    codes = set()
    for rs in iter_rotation_systems(g, normalized=False, budget=budget):
        m = map_from_rotation(rs)
        for r in range(m.size):
            codes.add(rooted_code(m, r))
    return len(codes)


# multi-voltage maps


@dataclass(frozen=True)
class MapVoltage:
    """Voltage ``values[e]`` on cell ``x`` of edge ``e``, read in constituent ``ops[e]``.

    ``ψ(αx) = ψ(x)`` and ``ψ(βx) = ψ(αβx) = ψ(x)^{-1}`` with the inverse taken in
    constituent ``ops[e]``.
    """

    map: CombinatorialMap
    multigroup: MultiGroup
    values: tuple[str, ...]
    ops: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        mg = self.multigroup
        if not mg.same_set_constituents():
            raise MapError("map lifting needs constituents with the same element set")
        values = tuple(str(v) for v in self.values)
        ops = tuple(int(i) for i in self.ops) or (0,) * len(values)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "ops", ops)
        if len(values) != self.map.edge_count or len(ops) != len(values):
            raise MapError("need one voltage and one operation per edge")
        for v, i in zip(values, ops):
            if not 0 <= i < mg.operation_count or v not in mg.groups[i]:
                raise MapError(f"voltage {v!r} not in constituent {i}")

    def cell_voltage(self, q: int) -> str:
        e, k = divmod(q, 4)
        g = self.multigroup.groups[self.ops[e]]
        return self.values[e] if k < 2 else g.inv(self.values[e])

    def cell_op(self, q: int) -> int:
        return self.ops[q // 4]


def face_voltages(mv: MapVoltage, i: int) -> list[str]:
    """Product of cell voltages under ``∘_i`` along one boundary orbit of each face."""
    group = mv.multigroup.groups[i]
    out = []
    for orbit, _ in map_orbits(mv.map).faces:
        out.append(group.product(mv.cell_voltage(q) for q in orbit))
    return out


def face_generation_condition(mv: MapVoltage) -> MapCheck:
    """For every operation and vertex, the voltages of faces at the vertex generate the group."""
    orb = map_orbits(mv.map)
    for i, group in enumerate(mv.multigroup.groups):
        volts = face_voltages(mv, i)
        for v, (c1, c2) in enumerate(orb.vertices):
            cells = set(c1) | set(c2)
            gens = [volts[k] for k, (f1, f2) in enumerate(orb.faces) if cells & (set(f1) | set(f2))]
            if group.generated(gens) != frozenset(group.elements):
                return MapCheck(False, f"face-generation op {i}", v)
    return MapCheck(True)


def lift_map(mv: MapVoltage) -> CombinatorialMap:
    """Lifted map on cells ``x_g``: ``P`` and ``α`` act fiberwise; ``β`` sends ``x_g`` to
    ``(βx)_{g ∘ ψ(x)}`` in the operation attached to ``x``'s edge.

    Lifted edge ``e * |Γ| + index(g)`` holds ``x_g, (αx)_g, (βx)_h, (αβx)_h`` with ``h = g ∘ ψ(x)``.
    """
    mg = mv.multigroup
    elements = mg.groups[0].elements
    order = len(elements)
    pos = {g: k for k, g in enumerate(elements)}
    m = mv.map
    new_index: dict[tuple[int, str], int] = {}
    for e in range(m.edge_count):
        group = mg.groups[mv.ops[e]]
        for g in elements:
            h = group.mul(g, mv.values[e])
            base = 4 * (e * order + pos[g])
            new_index[(4 * e, g)] = base
            new_index[(4 * e + 1, g)] = base + 1
            new_index[(4 * e + 2, h)] = base + 2
            new_index[(4 * e + 3, h)] = base + 3
    image = [0] * (4 * m.edge_count * order)
    for (q, g), k in new_index.items():
        image[k] = new_index[(m.P[q], g)]
    lifted = CombinatorialMap(m.edge_count * order, tuple(image))
    _require_valid(lifted)
    return lifted


def lift_euler_formula(mv: MapVoltage) -> Fraction:
    """``|Γ| (χ(M) + Σ_i Σ_f (1/o(ψ(f, ∘_i)) - 1/n))`` in exact arithmetic."""
    mg = mv.multigroup
    n = mg.operation_count
    total = Fraction(euler_characteristic(mv.map))
    for i, group in enumerate(mg.groups):
        for v in face_voltages(mv, i):
            total += Fraction(1, group.element_order(v)) - Fraction(1, n)
    return mg.groups[0].order * total


# platonic solids


def _platonic_points(name: str) -> np.ndarray:
    phi = (1 + math.sqrt(5)) / 2
    if name == "tetrahedron":
        return np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    if name == "cube":
        return np.array(list(itertools.product((-1, 1), repeat=3)), dtype=float)
    if name == "octahedron":
        return np.array([s * np.eye(3)[k] for k in range(3) for s in (1, -1)], dtype=float)
    if name == "icosahedron":
        pts = []
        for a, b in itertools.product((-1, 1), repeat=2):
            pts += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
        return np.array(pts, dtype=float)
    if name == "dodecahedron":
        pts = [p for p in itertools.product((-1, 1), repeat=3)]
        for a, b in itertools.product((-1, 1), repeat=2):
            pts += [(0, a / phi, b * phi), (a / phi, b * phi, 0), (b * phi, 0, a / phi)]
        return np.array(pts, dtype=float)
    raise MapError(f"unknown solid {name!r}")


def _convex_rotation(points: np.ndarray) -> RotationSystem:
    """Edges join nearest pairs; rotations are counter-clockwise seen from outside."""
    n = len(points)
    dist = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=2)
    shortest = dist[dist > 1e-9].min()
    edges = tuple((a, b) for a, b in itertools.combinations(range(n), 2) if abs(dist[a, b] - shortest) < 1e-6)
    g = Multigraph(n, edges)
    rotation = []
    for v in range(n):
        normal = points[v] / np.linalg.norm(points[v])
        arcs = list(g.incident(v))
        ref = points[g.edges[arcs[0][0]][1 - arcs[0][1]]] - points[v]
        u = ref - normal * ref.dot(normal)
        u /= np.linalg.norm(u)
        w = np.cross(normal, u)

        def angle(arc: SemiArc) -> float:
            d = points[g.edges[arc[0]][1 - arc[1]]] - points[v]
            return math.atan2(d.dot(w), d.dot(u)) % (2 * math.pi)

        rotation.append(tuple(sorted(arcs, key=angle)))
    return RotationSystem(g, tuple(rotation))


PLATONIC = {(3, 3): "tetrahedron", (3, 4): "cube", (3, 5): "dodecahedron", (4, 3): "octahedron", (5, 3): "icosahedron"}


@dataclass(frozen=True)
class PlatonicSolid:
    k: int  # vertex valency
    l: int  # face length
    name: str
    map: CombinatorialMap


def platonic_solids() -> list[PlatonicSolid]:
    """The five ``(k, l)`` sphere maps: ``k``-regular with every face of length ``l``."""
    out = []
    for (k, l), name in PLATONIC.items():
        rs = _convex_rotation(_platonic_points(name))
        out.append(PlatonicSolid(k, l, name, map_from_rotation(rs)))
    return out


def face_lengths(m: CombinatorialMap) -> list[int]:
    return sorted(len(a) for a, _ in map_orbits(m).faces)


__all__ = [
    "BudgetExceeded",
    "CombinatorialMap",
    "DEFAULT_BUDGET",
    "PLATONIC",
    "alpha",
    "beta",
    "default_budget",
    "parse_quadricell",
    "quadricell_name",
    "EmbeddingCensus",
    "GenusRange",
    "GenusValues",
    "MapCheck",
    "MapError",
    "MapOrbits",
    "MapVoltage",
    "PlatonicSolid",
    "RotationSystem",
    "Surface",
    "edge_twist",
    "embedding_count",
    "enumerate_embeddings",
    "euler_characteristic",
    "face_count",
    "face_generation_condition",
    "face_lengths",
    "face_voltages",
    "genus_formulas",
    "genus_range",
    "is_orientable",
    "iter_rotation_systems",
    "klein_bottle_dipole",
    "lift_euler_formula",
    "lift_map",
    "map_automorphism_order",
    "map_from_rotation",
    "map_orbits",
    "maps_isomorphic",
    "nebesky_max_genus",
    "normalize_rotation",
    "platonic_solids",
    "rooted_code",
    "rooted_map_count",
    "rooted_maps_exhaustive",
    "rotation_from_map",
    "spanning_tree_edges",
    "surface",
    "validate_map",
    "vertex_count",
    "xuong_max_genus",
]
