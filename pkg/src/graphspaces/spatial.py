"""Graphs in space: space permutations, rectilinear embeddings, planar block
numbers, multi-embedding arithmetic and n-dimensional manifold graphs.

Manifold graph cells are ``(e, μ^a o^b)`` stored as ``2n*e + n*a + b``; ``μ``
flips ``a`` and ``o`` shifts ``b`` modulo ``n``. For ``n >= 3`` the pair
``(e, a)`` is read as a semi-arc, so ``μ`` swaps the two ends of an edge.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import perms
from .core_graph import (
    BudgetExceeded,
    GraphError,
    Multigraph,
    SemiArc,
    find_isomorphism,
    semi_arc_automorphism_order,
)
from .maps import (
    CombinatorialMap,
    MapCheck,
    RotationSystem,
    default_budget,
    enumerate_embeddings,
    map_from_rotation,
    rotation_from_map,
    validate_map,
)


class SpatialError(ValueError):
    """Raised for out-of-domain parameters and malformed manifold graphs."""


# space permutations


SpacePermutation = tuple[tuple[SemiArc, ...], ...]


def count_space_embeddings(g: Multigraph, n: int = 3) -> int:
    """``∏ ρ(v)!`` embeddings of ``g`` in an ``n``-manifold, ``n >= 3``."""
    if n < 3:
        raise SpatialError("space permutations need dimension n >= 3")
    return math.prod(math.factorial(r) for r in g.valencies())


def space_permutations(g: Multigraph, budget: int | None = None) -> Iterator[SpacePermutation]:
    """Every choice of a linear order of the semi-arcs at each vertex."""
    budget = default_budget() if budget is None else budget
    total = math.prod(math.factorial(r) for r in g.valencies())
    if total > budget:
        raise BudgetExceeded(f"{total} space permutations exceeds budget {budget}")
    per_vertex = [list(itertools.permutations(g.incident(v))) for v in range(g.vertex_count)]
    yield from itertools.product(*per_vertex)


# rectilinear embeddings


Point = tuple[Fraction, Fraction, Fraction]


def rectilinear_coordinates(g: Multigraph, ts: Sequence[int | Fraction] | None = None) -> list[Point]:
    """Vertex ``i`` goes to ``(t_i, t_i^2, t_i^3)`` on the moment curve."""
    if not g.is_simple():
        raise GraphError("rectilinear embedding needs a simple graph")
    ts = list(range(1, g.vertex_count + 1)) if ts is None else list(ts)
    if len(ts) != g.vertex_count or len(set(ts)) != len(ts):
        raise SpatialError("need one distinct parameter per vertex")
    return [(Fraction(t), Fraction(t) ** 2, Fraction(t) ** 3) for t in ts]


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _dot(p, q):
    return sum(a * b for a, b in zip(p, q))


def _on_segment(x, p, q) -> bool:
    """``x`` lies on the closed segment ``pq``."""
    d, w = _sub(q, p), _sub(x, p)
    if any(_cross(d, w)):
        return False
    s = _dot(w, d)
    return 0 <= s <= _dot(d, d)


def segments_meet(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Exact test whether closed segments ``p1p2`` and ``q1q2`` share a point."""
    r, d, w = _sub(p2, p1), _sub(q2, q1), _sub(q1, p1)
    if _dot(w, _cross(r, d)) != 0:
        return False  # skew lines
    rxd = _cross(r, d)
    denom = _dot(rxd, rxd)
    if denom == 0:
        return any(_on_segment(x, p1, p2) for x in (q1, q2)) or any(_on_segment(x, q1, q2) for x in (p1, p2))
    s = Fraction(_dot(_cross(w, d), rxd), denom)
    t = Fraction(_dot(_cross(w, r), rxd), denom)
    return 0 <= s <= 1 and 0 <= t <= 1


def is_rectilinear_embedding(g: Multigraph, points: Sequence[Point]) -> bool:
    """Segments meet only at shared endpoints and no vertex lies inside an edge."""
    if len(points) != g.vertex_count or len(set(points)) != len(points):
        return False
    for (a, b), (c, d) in itertools.combinations(g.edges, 2):
        shared = {a, b} & {c, d}
        if not shared:
            if segments_meet(points[a], points[b], points[c], points[d]):
                return False
            continue
        s = shared.pop()
        x = b if a == s else a
        y = d if c == s else c
        u, v = _sub(points[x], points[s]), _sub(points[y], points[s])
        if not any(_cross(u, v)) and _dot(u, v) > 0:
            return False  # overlapping collinear edges
    for e, (a, b) in enumerate(g.edges):
        for v in range(g.vertex_count):
            if v not in (a, b) and _on_segment(points[v], points[a], points[b]):
                return False
    return True


# planar block number


def planar_block_number(kind: str, n: int, m: int | None = None) -> int:
    """``n_p(K_n) = ⌈n/4⌉``; ``n_p(K(m, n))`` is 2 when both sides have at least 3 vertices, else 1."""
    if kind == "complete":
        if n < 1:
            raise SpatialError("K_n needs n >= 1")
        return -(-n // 4)
    if kind == "bipartite":
        if m is None or m < 1 or n < 1:
            raise SpatialError("K(m, n) needs m, n >= 1")
        return 2 if m >= 3 and n >= 3 else 1
    raise SpatialError(f"unknown graph family {kind!r}")


def induced_subgraph(g: Multigraph, vertices: Iterable[int]) -> Multigraph:
    vs = sorted(set(vertices))
    pos = {v: k for k, v in enumerate(vs)}
    return Multigraph(len(vs), tuple((pos[t], pos[h]) for t, h in g.edges if t in pos and h in pos))


def is_planar(g: Multigraph, budget: int | None = None) -> bool:
    """Genus 0 by exhaustive enumeration, one component at a time."""
    for comp in g.components():
        sub = induced_subgraph(g, comp)
        if sub.edge_count == 0:
            continue
        census = enumerate_embeddings(sub, budget, orientable_only=True)
        if 0 not in census.orientable:
            return False
    return True


def planar_vertex_sets(g: Multigraph, budget: int | None = None) -> set[frozenset[int]]:
    """All vertex sets inducing a planar subgraph.

    Sets are grown by size and tested only when every one-smaller subset is planar,
    since induced subgraphs of planar graphs are planar.
    """
    n = g.vertex_count
    planar: set[frozenset[int]] = {frozenset()}
    for size in range(1, n + 1):
        next_layer = []
        for combo in itertools.combinations(range(n), size):
            s = frozenset(combo)
            if all(s - {v} in planar for v in s) and is_planar(induced_subgraph(g, s), budget):
                next_layer.append(s)
        if not next_layer:
            break
        planar.update(next_layer)
    planar.discard(frozenset())
    return planar


def planar_partitions(g: Multigraph, s: int, planar: set[frozenset[int]] | None = None) -> Iterator[list[frozenset[int]]]:
    """Partitions of the vertex set into exactly ``s`` planar blocks."""
    planar = planar_vertex_sets(g) if planar is None else planar
    by_min: dict[int, list[frozenset[int]]] = {}
    for block in planar:
        by_min.setdefault(min(block), []).append(block)

    def search(remaining: frozenset[int], left: int, acc: list[frozenset[int]]):
        if not remaining:
            if left == 0:
                yield list(acc)
            return
        if left == 0 or left > len(remaining):
            return
        v = min(remaining)
        for block in by_min.get(v, []):
            if block <= remaining:
                acc.append(block)
                yield from search(remaining - block, left - 1, acc)
                acc.pop()

    yield from search(frozenset(range(g.vertex_count)), s, [])


def planar_block_number_exhaustive(g: Multigraph, budget: int | None = None) -> int:
    """Least number of blocks in a partition into planar induced subgraphs."""
    if g.vertex_count == 0:
        return 0
    planar = planar_vertex_sets(g, budget)
    for s in range(1, g.vertex_count + 1):
        if next(planar_partitions(g, s, planar), None) is not None:
            return s
    raise SpatialError("singletons are always planar")  # unreachable


def sphere_multi_embedding_feasible(g: Multigraph, s: int, budget: int | None = None) -> bool:
    """Direct search for a partition into exactly ``s`` planar blocks."""
    if s < 1:
        return False
    return next(planar_partitions(g, s, planar_vertex_sets(g, budget)), None) is not None


def is_including_decomposition(g: Multigraph, blocks: Sequence[Iterable[int]], budget: int | None = None) -> bool:
    """Nested-sphere decomposition: planar blocks, edges only inside or between consecutive blocks."""
    blocks = [frozenset(b) for b in blocks]
    if any(not b for b in blocks) or sorted(v for b in blocks for v in b) != list(range(g.vertex_count)):
        return False
    level = {v: k for k, b in enumerate(blocks) for v in b}
    if any(abs(level[t] - level[h]) > 1 for t, h in g.edges):
        return False
    return all(is_planar(induced_subgraph(g, b), budget) for b in blocks)


def including_decompositions(g: Multigraph, s: int, budget: int | None = None) -> Iterator[list[frozenset[int]]]:
    """Ordered ``s``-block including decompositions, by brute force over level labels."""
    n = g.vertex_count
    if s ** n > (default_budget() if budget is None else budget):
        raise BudgetExceeded(f"{s}^{n} level assignments exceeds budget")
    for levels in itertools.product(range(s), repeat=n):
        blocks = [frozenset(v for v in range(n) if levels[v] == k) for k in range(s)]
        if is_including_decomposition(g, blocks, budget):
            yield blocks


def multi_genus_sums(g: Multigraph, blocks: Sequence[Iterable[int]], budget: int | None = None) -> list[int]:
    """Achievable orientable genus sums when each block is embedded on its own surface."""
    sums = {0}
    for block in blocks:
        sub = induced_subgraph(g, block)
        per = {0}
        for comp in sub.components():
            part = induced_subgraph(sub, comp)
            if part.edge_count == 0:
                continue
            genera = set(enumerate_embeddings(part, budget, orientable_only=True).orientable)
            per = {a + b for a in per for b in genera}
        sums = {a + b for a in sums for b in per}
    return sorted(sums)


# multi-embedding arithmetic


def floor_surd(a: int, x: int, c: int) -> int:
    """``⌊(a + √x) / c⌋`` exactly, for ``x >= 0`` and ``c > 0``."""
    r = math.isqrt(x)
    n = (a + r) // c
    while (n + 1) * c - a <= 0 or ((n + 1) * c - a) ** 2 <= x:
        n += 1
    while n * c - a > 0 and (n * c - a) ** 2 > x:
        n -= 1
    return n


def ceil_surd(a: int, x: int, c: int) -> int:
    """``⌈(a + √x) / c⌉`` exactly, for ``x >= 0`` and ``c > 0``."""
    r = math.isqrt(x)
    n = -(-(a + r) // c)
    while n * c - a < 0 or (n * c - a) ** 2 < x:
        n += 1
    while (n - 1) * c - a >= 0 and ((n - 1) * c - a) ** 2 >= x:
        n -= 1
    return n


def part_bounds(kind: str, g: int, orientable: bool) -> tuple[int, int]:
    """Per-surface bounds on part size for ``K_n`` or ``K(n, n)`` on a surface of genus ``g >= 1``."""
    if g < 1:
        raise SpatialError("surface genus must be at least 1")
    if kind == "complete":
        if orientable:
            return ceil_surd(3, 16 * g + 1, 2), floor_surd(7, 48 * g + 1, 2)
        return ceil_surd(2, 8 * g, 2), floor_surd(7, 24 * g + 1, 2)
    if kind == "bipartite":
        if orientable:
            return ceil_surd(2, 8 * g, 2), floor_surd(4, 16 * g, 2)
        return ceil_surd(1, g, 1), floor_surd(2, 2 * g, 1)
    raise SpatialError(f"unknown graph family {kind!r}")


def multi_embedding_feasible(kind: str, n: int, genera: Sequence[int], orientable: bool) -> bool:
    """Sum of per-surface lower bounds ``<= n <=`` sum of upper bounds."""
    if not genera:
        raise SpatialError("need at least one surface")
    bounds = [part_bounds(kind, g, orientable) for g in genera]
    return sum(lo for lo, _ in bounds) <= n <= sum(hi for _, hi in bounds)


# manifold graphs


@dataclass(frozen=True)
class ManifoldGraph:
    """Permutation ``L`` on the ``2n * edge_count`` cells ``(e, μ^a o^b)``."""

    edge_count: int
    n: int
    L: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise SpatialError("manifold graphs need n >= 2")
        lst = tuple(int(x) for x in self.L)
        if len(lst) != self.size or not perms.is_permutation(lst):
            raise SpatialError("L must permute the 2n*edge_count cells")
        object.__setattr__(self, "L", lst)

    @property
    def size(self) -> int:
        return 2 * self.n * self.edge_count

    def cell(self, e: int, a: int, b: int) -> int:
        return 2 * self.n * e + self.n * a + b % self.n

    def decode(self, c: int) -> tuple[int, int, int]:
        e, r = divmod(c, 2 * self.n)
        return e, r // self.n, r % self.n

    def mu(self, c: int) -> int:
        e, a, b = self.decode(c)
        return self.cell(e, 1 - a, b)

    def o(self, c: int, i: int = 1) -> int:
        e, a, b = self.decode(c)
        return self.cell(e, a, b + i)


def _to_quadricell(mg: ManifoldGraph, c: int) -> int:
    e, a, b = mg.decode(c)
    return 4 * e + a + 2 * b


def validate_manifold_graph(mg: ManifoldGraph) -> MapCheck:
    """Axioms (i) to (iii); for ``n >= 3`` ``L`` must also commute with ``o``.

    At ``n = 2`` the cells are read as quadricells with ``μ = α`` and ``o = β`` and
    the map axioms apply.
    """
    if mg.edge_count == 0:
        return MapCheck(False, "transitivity", None)
    if mg.n == 2:
        return validate_map(manifold_graph_to_map(mg, check=False))
    L = mg.L
    for cyc in perms.cycles(L):
        members = set(cyc)
        for x in cyc:
            if any(mg.o(x, i) in members for i in range(1, mg.n)):
                return MapCheck(False, "o-orbit", x)
    for x in range(mg.size):
        if L[mg.mu(L[x])] != mg.mu(x):
            return MapCheck(False, "mu-conjugation", x)
    for x in range(mg.size):
        if L[mg.o(x)] != mg.o(L[x]):
            return MapCheck(False, "o-commuting", x)
    gens = [tuple(mg.mu(c) for c in range(mg.size)), tuple(mg.o(c) for c in range(mg.size)), L]
    orbs = perms.orbits(mg.size, gens)
    if len(orbs) != 1:
        return MapCheck(False, "transitivity", orbs[1][0])
    return MapCheck(True)


def _require_valid_manifold(mg: ManifoldGraph) -> None:
    check = validate_manifold_graph(mg)
    if not check:
        raise SpatialError(f"invalid manifold graph: axiom {check.axiom} fails at {check.witness}")


@dataclass(frozen=True)
class ManifoldVertex:
    cycles: tuple[tuple[int, ...], ...]  # the n translates o^i C of one L-cycle
    valency: int


def manifold_vertices(mg: ManifoldGraph) -> list[ManifoldVertex]:
    """Vertices as ``o``-classes of ``L``-cycles (``n >= 3``) or map vertices (``n = 2``)."""
    _require_valid_manifold(mg)
    cycles = perms.cycles(mg.L)
    if mg.n == 2:
        from .maps import map_orbits

        m = manifold_graph_to_map(mg)
        back = {4 * e + a + 2 * b: mg.cell(e, a, b) for e in range(mg.edge_count) for a in (0, 1) for b in (0, 1)}
        out = []
        for c1, c2 in map_orbits(m).vertices:
            out.append(ManifoldVertex((tuple(back[q] for q in c1), tuple(back[q] for q in c2)), len(c1)))
        return out
    at = {x: k for k, c in enumerate(cycles) for x in c}
    seen: set[int] = set()
    out = []
    for k, c in enumerate(cycles):
        if k in seen:
            continue
        family = []
        for i in range(mg.n):
            j = at[mg.o(c[0], i)]
            seen.add(j)
            family.append(cycles[j])
        out.append(ManifoldVertex(tuple(family), len(c)))
    return out


def _semi_arc_rotation(mg: ManifoldGraph) -> tuple[Multigraph, tuple[tuple[SemiArc, ...], ...]]:
    verts = manifold_vertices(mg)
    owner = {}
    rotation = []
    for v, vert in enumerate(verts):
        cyc = tuple(mg.decode(x)[:2] for x in vert.cycles[0])
        for s in cyc:
            owner[s] = v
        rotation.append(cyc)
    base = Multigraph(len(verts), tuple((owner[(e, 0)], owner[(e, 1)]) for e in range(mg.edge_count)))
    return base, tuple(rotation)


def underlying_graph(mg: ManifoldGraph) -> Multigraph:
    if mg.n == 2:
        return rotation_from_map(manifold_graph_to_map(mg)).base
    return _semi_arc_rotation(mg)[0]


def manifold_graph_to_map(mg: ManifoldGraph, check: bool = True) -> CombinatorialMap:
    """``n = 2``: the same permutation on quadricells. ``n >= 3``: the rotation read off ``L`` on semi-arcs."""
    if mg.n == 2:
        image = [0] * mg.size
        for c in range(mg.size):
            image[_to_quadricell(mg, c)] = _to_quadricell(mg, mg.L[c])
        m = CombinatorialMap(mg.edge_count, tuple(image))
        if check:
            _require_valid_map(m)
        return m
    if check:
        _require_valid_manifold(mg)
    base, rotation = _semi_arc_rotation(mg)
    return map_from_rotation(RotationSystem(base, rotation))


def _require_valid_map(m: CombinatorialMap) -> None:
    check = validate_map(m)
    if not check:
        raise SpatialError(f"invalid map: axiom {check.axiom} fails at {check.witness}")


def map_to_manifold_graph(m: CombinatorialMap, n: int) -> ManifoldGraph:
    """Inverse correspondence; for ``n >= 3`` the rotation is copied to every ``o``-layer."""
    if n == 2:
        L = [0] * m.size
        mg0 = ManifoldGraph(m.edge_count, 2, tuple(range(m.size)))
        to_cell = {_to_quadricell(mg0, c): c for c in range(m.size)}
        for q in range(m.size):
            L[to_cell[q]] = to_cell[m.P[q]]
        mg = ManifoldGraph(m.edge_count, 2, tuple(L))
        _require_valid_manifold(mg)
        return mg
    rs = rotation_from_map(m)
    if any(rs.twist):
        raise SpatialError("only untwisted rotations lift to manifold graphs")
    empty = ManifoldGraph(m.edge_count, n, tuple(range(2 * n * m.edge_count)))
    L = list(range(empty.size))
    for cyc in rs.rotation:
        for k, (e, a) in enumerate(cyc):
            e2, a2 = cyc[(k + 1) % len(cyc)]
            for b in range(n):
                L[empty.cell(e, a, b)] = empty.cell(e2, a2, b)
    mg = ManifoldGraph(m.edge_count, n, tuple(L))
    _require_valid_manifold(mg)
    return mg


def rooted_manifold_count(g: Multigraph, n: int) -> int:
    """``n ε ∏ ρ(v)! / |Aut_{1/2} G|``."""
    if n < 2:
        raise SpatialError("n must be at least 2")
    aut = semi_arc_automorphism_order(g)
    value = Fraction(n * g.edge_count * math.prod(math.factorial(r) for r in g.valencies()), aut)
    if value.denominator != 1:
        raise GraphError(f"rooted manifold formula is not an integer: {value}")
    return int(value)


def manifold_rooted_code(mg: ManifoldGraph, root: int) -> tuple[tuple[int, int, int], ...]:
    """BFS relabelling from ``root`` under ``μ, o, L``."""
    label = {root: 0}
    order = [root]
    k = 0
    while k < len(order):
        x = order[k]
        for y in (mg.mu(x), mg.o(x), mg.L[x]):
            if y not in label:
                label[y] = len(order)
                order.append(y)
        k += 1
    return tuple((label[mg.mu(x)], label[mg.o(x)], label[mg.L[x]]) for x in order)


def iter_manifold_graphs(edge_count: int, n: int, budget: int | None = None) -> Iterator[ManifoldGraph]:
    """Valid ``o``-commuting manifold graphs: a semi-arc permutation plus an ``o``-shift per semi-arc."""
    if n < 3:
        raise SpatialError("enumeration covers n >= 3")
    budget = default_budget() if budget is None else budget
    arcs = 2 * edge_count
    total = math.factorial(arcs) * n**arcs
    if total > budget:
        raise BudgetExceeded(f"{total} candidate permutations exceeds budget {budget}")
    for bar in itertools.permutations(range(arcs)):
        for shifts in itertools.product(range(n), repeat=arcs):
            L = [0] * (arcs * n)
            for s in range(arcs):
                for b in range(n):
                    L[s * n + b] = bar[s] * n + (b + shifts[s]) % n
            mg = ManifoldGraph(edge_count, n, tuple(L))
            if validate_manifold_graph(mg):
                yield mg


def rooted_manifolds_exhaustive(g: Multigraph, n: int, budget: int | None = None) -> int:
    """Distinct rooted codes over all manifold graphs whose underlying graph is ``g``."""
    codes = set()
    for mg in iter_manifold_graphs(g.edge_count, n, budget):
        h = underlying_graph(mg)
        if h.vertex_count != g.vertex_count or find_isomorphism(h, g) is None:
            continue
        for r in range(mg.size):
            codes.add(manifold_rooted_code(mg, r))
    return len(codes)


__all__ = [
    "ManifoldGraph",
    "ManifoldVertex",
    "SpacePermutation",
    "SpatialError",
    "ceil_surd",
    "count_space_embeddings",
    "floor_surd",
    "including_decompositions",
    "induced_subgraph",
    "is_including_decomposition",
    "is_planar",
    "is_rectilinear_embedding",
    "iter_manifold_graphs",
    "manifold_graph_to_map",
    "manifold_rooted_code",
    "manifold_vertices",
    "map_to_manifold_graph",
    "multi_embedding_feasible",
    "multi_genus_sums",
    "part_bounds",
    "planar_block_number",
    "planar_block_number_exhaustive",
    "planar_partitions",
    "planar_vertex_sets",
    "rectilinear_coordinates",
    "rooted_manifold_count",
    "rooted_manifolds_exhaustive",
    "segments_meet",
    "space_permutations",
    "sphere_multi_embedding_feasible",
    "underlying_graph",
    "validate_manifold_graph",
]
