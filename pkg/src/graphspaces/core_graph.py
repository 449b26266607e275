"""Multigraphs with semi-arcs, degree sequences, eccentricity, hamiltonicity
helpers, graph operations and decompositions.

Vertices are dense integer ids ``0..vertex_count-1``. Edges are ``(tail, head)``
pairs with a stable index; a semi-arc is the pair ``(edge_index, end)`` where
end 0 sits at the tail and end 1 at the head. Loops and parallel edges are
allowed everywhere unless an operation says otherwise.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_HAMILTON_THRESHOLD = 12
DEFAULT_CUT_THRESHOLD = 12
DEFAULT_AUT_THRESHOLD = 12


class GraphError(ValueError):
    """Raised when a graph violates an operation's precondition."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive search would exceed its configured budget."""


SemiArc = tuple[int, int]


@dataclass(frozen=True)
class Multigraph:
    """Finite multigraph on vertices ``0..vertex_count-1``.

    >>> g = Multigraph(2, ((0, 1), (1, 1)))
    >>> g.valencies()
    [1, 3]
    >>> g.betti_number()
    1
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()
    _incidence: tuple[tuple[SemiArc, ...], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        object.__setattr__(self, "edges", edges)
        inc: list[list[SemiArc]] = [[] for _ in range(self.vertex_count)]
        for i, (t, h) in enumerate(edges):
            for v in (t, h):
                if not 0 <= v < self.vertex_count:
                    raise GraphError(f"edge {i} endpoint {v} out of range")
            inc[t].append((i, 0))
            inc[h].append((i, 1))
        object.__setattr__(self, "_incidence", tuple(tuple(x) for x in inc))

    # basic data

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def semi_arcs(self) -> list[SemiArc]:
        return [(i, end) for i in range(len(self.edges)) for end in (0, 1)]

    def endpoint(self, arc: SemiArc) -> int:
        e, end = arc
        return self.edges[e][end]

    def incident(self, v: int) -> tuple[SemiArc, ...]:
        """Semi-arcs at ``v`` in edge-index order (a loop contributes two)."""
        return self._incidence[v]

    def valency(self, v: int) -> int:
        return len(self._incidence[v])

    def valencies(self) -> list[int]:
        return [len(a) for a in self._incidence]

    def betti_number(self) -> int:
        """``ε - ν + c``; equals ``ε - ν + 1`` on connected graphs."""
        return self.edge_count - self.vertex_count + len(self.components())

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbours of ``v`` other than ``v`` itself."""
        out = set()
        for e, end in self._incidence[v]:
            w = self.edges[e][1 - end]
            if w != v:
                out.add(w)
        return sorted(out)

    def multiplicity(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return sum(1 for t, h in self.edges if (min(t, h), max(t, h)) == (a, b))

    def edge_multiset(self) -> Counter:
        return Counter((min(t, h), max(t, h)) for t, h in self.edges)

    def has_loops(self) -> bool:
        return any(t == h for t, h in self.edges)

    def is_simple(self) -> bool:
        if self.has_loops():
            return False
        return all(m == 1 for m in self.edge_multiset().values())

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and len(self.components()) == 1

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.vertex_count
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in self.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def subgraph_edges(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Spanning subgraph keeping only the listed edges (order preserved)."""
        return Multigraph(self.vertex_count, tuple(self.edges[i] for i in sorted(set(edge_ids))))

    def relabel(self, mapping: Sequence[int], vertex_count: int | None = None) -> "Multigraph":
        n = self.vertex_count if vertex_count is None else vertex_count
        return Multigraph(n, tuple((mapping[t], mapping[h]) for t, h in self.edges))


# constructors


def empty_graph(n: int) -> Multigraph:
    return Multigraph(n, ())


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Multigraph:
    """``C_n``; ``n = 2`` gives a double edge and ``n = 1`` a loop."""
    if n < 1:
        raise GraphError("cycle needs at least one vertex")
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_bipartite(m: int, n: int) -> Multigraph:
    return Multigraph(m + n, tuple((i, m + j) for i in range(m) for j in range(n)))


def bouquet(n: int) -> Multigraph:
    """``B_n``: one vertex with ``n`` loops."""
    return Multigraph(1, tuple((0, 0) for _ in range(n)))


def dipole(s: int, l: int, t: int) -> Multigraph:
    """``D_{s.l.t}``: ``s`` loops at vertex 0, ``l`` parallel edges, ``t`` loops at vertex 1."""
    edges = [(0, 0)] * s + [(0, 1)] * l + [(1, 1)] * t
    return Multigraph(2, tuple(edges))


def complement(g: Multigraph) -> Multigraph:
    if not g.is_simple():
        raise GraphError("complement is defined for simple graphs")
    present = set(g.edge_multiset())
    return Multigraph(
        g.vertex_count,
        tuple(p for p in itertools.combinations(range(g.vertex_count), 2) if p not in present),
    )


# degree sequences


def _check_sequence(seq: Sequence[int]) -> list[int]:
    if len(seq) == 0:
        raise GraphError("degree sequence must be non-empty")
    if any(d < 0 for d in seq):
        raise GraphError("degrees must be non-negative")
    return sorted((int(d) for d in seq), reverse=True)


def is_graphical_hh(seq: Sequence[int]) -> bool:
    """Havel-Hakimi test for simple-graph realizability.

    >>> is_graphical_hh([3, 3, 2, 2, 2])
    True
    >>> is_graphical_hh([3, 1, 1])
    False
    """
    d = _check_sequence(seq)
    while d and d[0] > 0:
        k = d.pop(0)
        if k > len(d):
            return False
        for i in range(k):
            d[i] -= 1
            if d[i] < 0:
                return False
        d.sort(reverse=True)
    return True


def is_graphical_eg(seq: Sequence[int]) -> bool:
    """Erdős-Gallai test for simple-graph realizability."""
    d = _check_sequence(seq)
    p = len(d)
    if sum(d) % 2:
        return False
    prefix = 0
    for n in range(1, p + 1):
        prefix += d[n - 1]
        rhs = n * (n - 1) + sum(min(n, x) for x in d[n:])
        if prefix > rhs:
            return False
    return True


def realize_sequence(seq: Sequence[int]) -> Multigraph:
    """Simple graph whose valency of vertex ``i`` is ``seq[i]`` (Havel-Hakimi)."""
    if not is_graphical_hh(seq):
        raise GraphError(f"sequence {list(seq)} is not graphical")
    rem = [[int(d), i] for i, d in enumerate(seq)]
    edges = []
    while True:
        rem.sort(key=lambda x: (-x[0], x[1]))
        if rem[0][0] == 0:
            break
        k, v = rem[0]
        rem[0][0] = 0
        for j in range(1, k + 1):
            rem[j][0] -= 1
            edges.append((min(v, rem[j][1]), max(v, rem[j][1])))
    return Multigraph(len(seq), tuple(sorted(edges)))


# adjacency


def adjacency_matrix(g: Multigraph) -> np.ndarray:
    """Symmetric matrix of edge multiplicities; a loop counts once on the diagonal."""
    a = np.zeros((g.vertex_count, g.vertex_count), dtype=np.int64)
    for t, h in g.edges:
        a[t, h] += 1
        if t != h:
            a[h, t] += 1
    return a


def graph_from_adjacency(a: Sequence[Sequence[int]]) -> Multigraph:
    """Inverse of :func:`adjacency_matrix`; edges emitted in row-major order."""
    n = len(a)
    edges = []
    for i in range(n):
        if len(a[i]) != n:
            raise GraphError("adjacency matrix must be square")
        for j in range(i, n):
            if a[i][j] != a[j][i]:
                raise GraphError("adjacency matrix must be symmetric")
            edges.extend([(i, j)] * int(a[i][j]))
    return Multigraph(n, tuple(edges))


# eccentricity


@dataclass(frozen=True)
class EccentricityProfile:
    eccentricities: tuple[int, ...]
    value_sequence: tuple[int, ...]
    radius: int
    diameter: int
    multiplicity_sets: dict[int, tuple[int, ...]]


def eccentricity_profile(g: Multigraph) -> EccentricityProfile:
    if not g.is_connected():
        raise GraphError("eccentricity is undefined on a disconnected graph")
    ecc = tuple(max(g.distances_from(v)) for v in range(g.vertex_count))
    values = tuple(sorted(set(ecc)))
    sets = {l: tuple(v for v in range(g.vertex_count) if ecc[v] == l) for l in values}
    return EccentricityProfile(ecc, values, values[0], values[-1], sets)


def validate_ecc_value_sequence(seq: Sequence[int]) -> bool:
    """True iff ``seq`` is the eccentricity value sequence of some graph."""
    if len(seq) == 0 or seq[0] < 1 or any(b <= a for a, b in zip(seq, seq[1:])):
        raise GraphError("expected a strictly increasing sequence of positive integers")
    if seq[-1] > 2 * seq[0]:
        return False
    return all(b - a == 1 for a, b in zip(seq, seq[1:]))


def construct_ecc_witness(r: int, s: int) -> Multigraph:
    """Graph with eccentricity value sequence ``[r, ..., r+s-1]``.

    ``C_{2r}`` when ``s = 1`` (a double edge for ``r = 1``); otherwise ``C_{2r}``
    with a pendant path of ``s - 1`` vertices hung on vertex 0.
    """
    if r < 1 or s < 1:
        raise GraphError("r and s must be positive")
    if s > r:
        raise GraphError("construction requires s <= r")
    n = 2 * r
    edges = [(i, (i + 1) % n) for i in range(n)]
    prev = 0
    for k in range(1, s):
        edges.append((prev, n + k - 1))
        prev = n + k - 1
    return Multigraph(n + s - 1, tuple(edges))


# hamiltonicity


def brute_force_hamiltonian(
    g: Multigraph, threshold: int = DEFAULT_HAMILTON_THRESHOLD
) -> list[int] | None:
    """A hamiltonian circuit as a vertex list, or ``None``.

    One vertex needs a loop and two vertices need a double edge.
    """
    n = g.vertex_count
    if n > threshold:
        raise BudgetExceeded(f"{n} vertices exceeds hamiltonicity threshold {threshold}")
    if n == 0:
        return None
    if n == 1:
        return [0] if g.has_loops() else None
    if n == 2:
        return [0, 1] if g.multiplicity(0, 1) >= 2 else None
    nbr = [set(g.neighbors(v)) for v in range(n)]
    path = [0]
    used = [False] * n
    used[0] = True

    def extend() -> bool:
        if len(path) == n:
            return 0 in nbr[path[-1]]
        for w in sorted(nbr[path[-1]]):
            if not used[w]:
                used[w] = True
                path.append(w)
                if extend():
                    return True
                path.pop()
                used[w] = False
        return False

    return list(path) if extend() else None


def is_circuit(g: Multigraph, edge_ids: Iterable[int]) -> bool:
    ids = sorted(set(edge_ids))
    if not ids:
        return False
    deg = Counter()
    for i in ids:
        t, h = g.edges[i]
        deg[t] += 1
        deg[h] += 1
    if any(d != 2 for d in deg.values()):
        return False
    sub = g.subgraph_edges(ids)
    comps = [c for c in sub.components() if any(v in deg for v in c)]
    return len(comps) == 1


def is_hamiltonian_circuit_via_cuts(
    g: Multigraph, circuit: Iterable[int], threshold: int = DEFAULT_CUT_THRESHOLD
) -> bool:
    """Edge-cut parity test: every vertex bipartition cut meets C evenly and at least twice."""
    ids = sorted(set(circuit))
    if not is_circuit(g, ids):
        raise GraphError("edge set is not a circuit")
    n = g.vertex_count
    if n > threshold:
        raise BudgetExceeded(f"{n} vertices exceeds cut threshold {threshold}; check spanning directly")
    if any(g.valency(v) == 0 for v in range(n)):
        raise GraphError("graph has isolated vertices")
    ends = [g.edges[i] for i in ids]
    for mask in range(1, 1 << (n - 1)):
        # vertex 0 stays on side 0; bit k-1 puts vertex k on side 1
        side = [0] + [(mask >> (k - 1)) & 1 for k in range(1, n)]
        crossing = sum(1 for t, h in ends if side[t] != side[h])
        if crossing % 2 or crossing < 2:
            return False
    return True


def closure(g: Multigraph) -> Multigraph:
    """Join non-adjacent pairs with valency sum at least ``|G|`` until stable."""
    if not g.is_simple():
        raise GraphError("closure is defined for simple graphs")
    n = g.vertex_count
    adj = [set(g.neighbors(v)) for v in range(n)]
    edges = list(g.edges)
    changed = True
    while changed:
        changed = False
        for u, v in itertools.combinations(range(n), 2):
            if v not in adj[u] and len(adj[u]) + len(adj[v]) >= n:
                adj[u].add(v)
                adj[v].add(u)
                edges.append((u, v))
                changed = True
    return Multigraph(n, tuple(edges))


def decompose_complete_odd(n: int) -> list[list[int]]:
    """Split ``K_{2n+1}`` on ``v_0..v_{2n}`` into ``n`` hamiltonian circuits (zigzag)."""
    if n < 1:
        raise GraphError("n must be positive")
    if n == 1:
        return [[0, 1, 2]]
    m = 2 * n

    def lab(k: int) -> int:
        return (k - 1) % m + 1

    circuits = []
    for i in range(1, n + 1):
        seq = [0, lab(i)]
        for k in range(1, m):
            seq.append(lab(i + (k + 1) // 2) if k % 2 else lab(i - k // 2))
        circuits.append(seq)
    return circuits


def circuit_edges(circuit: Sequence[int]) -> list[tuple[int, int]]:
    """Unordered vertex pairs of a closed vertex sequence."""
    k = len(circuit)
    return [tuple(sorted((circuit[i], circuit[(i + 1) % k]))) for i in range(k)]


def splitting_operator(g: Multigraph, u: int) -> Multigraph:
    """Replace ``u`` by a nucleus that no hamiltonian circuit can pass through.

    The nucleus is a chain of ``d+1`` diamonds ``x_i y_i z_i u_i`` (edges
    ``xy, xz, yz, yu, zu``) linked by ``u_i x_{i+1}``; the ``i``-th semi-arc at ``u``
    is reattached to ``u_i`` for ``i < d``. The first diamond hangs on ``x_0``
    alone, so a hamiltonian circuit would have to close on its four vertices.
    """
    if not 0 <= u < g.vertex_count:
        raise GraphError(f"vertex {u} out of range")
    d = g.valency(u)
    if d < 1:
        raise GraphError("splitting needs a vertex of positive valency")
    old = [v for v in range(g.vertex_count) if v != u]
    index = {v: i for i, v in enumerate(old)}
    base = len(old)

    def x(i: int) -> int:
        return base + 4 * i

    def y(i: int) -> int:
        return base + 4 * i + 1

    def z(i: int) -> int:
        return base + 4 * i + 2

    def uu(i: int) -> int:
        return base + 4 * i + 3

    edges = []
    for i in range(d + 1):
        edges += [(x(i), y(i)), (x(i), z(i)), (y(i), z(i)), (y(i), uu(i)), (z(i), uu(i))]
        if i < d:
            edges.append((uu(i), x(i + 1)))
    port = {arc: uu(k) for k, arc in enumerate(g.incident(u))}
    for e, (t, h) in enumerate(g.edges):
        a = port[(e, 0)] if t == u else index[t]
        b = port[(e, 1)] if h == u else index[h]
        edges.append((a, b))
    return Multigraph(base + 4 * (d + 1), tuple(edges))


# operations


def disjoint_union(g1: Multigraph, g2: Multigraph) -> Multigraph:
    off = g1.vertex_count
    return Multigraph(
        g1.vertex_count + g2.vertex_count,
        g1.edges + tuple((t + off, h + off) for t, h in g2.edges),
    )


def graph_union(g1: Multigraph, g2: Multigraph) -> Multigraph:
    """Union over a shared vertex namespace; multiplicities combine by maximum."""
    n = max(g1.vertex_count, g2.vertex_count)
    m1, m2 = g1.edge_multiset(), g2.edge_multiset()
    edges = []
    for pair in sorted(set(m1) | set(m2)):
        edges += [pair] * max(m1[pair], m2[pair])
    return Multigraph(n, tuple(edges))


def graph_join(g1: Multigraph, g2: Multigraph) -> Multigraph:
    off = g1.vertex_count
    joined = disjoint_union(g1, g2)
    extra = tuple((a, off + b) for a in range(g1.vertex_count) for b in range(g2.vertex_count))
    return Multigraph(joined.vertex_count, joined.edges + extra)


def cartesian_product(g1: Multigraph, g2: Multigraph) -> Multigraph:
    """Vertex ``(a, b)`` gets id ``a * |G2| + b``."""
    n2 = g2.vertex_count
    edges = []
    for t, h in g1.edges:
        for b in range(n2):
            edges.append((t * n2 + b, h * n2 + b))
    for a in range(g1.vertex_count):
        for t, h in g2.edges:
            edges.append((a * n2 + t, a * n2 + h))
    return Multigraph(g1.vertex_count * n2, tuple(edges))


# automorphisms and isomorphisms


def semi_arc_automorphisms(
    g: Multigraph, threshold: int = DEFAULT_AUT_THRESHOLD
) -> list[dict[SemiArc, SemiArc]]:
    """All semi-arc bijections preserving vertex incidence and edge incidence."""
    if 2 * g.edge_count > threshold:
        raise BudgetExceeded(
            f"{2 * g.edge_count} semi-arcs exceeds automorphism threshold {threshold}"
        )
    m = g.edge_count
    vmap: dict[int, int] = {}
    vinv: dict[int, int] = {}
    used = [False] * m
    current: dict[SemiArc, SemiArc] = {}
    found: list[dict[SemiArc, SemiArc]] = []

    def bind(a: int, b: int, log: list[int]) -> bool:
        if a in vmap:
            return vmap[a] == b
        if b in vinv:
            return False
        vmap[a] = b
        vinv[b] = a
        log.append(a)
        return True

    def search(e: int) -> None:
        if e == m:
            found.append(dict(current))
            return
        t, h = g.edges[e]
        for f in range(m):
            if used[f]:
                continue
            ft, fh = g.edges[f]
            if (t == h) != (ft == fh):
                continue
            for flip in (0, 1):
                img = (fh, ft) if flip else (ft, fh)
                log: list[int] = []
                if bind(t, img[0], log) and bind(h, img[1], log):
                    used[f] = True
                    current[(e, 0)] = (f, flip)
                    current[(e, 1)] = (f, 1 - flip)
                    search(e + 1)
                    used[f] = False
                for a in log:
                    del vinv[vmap.pop(a)]

    search(0)
    return found


def semi_arc_automorphism_order(g: Multigraph, threshold: int = DEFAULT_AUT_THRESHOLD) -> int:
    """``|Aut_{1/2} G|``.

    >>> semi_arc_automorphism_order(bouquet(2))
    8
    """
    return len(semi_arc_automorphisms(g, threshold))


def find_isomorphism(g1: Multigraph, g2: Multigraph) -> list[int] | None:
    """Vertex bijection ``phi`` with equal edge multiplicities on every pair, or ``None``."""
    n = g1.vertex_count
    if n != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    a1, a2 = adjacency_matrix(g1), adjacency_matrix(g2)
    sig1 = [(int(a1[v, v]), tuple(sorted(a1[v]))) for v in range(n)]
    sig2 = [(int(a2[v, v]), tuple(sorted(a2[v]))) for v in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    # visit vertices so that each one after the first of its component is adjacent to an earlier one
    order: list[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in g1.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    phi = [-1] * n
    taken = [False] * n

    def search(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if taken[w] or sig1[v] != sig2[w]:
                continue
            if all(a1[v, u] == a2[w, phi[u]] for u in order[:k]):
                phi[v] = w
                taken[w] = True
                if search(k + 1):
                    return True
                taken[w] = False
                phi[v] = -1
        return False

    return list(phi) if search(0) else None


def is_automorphism(g: Multigraph, perm: Sequence[int]) -> bool:
    return g.relabel(perm).edge_multiset() == g.edge_multiset()


# decompositions


@dataclass(frozen=True)
class Part:
    kind: str  # "bouquet" or "dipole"
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def decompose_bouquets_dipoles(g: Multigraph) -> list[Part]:
    """Loops at each vertex form a bouquet; parallel classes of non-loops form dipoles."""
    groups: dict[tuple[int, int], list[int]] = {}
    for i, (t, h) in enumerate(g.edges):
        groups.setdefault((min(t, h), max(t, h)), []).append(i)
    parts = []
    for (a, b), ids in sorted(groups.items()):
        if a == b:
            parts.append(Part("bouquet", (a,), tuple(ids)))
        else:
            parts.append(Part("dipole", (a, b), tuple(ids)))
    return parts
