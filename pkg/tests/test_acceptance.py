"""Acceptance suite: one PASS/FAIL line per criterion, printed after the module runs.

Each criterion is checked against an oracle that does not share code with the
routine under test (brute force, networkx, closed forms written out here, or
literal reference values). Runtime budgets are asserted alongside correctness.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from collections import Counter, defaultdict
from contextlib import contextmanager
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from generators import SMALL_GROUPS, random_generating_set, random_multigroup, same_set_multigroup
from graphspaces.algsys import (
    CYCLIC3_TABLE,
    PARTIAL4_TABLE,
    analyze_properties,
    euler_analysis,
    check_one_way_pairing,
    graph_model,
    is_euler_circuit,
    PartialBinarySystem,
    reconstruct_system,
)
from graphspaces.core_graph import (
    Multigraph,
    adjacency_matrix,
    bouquet,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    decompose_complete_odd,
    dipole,
    is_graphical_eg,
    is_graphical_hh,
    path_graph,
    realize_sequence,
)
from graphspaces.documents import dump_document, load_document
from graphspaces.groups import FiniteGroup, MultiGroup, abelian_groups, cayley_graph, cayley_graph_multigroup
from graphspaces.groups import factorize_cayley, is_multigroup_cayley_connected
from graphspaces.maps import (
    CombinatorialMap,
    MapError,
    MapVoltage,
    RotationSystem,
    embedding_count,
    enumerate_embeddings,
    euler_characteristic,
    face_generation_condition,
    genus_formulas,
    genus_range,
    is_orientable,
    lift_euler_formula,
    lift_map,
    map_from_rotation,
    map_orbits,
    nebesky_max_genus,
    rooted_map_count,
    rooted_maps_exhaustive,
    validate_map,
    xuong_max_genus,
)
from graphspaces.phases import GraphPhase, differential_check, phase_matrices, verify_star_identity
from graphspaces.spatial import (
    multi_embedding_feasible,
    planar_block_number,
    planar_block_number_exhaustive,
    rooted_manifold_count,
    rooted_manifolds_exhaustive,
)
from graphspaces.voltage import (
    MultiVoltage1,
    action_from_perms,
    circuit_homogeneous_liftings,
    deck_action,
    lift_type1,
    lift_walk,
    reconstruct_voltage_from_action,
)
from oracles import nx_isomorphic, realizable_sorted_sequences, to_nx

TITLES = {
    1: "adjacency matrix of the looped 4-cycle",
    2: "Havel-Hakimi = Erdos-Gallai = brute force, p <= 7",
    3: "K_{2n+1} splits into n hamiltonian circuits, n <= 5",
    4: "Klein bottle dipole orbits",
    5: "K_4 embedding census 16/112/128",
    6: "genus and crosscap formulas with brute-force minima",
    7: "Xuong = Nebesky = enumerated maximum genus",
    8: "rooted map and rooted manifold counts",
    9: "walk, circuit and quotient liftings",
    10: "Euler characteristic of multi-voltage map lifts",
    11: "multi-group Cayley graphs",
    12: "graph model of Z_4 and the two reference tables",
    13: "phase star identity and finite differences",
    14: "multi-embedding arithmetic and planar block numbers",
}

RESULTS: dict[int, list[tuple[bool, str]]] = defaultdict(list)


@contextmanager
def criterion(n: int, part: str, budget: float):
    """Record one part of criterion ``n``; wall time is checked against ``budget`` seconds.

    The body may append short notes to the yielded list; they are shown in the report.
    """
    notes: list[str] = []
    start = time.perf_counter()
    try:
        yield notes
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"{part} took {elapsed:.3f}s, budget {budget}s"
    except BaseException as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        RESULTS[n].append((False, f"{part}: {msg}"))
        raise
    extra = f" [{', '.join(notes)}]" if notes else ""
    RESULTS[n].append((True, f"{part}{extra} ({_fmt(elapsed)})"))


def _fmt(seconds: float) -> str:
    return f"{seconds * 1e3:.2f} ms" if seconds < 1 else f"{seconds:.2f} s"


def best_time(fn, repeat: int = 7) -> float:
    """Smallest wall time of ``repeat`` calls; sub-millisecond budgets are checked on this."""
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(RESULTS):
        parts = RESULTS[n]
        status = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        lines.append(f"{status} {n:>2}. {TITLES[n]} | " + "; ".join(text for _, text in parts))
    return lines


@pytest.fixture(scope="module", autouse=True)
def acceptance_report(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = summary_lines()
    if reporter is None:  # pragma: no cover
        print("\n".join(lines))
        return
    reporter.write_line("")
    for line in lines:
        reporter.write_line(line)


# 1. adjacency matrix

LOOPED_SQUARE_EDGES = ((0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (3, 0))
LOOPED_SQUARE_MATRIX = [[1, 1, 0, 2], [1, 1, 2, 0], [0, 2, 1, 1], [2, 0, 1, 1]]


def test_c01_adjacency_matrix():
    with criterion(1, "matrix reproduced", budget=5.0):

        def build():
            return adjacency_matrix(Multigraph(4, LOOPED_SQUARE_EDGES))

        assert build().tolist() == LOOPED_SQUARE_MATRIX
        t = best_time(build)
        assert t < 1e-3, f"best time {t * 1e3:.3f} ms"


# 2. degree sequences


def test_c02_graphical_sequences():
    with criterion(2, "exhaustive", budget=60.0) as notes:
        checked = 0
        for p in range(1, 8):
            truth = realizable_sorted_sequences(p)
            for seq in itertools.combinations_with_replacement(range(p - 1, -1, -1), p):
                expected = seq in truth
                assert is_graphical_hh(seq) == expected, seq
                assert is_graphical_eg(seq) == expected, seq
                if expected:
                    g = realize_sequence(seq)
                    assert g.is_simple() and sorted(g.valencies(), reverse=True) == list(seq)
                checked += 1
        assert checked > 1000
        notes.append(f"{checked} sequences")


# 3. hamiltonian decomposition of K_{2n+1}


def test_c03_complete_odd_decomposition():
    with criterion(3, "n = 1..5", budget=1.0):
        for n in range(1, 6):
            p = 2 * n + 1
            circuits = decompose_complete_odd(n)
            assert len(circuits) == n
            seen: Counter = Counter()
            for c in circuits:
                assert sorted(c) == list(range(p))
                h = nx.Graph()
                pairs = [frozenset((c[i], c[(i + 1) % p])) for i in range(p)]
                h.add_edges_from(tuple(e) for e in pairs)
                assert h.number_of_edges() == p and all(d == 2 for _, d in h.degree()) and nx.is_connected(h)
                seen.update(pairs)
            assert set(seen) == {frozenset(e) for e in itertools.combinations(range(p), 2)}
            assert set(seen.values()) == {1}


# 4. Klein bottle dipole

KLEIN_P = [
    ["e0.1", "e1.1", "e2.1", "e3.1"],
    ["e0.ab", "e1.ab", "e2.b", "e3.b"],
    ["e0.a", "e3.a", "e2.a", "e1.a"],
    ["e0.b", "e3.ab", "e2.ab", "e1.b"],
]
KLEIN_VERTICES = [
    {("e0.1", "e1.1", "e2.1", "e3.1"), ("e0.a", "e3.a", "e2.a", "e1.a")},
    {("e0.ab", "e1.ab", "e2.b", "e3.b"), ("e0.b", "e3.ab", "e2.ab", "e1.b")},
]
KLEIN_FACES = [
    {("e0.1", "e1.ab", "e2.1", "e1.b", "e0.a", "e3.ab"), ("e0.b", "e3.a", "e0.ab", "e1.1", "e2.b", "e1.a")},
    {("e3.b", "e2.a"), ("e3.1", "e2.ab")},
]


def _rotate_min(cycle):
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def _names(cycle):
    return tuple(f"e{q // 4}.{('1', 'a', 'b', 'ab')[q % 4]}" for q in cycle)


def test_c04_klein_dipole():
    with criterion(4, "orbits match", budget=5.0):
        m = CombinatorialMap.from_cycles(4, KLEIN_P)
        orb = map_orbits(m)

        def canon(groups):
            return sorted(sorted(_rotate_min(list(_names(c))) for c in pair) for pair in groups)

        def canon_ref(groups):
            return sorted(sorted(_rotate_min(list(c)) for c in pair) for pair in groups)

        assert canon(orb.vertices) == canon_ref(KLEIN_VERTICES)
        assert canon(orb.faces) == canon_ref(KLEIN_FACES)
        assert [set(e) for e in orb.edges] == [set(range(4 * k, 4 * k + 4)) for k in range(4)]
        nu, eps, phi = len(orb.vertices), len(orb.edges), len(orb.faces)
        assert (nu, eps, phi) == (2, 4, 2)
        assert euler_characteristic(m) == nu - eps + phi == 0
        assert not is_orientable(m)
        t = best_time(lambda: (map_orbits(m), is_orientable(m)))
        assert t < 1e-3, f"best time {t * 1e3:.3f} ms"


# 5. K_4 census


def _faces_by_tracing(rs: RotationSystem) -> int:
    """Faces of an untwisted rotation system: cycles of "cross the edge, then turn to the next arc"."""
    pos = {}
    for v, cyc in enumerate(rs.rotation):
        for k, arc in enumerate(cyc):
            pos[arc] = (v, k)
    seen = set()
    faces = 0
    for start in pos:
        if start in seen:
            continue
        faces += 1
        arc = start
        while arc not in seen:
            seen.add(arc)
            v, k = pos[(arc[0], 1 - arc[1])]
            cyc = rs.rotation[v]
            arc = cyc[(k + 1) % len(cyc)]
    return faces


def test_c05_k4_census():
    with criterion(5, "census", budget=1.0):
        k4 = complete_graph(4)
        census = enumerate_embeddings(k4)
        assert (census.orientable_total, census.nonorientable_total, census.total) == (16, 112, 128)
        assert embedding_count(k4) == (16, 128)
        assert sorted(census.orientable) == [0, 1]
        genera = sorted(census.orientable)
        assert genera == list(range(genera[0], genera[-1] + 1))
    with criterion(5, "orientable genera by face tracing", budget=1.0):
        hist: Counter = Counter()
        for rots in itertools.product(*[list(_cyclic_orders(k4, v)) for v in range(4)]):
            rs = RotationSystem(k4, rots)
            phi = _faces_by_tracing(rs)
            hist[(2 - 4 + 6 - phi) // 2] += 1
        assert dict(hist) == census.orientable


def _cyclic_orders(g: Multigraph, v: int):
    arcs = list(g.incident(v))
    first, rest = arcs[0], arcs[1:]
    for perm in itertools.permutations(rest):
        yield (first,) + perm


# 6. genus formulas

GENUS_K = {3: 0, 4: 0, 5: 1, 6: 1, 7: 1, 8: 2, 9: 3, 10: 4, 11: 5, 12: 6}
CROSSCAP_K = {3: 0, 4: 0, 5: 1, 6: 1, 7: 3, 8: 4, 9: 5, 10: 7, 11: 10, 12: 12}


def test_c06_genus_formulas():
    with criterion(6, "closed forms", budget=1.0):
        for n in range(3, 13):
            v = genus_formulas("complete", n)
            assert (v.gamma, v.gamma_tilde) == (GENUS_K[n], CROSSCAP_K[n]), n
        for m in range(3, 9):
            for n in range(3, 9):
                v = genus_formulas("bipartite", n, m)
                assert v.gamma == -(-(m - 2) * (n - 2) // 4)
                assert v.gamma_tilde == -(-(m - 2) * (n - 2) // 2)
        assert genus_formulas("complete", 7).gamma_tilde == 3
    with criterion(6, "brute-force minima K_4, K_5, K(3,3)", budget=300.0):
        for g, kind, args in [
            (complete_graph(4), "complete", (4,)),
            (complete_graph(5), "complete", (5,)),
            (complete_bipartite(3, 3), "bipartite", (3, 3)),
        ]:
            assert embedding_count(g)[1] <= 10**6
            r = genus_range(g)
            v = genus_formulas(kind, *args)
            assert r.genus == v.gamma
            assert r.nonorientable_genus == v.gamma_tilde


# 7. maximum genus


def regression_corpus() -> list[Multigraph]:
    """Named small graphs plus seeded random connected multigraphs, all with at most 8 edges."""
    named = [
        path_graph(4),
        cycle_graph(5),
        bouquet(1),
        bouquet(2),
        bouquet(3),
        bouquet(4),
        dipole(0, 3, 0),
        dipole(1, 2, 1),
        dipole(2, 2, 1),
        complete_graph(4),
        Multigraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3))),
        complete_bipartite(2, 3),
        complete_bipartite(2, 4),
        Multigraph(5, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1))),
    ]
    rng = random.Random(7)
    out = list(named)
    while len(out) < len(named) + 30:
        n = rng.randint(1, 5)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        for _ in range(rng.randint(1 if n == 1 else 0, 8 - len(edges))):
            edges.append((rng.randrange(n), rng.randrange(n)))
        g = Multigraph(n, tuple(edges))
        if embedding_count(g)[1] <= 200_000:
            out.append(g)
    return out


def test_c07_maximum_genus():
    with criterion(7, "corpus", budget=120.0) as notes:
        corpus = regression_corpus()
        notes.append(f"{len(corpus)} graphs")
        for g in corpus:
            assert g.edge_count <= 8 and nx.is_connected(to_nx(g))
            r = genus_range(g)
            assert xuong_max_genus(g) == nebesky_max_genus(g) == r.max_genus, g
            betti = g.edge_count - g.vertex_count + 1
            if betti > 0:
                assert max(r.nonorientable) == betti, g
            else:
                assert r.nonorientable == ()
    with criterion(7, "K_4 and K_5", budget=60.0):
        k4, k5 = complete_graph(4), complete_graph(5)
        assert xuong_max_genus(k4) == nebesky_max_genus(k4) == 1
        assert xuong_max_genus(k5) == nebesky_max_genus(k5) == 3
        assert max(enumerate_embeddings(k5, orientable_only=True).orientable) == 3


# 8. rooted counts


@pytest.mark.parametrize("name,g,expected", [
    ("B_1", bouquet(1), 2),
    ("B_2", bouquet(2), 12),
    ("K_3", complete_graph(3), None),
    ("K_4", complete_graph(4), None),
])
def test_c08a_rooted_maps(name, g, expected):
    with criterion(8, f"rooted maps {name}", budget=60.0):
        formula = rooted_map_count(g)
        exhaustive = rooted_maps_exhaustive(g)
        assert formula == exhaustive, f"formula {formula}, enumeration {exhaustive}"
        if expected is not None:
            assert formula == expected


@pytest.mark.xfail(strict=True, reason="closed form gives 3 rooted manifold graphs on B_1 at n=3; "
                   "the exhaustive enumeration finds 1 (see decisions ledger)")
def test_c08b_rooted_manifold_b1():
    with criterion(8, "rooted manifold B_1 n=3", budget=60.0):
        formula = rooted_manifold_count(bouquet(1), 3)
        exhaustive = rooted_manifolds_exhaustive(bouquet(1), 3)
        assert formula == exhaustive, f"formula {formula}, enumeration {exhaustive}"


# 9. voltage liftings


def _walk_oracle(lift, walk, start_vertex):
    """Lifted walks by depth-first search in the lifted graph, following base edges."""
    by_edge = defaultdict(list)
    for k, (e, _, _) in enumerate(lift.edge_labels):
        by_edge[e].append(k)
    count = 0
    stack = [(start_vertex, 0)]
    while stack:
        x, step = stack.pop()
        if step == len(walk):
            count += 1
            continue
        e, end = walk[step]
        for k in by_edge[e]:
            ends = lift.graph.edges[k]
            if ends[end] == x:
                stack.append((ends[1 - end], step + 1))
    return count


def _power_order(group: FiniteGroup, x: str) -> int:
    y, k = x, 1
    while y != group.identity:
        y, k = group.mul(y, x), k + 1
    return k


def test_c09_walk_circuit_quotient():
    rng = random.Random(9)
    with criterion(9, "200 walks", budget=120.0):
        for _ in range(200):
            n, k = rng.randint(1, 3), rng.randint(1, 5)
            mg = same_set_multigroup(rng, rng.choice(SMALL_GROUPS), n)
            nv = rng.randint(1, 4)
            base = Multigraph(nv, tuple((rng.randrange(nv), rng.randrange(nv)) for _ in range(rng.randint(1, 5))))
            mv = MultiVoltage1(base, mg, tuple(rng.choice(mg.universe) for _ in range(base.edge_count)))
            walk = [rng.choice(base.semi_arcs())]
            while len(walk) < k:
                e, end = walk[-1]
                walk.append(rng.choice(base.incident(base.edges[e][1 - end])))
            start = rng.choice(mg.universe)
            lift = lift_type1(mv)
            first_e, first_end = walk[0]
            origin = lift.index[(base.edges[first_e][first_end], start)]
            assert len(lift_walk(mv, walk, start)) == n**k
            assert _walk_oracle(lift, walk, origin) == n**k
    with criterion(9, "100 circuits", budget=120.0):
        for _ in range(100):
            m = rng.randint(1, 5)
            base = cycle_graph(m)
            circuit = [(i, 0) for i in range(m)]
            mg = same_set_multigroup(rng, rng.choice(SMALL_GROUPS), rng.randint(1, 3))
            psi = tuple(rng.choice(mg.universe) for _ in range(m))
            mv = MultiVoltage1(base, mg, psi)
            lift = lift_type1(mv)
            for res in circuit_homogeneous_liftings(mv, circuit):
                group = mg.groups[res.op]
                prod = group.identity
                for x in psi:
                    prod = group.mul(prod, x)
                o = _power_order(group, prod)
                h = nx.MultiGraph()
                for kk, (e, _, op) in enumerate(lift.edge_labels):
                    if op == res.op:
                        h.add_edge(*lift.graph.edges[kk])
                cycles = [h.subgraph(c).number_of_edges() for c in nx.connected_components(h)]
                assert (res.count, res.length) == (group.order // o, o * m)
                assert sorted(cycles) == [o * m] * (group.order // o)
    with criterion(9, "50 quotient round trips", budget=120.0):
        for _ in range(50):
            group = rng.choice(SMALL_GROUPS)
            nv = rng.randint(1, 3)
            base = Multigraph(nv, tuple((rng.randrange(nv), rng.randrange(nv)) for _ in range(rng.randint(1, 4))))
            mv = MultiVoltage1(base, MultiGroup((group,)), tuple(rng.choice(group.elements) for _ in base.edges))
            graph, action = deck_action(mv)
            perm = list(range(graph.vertex_count))
            rng.shuffle(perm)
            inv = {p: v for v, p in enumerate(perm)}
            moved = graph.relabel(perm)
            vperms = {x: tuple(perm[p[inv[w]]] for w in range(len(perm))) for x, p in action.vertex_perms.items()}
            for p in vperms.values():
                assert p == tuple(range(len(p))) or all(p[w] != w for w in range(len(p)))
            moved_action = action_from_perms(moved, group, vperms, action.arc_perms)
            rec = reconstruct_voltage_from_action(moved, moved_action)
            assert nx_isomorphic(moved, lift_type1(rec.voltage).graph)


# 10. Euler characteristic of map lifts


def _random_rotation(rng: random.Random) -> RotationSystem:
    n = rng.randint(1, 4)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(rng.randint(1 if n == 1 else 0, 5 - len(edges))):
        edges.append((rng.randrange(n), rng.randrange(n)))
    g = Multigraph(n, tuple(edges))
    rotation = []
    for v in range(n):
        arcs = list(g.incident(v))
        rng.shuffle(arcs)
        rotation.append(tuple(arcs))
    return RotationSystem(g, tuple(rotation), tuple(rng.randint(0, 1) for _ in edges))


def _lift_instances(rng: random.Random, count: int, ops: tuple[int, ...]):
    groups = [g for g in SMALL_GROUPS if g.order <= 6]
    out = []
    while len(out) < count:
        n = rng.choice(ops)
        m = map_from_rotation(_random_rotation(rng))
        mg = same_set_multigroup(rng, rng.choice(groups), n)
        values = tuple(rng.choice(mg.groups[0].elements) for _ in range(m.edge_count))
        mv = MapVoltage(m, mg, values, tuple(rng.randrange(n) for _ in range(m.edge_count)))
        if face_generation_condition(mv):
            out.append(mv)
    return out


def _lift_identity_holds(mv: MapVoltage) -> bool:
    try:
        lifted = lift_map(mv)
    except MapError:
        return False
    return bool(validate_map(lifted)) and Fraction(euler_characteristic(lifted)) == lift_euler_formula(mv)


def test_c10a_single_operation_lifts():
    with criterion(10, "100 single-operation instances", budget=60.0):
        bad = [mv for mv in _lift_instances(random.Random(10), 100, (1,)) if not _lift_identity_holds(mv)]
        assert not bad, f"{len(bad)} of 100 violate the identity"


@pytest.mark.xfail(strict=True, reason="with two or more operations the lift violates the identity on most "
                   "instances; one operation passes (see decisions ledger)")
def test_c10b_multi_operation_lifts():
    with criterion(10, "100 instances with 1 to 3 operations", budget=60.0):
        instances = _lift_instances(random.Random(11), 100, (1, 2, 3))
        tally: dict[int, list[int]] = defaultdict(lambda: [0, 0])
        for mv in instances:
            t = tally[mv.multigroup.operation_count]
            t[0] += 1
            t[1] += _lift_identity_holds(mv)
        detail = ", ".join(f"n={n}: {ok}/{total}" for n, (total, ok) in sorted(tally.items()))
        assert all(ok == total for total, ok in tally.values()), f"identity holds on {detail}"


# 11. Cayley graphs


def _inverse_closed_sets(group: FiniteGroup):
    classes = []
    for x in group.elements:
        if x == group.identity:
            continue
        c = frozenset({x, group.inv(x)})
        if c not in classes:
            classes.append(c)
    for r in range(1, len(classes) + 1):
        for pick in itertools.combinations(classes, r):
            yield sorted(set().union(*pick))


def test_c11_cayley():
    rng = random.Random(11)
    with criterion(11, "200 connectivity checks", budget=120.0):
        for _ in range(200):
            mg = random_multigroup(rng, max_universe=12)
            sets = [random_generating_set(rng, g) for g in mg.groups]
            graph = cayley_graph_multigroup(mg, sets).graph
            assert is_multigroup_cayley_connected(mg, sets) == nx.is_connected(to_nx(graph))
    with criterion(11, "factorizations", budget=120.0) as notes:
        checked = 0
        for order in range(2, 13):
            for group in abelian_groups(order):
                for s in _inverse_closed_sets(group):
                    edges = {frozenset(e) for e in cayley_graph(group, s).edges}
                    used: Counter = Counter()
                    for f in factorize_cayley(group, s):
                        h = nx.Graph()
                        h.add_nodes_from(range(order))
                        h.add_edges_from(f.edges)
                        degrees = {d for _, d in h.degree()}
                        assert degrees == ({1} if f.kind == "1-factor" else {2}), (group.elements, s, f)
                        used.update(frozenset(e) for e in f.edges)
                    assert set(used) == edges and set(used.values()) == {1}
                    checked += 1
        assert checked >= 400
        notes.append(f"{checked} connection sets")
    with criterion(11, "20 bouquet lifts", budget=120.0):
        from graphspaces.voltage import cayley_as_bouquet_lift

        for _ in range(20):
            mg = random_multigroup(rng, max_universe=8, max_groups=3)
            sets = [random_generating_set(rng, g) for g in mg.groups]
            res = cayley_as_bouquet_lift(mg, sets)
            lift = lift_type1(res.voltage).graph
            simple = {tuple(sorted((res.vertex_map[t], res.vertex_map[h]))) for t, h in lift.edges}
            assert nx_isomorphic(Multigraph(mg.size, tuple(sorted(simple))), cayley_graph_multigroup(mg, sets).graph)


# 12. algebraic systems

CYCLIC3_DOC = {"kind": "system", "version": 1, "elements": ["e", "a", "b"],
               "table": [["e", "a", "b"], ["a", "b", "e"], ["b", "e", "a"]]}
PARTIAL4_DOC = {"kind": "system", "version": 1, "elements": ["1", "2", "a", "b"],
                "table": [["*", "a", "b", "*"], ["b", "*", "*", "a"], ["*", "*", "*", "1"], ["*", "*", "2", "*"]]}


def test_c12_graph_model_z4():
    with criterion(12, "G[Z_4]", budget=1.0):
        z4 = FiniteGroup(["0", "1", "2", "3"], [[str((a + b) % 4) for b in range(4)] for a in range(4)])
        d = graph_model(PartialBinarySystem.from_group(z4))
        rep = analyze_properties(d)
        assert rep.connected and rep.units == ("0",)
        assert {frozenset(p) for p in rep.inverse_pairs} == {frozenset({a, str((-int(a)) % 4)}) for a in "0123"}
        assert rep.cancellation
        h = nx.MultiDiGraph()
        h.add_edges_from((a.tail, a.head) for a in d.arcs)
        assert nx.is_eulerian(h)
        eu = euler_analysis(d)
        assert eu.is_euler and is_euler_circuit(d, eu.circuit) and check_one_way_pairing(d, eu)
        assert eu.global_map == {w: w for w in z4.elements}
    with criterion(12, "reference tables round trip", budget=1.0):
        for doc, const in [(CYCLIC3_DOC, CYCLIC3_TABLE), (PARTIAL4_DOC, PARTIAL4_TABLE)]:
            _, system = load_document(json.loads(json.dumps(doc)), "system")
            assert system.products() == const.products()
            again = reconstruct_system(graph_model(system))
            assert again.products() == system.products()
            assert load_document(dump_document(again))[1].products() == system.products()


# 13. graph phases


def _lambda_oracle(x, y, op):
    x, y = np.asarray(x), np.asarray(y)
    den = float(np.sum((x - y) ** 2))
    return (np.cross(x, y) if op == "cross" else x * y) / den


def test_c13_phases():
    rng = random.Random(13)
    with criterion(13, "1000 star identities", budget=30.0) as notes:
        worst = 0.0
        for _ in range(1000):
            n = rng.randint(2, 6)
            edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6] or [(0, 1)]
            pts = [tuple(rng.uniform(-5, 5) for _ in range(3)) for _ in range(n)]
            op = rng.choice(["cross", "componentwise"])
            ph = GraphPhase(Multigraph(n, tuple(edges)), tuple(pts), tuple(pts), op)
            dev = verify_star_identity(ph)
            assert dev < 1e-9
            vm, lm = phase_matrices(ph)
            scale = max(1.0, float(np.max(np.abs(lm))))
            for i, j in edges:
                ref = _lambda_oracle(pts[i], pts[j], op)
                assert np.max(np.abs(lm[i, j] - ref)) / scale < 1e-9
                star = np.cross(vm[i, j], vm[j, i]) if op == "cross" else vm[i, j] * vm[j, i]
                assert np.max(np.abs(star - ref)) / scale < 1e-9
            worst = max(worst, dev)
        notes.append(f"worst {worst:.1e}")
    with criterion(13, "second-order differences", budget=30.0) as notes:
        orders = []
        for _ in range(20):
            n = rng.randint(2, 6)
            pts = [tuple(rng.uniform(-5, 5) for _ in range(3)) for _ in range(n)]
            ph = GraphPhase(complete_graph(n), tuple(pts))
            d = [tuple(rng.uniform(-1, 1) for _ in range(3)) for _ in range(n)]
            r1, r2 = differential_check(ph, d, 1e-2), differential_check(ph, d, 5e-3)
            assert r1.capacity_deviation < 1e-9 and r2.capacity_deviation < 1e-9
            if r1.entropy_deviation > 1e-10:
                orders.append(math.log2(r1.entropy_deviation / r2.entropy_deviation))
        assert orders and all(1.6 <= p <= 2.4 for p in orders), orders
        notes.append(f"observed orders {min(orders):.2f}..{max(orders):.2f}")


# 14. multi-embedding arithmetic


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def _planar_block_oracle(n: int) -> int:
    """Fewest parts in a vertex partition of K_n whose parts induce planar graphs (networkx planarity)."""
    planar = {r: nx.check_planarity(nx.complete_graph(r))[0] for r in range(1, n + 1)}
    return min(len(p) for p in _set_partitions(list(range(n))) if all(planar[len(b)] for b in p))


def test_c14_multi_embedding():
    with criterion(14, "tori and projective planes", budget=60.0):
        for s in range(1, 7):
            for n in range(1, 41):
                assert multi_embedding_feasible("complete", n, [1] * s, True) == (4 * s <= n <= 7 * s), (n, s)
                assert multi_embedding_feasible("complete", n, [1] * s, False) == (3 * s <= n <= 6 * s), (n, s)
    with criterion(14, "planar block numbers n <= 8", budget=60.0):
        for n in range(1, 9):
            expected = _planar_block_oracle(n)
            assert planar_block_number("complete", n) == expected == -(-n // 4)
            assert planar_block_number_exhaustive(complete_graph(n)) == expected
