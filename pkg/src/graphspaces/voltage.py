"""Multi-voltage graphs of type 1 and type 2, their liftings, walk liftings,
left subactions, quotients and voltage reconstruction.

A type-1 assignment stores one universe element per edge, read along the
edge's positive direction (tail to head). Traversing an edge backwards under
operation ``i`` uses the inverse in constituent ``i``. A lifted edge is labelled
``(e, a, i)``: base edge ``e`` lifted from fiber element ``a`` with operation ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .core_graph import GraphError, Multigraph, SemiArc, find_isomorphism
from .groups import FiniteGroup, GroupError, MultiGroup


class VoltageError(ValueError):
    """Raised on invalid voltage data or actions."""


@dataclass(frozen=True)
class MultiVoltage1:
    """Type-1 assignment ``psi[e]`` on the positive semi-arc of every edge.

    ``ops[e]``, when given, restricts the operations allowed to lift edge ``e``;
    ``None`` means every operation whose constituent contains the voltage.
    """

    base: Multigraph
    multigroup: MultiGroup
    psi: tuple[str, ...]
    ops: tuple[tuple[int, ...] | None, ...] | None = None

    def __post_init__(self) -> None:
        psi = tuple(str(x) for x in self.psi)
        object.__setattr__(self, "psi", psi)
        if len(psi) != self.base.edge_count:
            raise VoltageError("need one voltage per edge")
        for x in psi:
            if x not in self.multigroup.universe:
                raise VoltageError(f"voltage {x!r} not in the universe")
        if self.ops is not None:
            ops = tuple(None if o is None else tuple(o) for o in self.ops)
            if len(ops) != len(psi):
                raise VoltageError("need one operation restriction per edge")
            object.__setattr__(self, "ops", ops)

    def allowed_ops(self, e: int) -> range | tuple[int, ...]:
        if self.ops is None or self.ops[e] is None:
            return range(self.multigroup.operation_count)
        return self.ops[e]

    def arc_voltage(self, arc: SemiArc, i: int) -> str | None:
        """Voltage read when leaving through ``arc`` under operation ``i``."""
        e, end = arc
        b = self.psi[e]
        g = self.multigroup.groups[i]
        if b not in g:
            return None
        return b if end == 0 else g.inv(b)


@dataclass(frozen=True)
class MultiVoltage2:
    """Type-2 assignment: vertex ``v`` lives in class ``partition[v]`` with group ``groups[partition[v]]``.

    ``tau[e]`` lies in the intersection of the groups at both ends of ``e``.
    """

    base: Multigraph
    multigroup: MultiGroup
    partition: tuple[int, ...]
    tau: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "partition", tuple(int(p) for p in self.partition))
        object.__setattr__(self, "tau", tuple(str(x) for x in self.tau))
        if len(self.partition) != self.base.vertex_count:
            raise VoltageError("partition must cover every vertex")
        if any(not 0 <= p < self.multigroup.operation_count for p in self.partition):
            raise VoltageError("partition class out of range")
        if len(self.tau) != self.base.edge_count:
            raise VoltageError("need one voltage per edge")
        for e, (t, h) in enumerate(self.base.edges):
            gi = self.multigroup.groups[self.partition[t]]
            gj = self.multigroup.groups[self.partition[h]]
            if self.tau[e] not in gi or self.tau[e] not in gj:
                raise VoltageError(f"voltage on edge {e} is not in the shared part of its end groups")


@dataclass(frozen=True)
class Lift:
    """A lifted graph together with its fiber labelling."""

    graph: Multigraph
    vertex_labels: tuple[tuple[int, str], ...]
    edge_labels: tuple[tuple[int, str, int], ...]
    index: dict[tuple[int, str], int] = field(compare=False, repr=False)

    def projection(self) -> tuple[list[int], list[int]]:
        """Base vertex of every lifted vertex and base edge of every lifted edge."""
        return [v for v, _ in self.vertex_labels], [e for e, _, _ in self.edge_labels]


# type 1


def lift_type1(mv: MultiVoltage1) -> Lift:
    """One lifted edge per (edge, fiber element, operation) admissible triple."""
    mg = mv.multigroup
    labels = tuple((v, a) for v in range(mv.base.vertex_count) for a in mg.universe)
    index = {lab: k for k, lab in enumerate(labels)}
    edges, elabels = [], []
    for e, (t, h) in enumerate(mv.base.edges):
        b = mv.psi[e]
        allowed = mv.allowed_ops(e)
        for a in mg.universe:
            for i in allowed:
                c = mg.op(i, a, b)
                if c is None:
                    continue
                edges.append((index[(t, a)], index[(h, c)]))
                elabels.append((e, a, i))
    return Lift(Multigraph(len(labels), tuple(edges)), labels, tuple(elabels), index)


def sublift(lift: Lift, mg: MultiGroup, i: int) -> tuple[Multigraph, list[int], list[int]]:
    """``H_i``: lifted edges of operation ``i`` on the vertices with fiber in ``Γ_i``.

    Returns the graph plus the lift ids of its vertices and edges.
    """
    group = mg.groups[i]
    verts = [k for k, (_, a) in enumerate(lift.vertex_labels) if a in group]
    pos = {k: n for n, k in enumerate(verts)}
    eids = [k for k, (_, _, op) in enumerate(lift.edge_labels) if op == i]
    edges = tuple((pos[lift.graph.edges[k][0]], pos[lift.graph.edges[k][1]]) for k in eids)
    return Multigraph(len(verts), edges), verts, eids


@dataclass(frozen=True)
class LiftedWalk:
    ops: tuple[int, ...]
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def _check_walk(base: Multigraph, walk: Sequence[SemiArc]) -> None:
    if not walk:
        raise VoltageError("walk must be non-empty")
    for k in range(len(walk) - 1):
        e, end = walk[k]
        here = base.edges[e][1 - end]
        if base.endpoint(walk[k + 1]) != here:
            raise VoltageError(f"semi-arc {k + 1} does not start where semi-arc {k} ends")


def lift_walk(mv: MultiVoltage1, walk: Sequence[SemiArc], start_fiber: str) -> list[LiftedWalk]:
    """All liftings of a walk starting at fiber ``start_fiber`` of its first vertex.

    A walk is a sequence of semi-arcs ``(e, end)``; each step leaves through the
    named end of edge ``e``. One lifting per admissible operation sequence.
    """
    _check_walk(mv.base, walk)
    mg = mv.multigroup
    if start_fiber not in mg.universe:
        raise VoltageError(f"{start_fiber!r} not in the universe")
    lift = lift_type1(mv)
    edge_of = {lab: k for k, lab in enumerate(lift.edge_labels)}
    start = mv.base.endpoint(walk[0])
    out: list[LiftedWalk] = []

    def extend(k: int, fiber: str, ops: list[int], verts: list[int], edges: list[int]) -> None:
        if k == len(walk):
            out.append(LiftedWalk(tuple(ops), tuple(verts), tuple(edges)))
            return
        e, end = walk[k]
        far = mv.base.edges[e][1 - end]
        for i in mv.allowed_ops(e):
            volt = mv.arc_voltage((e, end), i)
            nxt = mg.op(i, fiber, volt) if volt is not None else None
            if nxt is None:
                continue
            # the lifted edge is named by the fiber at its tail
            a = fiber if end == 0 else nxt
            extend(k + 1, nxt, ops + [i], verts + [lift.index[(far, nxt)]], edges + [edge_of[(e, a, i)]])

    extend(0, start_fiber, [], [lift.index[(start, start_fiber)]], [])
    return out


def walk_lifting_bound(mv: MultiVoltage1, walk: Sequence[SemiArc], start_fiber: str) -> int:
    """Upper bound on the number of liftings: branch over every operation containing both operands."""
    _check_walk(mv.base, walk)
    mg = mv.multigroup
    frontier = {start_fiber: 1}
    for e, end in walk:
        nxt: dict[str, int] = {}
        for fiber, count in frontier.items():
            for i in range(mg.operation_count):
                volt = mv.arc_voltage((e, end), i)
                c = mg.op(i, fiber, volt) if volt is not None else None
                if c is not None:
                    nxt[c] = nxt.get(c, 0) + count
        frontier = nxt
    return sum(frontier.values())


@dataclass(frozen=True)
class HomogeneousLifting:
    op: int
    product: str
    order: int
    count: int
    length: int


def _circuit_vertices(base: Multigraph, circuit: Sequence[SemiArc]) -> list[int]:
    _check_walk(base, circuit)
    verts = [base.endpoint(a) for a in circuit]
    e, end = circuit[-1]
    if base.edges[e][1 - end] != verts[0]:
        raise VoltageError("circuit does not close")
    if len(set(verts)) != len(verts) or len({e for e, _ in circuit}) != len(circuit):
        raise VoltageError("circuit repeats a vertex or an edge")
    return verts


def circuit_homogeneous_liftings(mv: MultiVoltage1, circuit: Sequence[SemiArc]) -> list[HomogeneousLifting]:
    """Per operation: the circuit voltage, its order ``d``, and ``|Γ|/d`` lifts of length ``d·m``."""
    mg = mv.multigroup
    if not mg.same_set_constituents():
        raise VoltageError("all constituents must have the same element set")
    _circuit_vertices(mv.base, circuit)
    out = []
    m = len(circuit)
    for i, group in enumerate(mg.groups):
        prod = group.product(mv.arc_voltage(a, i) for a in circuit)
        d = group.element_order(prod)
        out.append(HomogeneousLifting(i, prod, d, group.order // d, d * m))
    return out


def circuit_lifting_orbits(mv: MultiVoltage1, circuit: Sequence[SemiArc]) -> dict[int, list[int]]:
    """Cycle lengths of the lifted circuit per operation, read off the lifted graph."""
    _circuit_vertices(mv.base, circuit)
    lift = lift_type1(mv)
    on_circuit = {e for e, _ in circuit}
    out: dict[int, list[int]] = {}
    for i in range(mv.multigroup.operation_count):
        eids = [k for k, (e, _, op) in enumerate(lift.edge_labels) if op == i and e in on_circuit]
        sub = lift.graph.subgraph_edges(eids)
        lengths = []
        for comp in sub.components():
            cs = set(comp)
            size = sum(1 for t, _ in sub.edges if t in cs)
            if size:
                if any(sub.valency(v) != 2 for v in comp):
                    raise VoltageError("lifted circuit component is not a cycle")
                lengths.append(size)
        out[i] = sorted(lengths)
    return out


def left_subaction(mv: MultiVoltage1, i: int, g: str) -> list[int]:
    """``u_a -> u_{g o_i a}`` on fibers inside ``Γ_i``; other lifted vertices fixed."""
    mg = mv.multigroup
    group = mg.groups[i]
    if g not in group:
        raise VoltageError(f"{g!r} is not in constituent {i}")
    lift = lift_type1(mv)
    return [
        lift.index[(v, group.mul(g, a))] if a in group else k
        for k, (v, a) in enumerate(lift.vertex_labels)
    ]


# actions and quotients


@dataclass(frozen=True)
class GroupAction:
    """Action of a labelled group on a graph.

    ``vertex_perms[g][v]`` is the image of vertex ``v``; ``arc_perms[g][2*e+end]`` is
    the image semi-arc index of ``(e, end)``.
    """

    group: FiniteGroup
    vertex_perms: dict[str, tuple[int, ...]]
    arc_perms: dict[str, tuple[int, ...]]


def induced_arc_perm(g: Multigraph, vperm: Sequence[int]) -> tuple[int, ...]:
    """Semi-arc permutation matching parallel classes in index order.

    Only canonical for graphs without parallel edges; supply arcs explicitly otherwise.
    """
    classes: dict[tuple[int, int], list[int]] = {}
    for e, (t, h) in enumerate(g.edges):
        classes.setdefault((min(t, h), max(t, h)), []).append(e)
    image = [0] * (2 * g.edge_count)
    for (a, b), es in classes.items():
        key = (min(vperm[a], vperm[b]), max(vperm[a], vperm[b]))
        targets = classes.get(key)
        if targets is None or len(targets) != len(es):
            raise VoltageError("vertex permutation is not an automorphism")
        for e, f in zip(es, targets):
            t, _ = g.edges[e]
            ft, fh = g.edges[f]
            flip = 0 if ft == fh or vperm[t] == ft else 1
            image[2 * e] = 2 * f + flip
            image[2 * e + 1] = 2 * f + 1 - flip
    return tuple(image)


def _check_arc_perm(g: Multigraph, vperm: Sequence[int], aperm: Sequence[int]) -> None:
    if sorted(vperm) != list(range(g.vertex_count)) or sorted(aperm) != list(range(2 * g.edge_count)):
        raise VoltageError("not a permutation")
    for s in range(2 * g.edge_count):
        img = aperm[s]
        if aperm[s ^ 1] != img ^ 1:
            raise VoltageError("semi-arc permutation splits an edge")
        if vperm[g.endpoint((s // 2, s % 2))] != g.endpoint((img // 2, img % 2)):
            raise VoltageError(f"semi-arc {s} is not carried with its vertex")


def action_from_perms(g: Multigraph, group: FiniteGroup, vertex_perms: dict[str, Sequence[int]],
                      arc_perms: dict[str, Sequence[int]] | None = None) -> GroupAction:
    """Validate a labelled action: automorphisms, homomorphism law on vertices and arcs."""
    vp = {x: tuple(vertex_perms[x]) for x in group.elements}
    if arc_perms is None:
        ap = {x: induced_arc_perm(g, vp[x]) for x in group.elements}
    else:
        ap = {x: tuple(arc_perms[x]) for x in group.elements}
    for x in group.elements:
        _check_arc_perm(g, vp[x], ap[x])
    for x, y in itertools.product(group.elements, repeat=2):
        xy = group.mul(x, y)
        if any(vp[x][vp[y][v]] != vp[xy][v] for v in range(g.vertex_count)):
            raise VoltageError(f"vertex action is not a homomorphism at ({x}, {y})")
        if any(ap[x][ap[y][s]] != ap[xy][s] for s in range(2 * g.edge_count)):
            raise VoltageError(f"arc action is not a homomorphism at ({x}, {y})")
    return GroupAction(group, vp, ap)


@dataclass(frozen=True)
class Quotient:
    graph: Multigraph
    vertex_orbits: tuple[tuple[int, ...], ...]
    edge_orbits: tuple[tuple[int, ...], ...]


def _closure(perms: Sequence[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in perms:
                r = tuple(q[p[k]] for k in range(n))
                if r not in group:
                    group.add(r)
                    nxt.append(r)
        frontier = nxt
    return group


def quotient_graph(g: Multigraph, vertex_perms: Sequence[Sequence[int]],
                   arc_perms: Sequence[Sequence[int]] | None = None) -> Quotient:
    """Vertices are vertex orbits, edges are edge orbits with the induced incidence.

    The permutations must be automorphisms and closed under composition.
    """
    vps = [tuple(p) for p in vertex_perms]
    aps = [induced_arc_perm(g, p) for p in vps] if arc_perms is None else [tuple(a) for a in arc_perms]
    if len(aps) != len(vps):
        raise VoltageError("need one arc permutation per vertex permutation")
    for vp, ap in zip(vps, aps):
        _check_arc_perm(g, vp, ap)
    pairs = set(zip(vps, aps))
    for (v1, a1), (v2, a2) in itertools.product(pairs, repeat=2):
        comp = (tuple(v1[v2[k]] for k in range(len(v1))), tuple(a1[a2[k]] for k in range(len(a1))))
        if comp not in pairs:
            raise VoltageError("permutations are not closed under composition")
    n, m = g.vertex_count, g.edge_count
    vorb = _orbits(n, vps)
    eorb = _orbits(m, [tuple(a[2 * e] // 2 for e in range(m)) for a in aps])
    vid = {v: k for k, orb in enumerate(vorb) for v in orb}
    edges = []
    for orb in eorb:
        t, h = g.edges[orb[0]]
        edges.append((vid[t], vid[h]))
    return Quotient(Multigraph(len(vorb), tuple(edges)), tuple(vorb), tuple(eorb))


def _orbits(n: int, perms: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orb = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for p in perms:
                y = p[x]
                if y not in orb:
                    orb.add(y)
                    stack.append(y)
        for x in orb:
            seen[x] = True
        out.append(tuple(sorted(orb)))
    return out


# reconstruction


@dataclass(frozen=True)
class Reconstruction:
    voltage: MultiVoltage1
    vertex_map: tuple[int, ...]  # lifted-graph vertex -> vertex id of lift_type1(voltage)
    edge_map: tuple[int, ...]  # lifted-graph edge -> edge id of lift_type1(voltage)


def reconstruct_voltage_from_action(g: Multigraph, action: GroupAction) -> Reconstruction:
    """Quotient ``g`` by a fixed-free group action and recover voltages on the quotient.

    Each vertex orbit is labelled from its least vertex, which gets the identity;
    each edge orbit is oriented from its least edge. The returned maps send ``g``
    isomorphically onto the lift of the recovered voltage graph.
    """
    group = action.group
    ident = group.identity
    for x in group.elements:
        if x == ident:
            continue
        fixed = [v for v in range(g.vertex_count) if action.vertex_perms[x][v] == v]
        if fixed:
            raise VoltageError(f"action is not fixed-free: {x} fixes vertex {fixed[0]}")
    q = quotient_graph(g, [action.vertex_perms[x] for x in group.elements],
                       [action.arc_perms[x] for x in group.elements])
    # label[v] = (orbit, h) with v = h(rep)
    label: dict[int, tuple[int, str]] = {}
    for k, orb in enumerate(q.vertex_orbits):
        rep = orb[0]
        for x in group.elements:
            label[action.vertex_perms[x][rep]] = (k, x)
    psi = []
    qedges = []
    rep_arc = []
    for k, orb in enumerate(q.edge_orbits):
        if len(orb) != group.order:
            raise VoltageError(f"edge orbit {k} has a non-trivial stabilizer (an edge is reversed)")
        e = orb[0]
        t, h = g.edges[e]
        (ut, gt), (uh, gh) = label[t], label[h]
        psi.append(group.mul(group.inv(gt), gh))
        qedges.append((ut, uh))
        rep_arc.append(e)
    base = Multigraph(len(q.vertex_orbits), tuple(qedges))
    mv = MultiVoltage1(base, MultiGroup((group,)), tuple(psi))
    lift = lift_type1(mv)
    vmap = tuple(lift.index[label[v]] for v in range(g.vertex_count))
    edge_pos = {lab: k for k, lab in enumerate(lift.edge_labels)}
    emap = [-1] * g.edge_count
    for k, orb in enumerate(q.edge_orbits):
        e0 = rep_arc[k]
        _, gt = label[g.edges[e0][0]]
        for x in group.elements:
            img = action.arc_perms[x][2 * e0]
            # the image edge starts at fiber x * gt in orbit k's tail
            emap[img // 2] = edge_pos[(k, group.mul(x, gt), 0)]
    rec = Reconstruction(mv, vmap, tuple(emap))
    _verify_reconstruction(g, lift, rec)
    return rec


def _verify_reconstruction(g: Multigraph, lift: Lift, rec: Reconstruction) -> None:
    if sorted(rec.vertex_map) != list(range(lift.graph.vertex_count)):
        raise VoltageError("vertex map is not a bijection")
    if sorted(rec.edge_map) != list(range(lift.graph.edge_count)):
        raise VoltageError("edge map is not a bijection")
    for e, (t, h) in enumerate(g.edges):
        lt, lh = lift.graph.edges[rec.edge_map[e]]
        if {rec.vertex_map[t], rec.vertex_map[h]} != {lt, lh}:
            raise VoltageError(f"edge {e} is not carried onto its image")


def deck_action(mv: MultiVoltage1, i: int = 0) -> tuple[Multigraph, GroupAction]:
    """Sublift ``H_i`` with the left action of ``Γ_i`` on vertices and semi-arcs."""
    lift = lift_type1(mv)
    graph, verts, eids = sublift(lift, mv.multigroup, i)
    group = mv.multigroup.groups[i]
    vpos = {k: n for n, k in enumerate(verts)}
    epos = {lift.edge_labels[k]: n for n, k in enumerate(eids)}
    vperms, aperms = {}, {}
    for x in group.elements:
        vperms[x] = tuple(
            vpos[lift.index[(lift.vertex_labels[k][0], group.mul(x, lift.vertex_labels[k][1]))]] for k in verts
        )
        ap = [0] * (2 * len(eids))
        for n, k in enumerate(eids):
            e, a, op = lift.edge_labels[k]
            f = epos[(e, group.mul(x, a), op)]
            ap[2 * n], ap[2 * n + 1] = 2 * f, 2 * f + 1
        aperms[x] = tuple(ap)
    return graph, action_from_perms(graph, group, vperms, aperms)


# type 2


def lift_type2(mv: MultiVoltage2) -> Lift:
    """Vertices ``V_i x Γ_i``; edge ``(u_a, v_{a o_j b})`` for ``a`` shared by both end groups.

    ``j`` is the class of the head, so the product is taken in the head's group.
    """
    mg = mv.multigroup
    labels = tuple((v, a) for v in range(mv.base.vertex_count) for a in mg.groups[mv.partition[v]].elements)
    index = {lab: k for k, lab in enumerate(labels)}
    edges, elabels = [], []
    for e, (t, h) in enumerate(mv.base.edges):
        i, j = mv.partition[t], mv.partition[h]
        gi, gj = mg.groups[i], mg.groups[j]
        b = mv.tau[e]
        for a in gi.elements:
            if a not in gj:
                continue
            c = gj.mul(a, b)
            edges.append((index[(t, a)], index[(h, c)]))
            elabels.append((e, a, j))
    return Lift(Multigraph(len(labels), tuple(edges)), labels, tuple(elabels), index)


@dataclass(frozen=True)
class PartialAction:
    """Fixed-free actions of ``multigroup.groups[i]`` on the vertex class ``classes[i]``.

    ``vertex_perms[i][g]`` maps each vertex of class ``i`` (listed in ``classes[i]``
    order) to a vertex of the same class.
    """

    multigroup: MultiGroup
    classes: tuple[tuple[int, ...], ...]
    vertex_perms: tuple[dict[str, dict[int, int]], ...]


def partial_action_of_lift(mv: MultiVoltage2) -> tuple[Multigraph, PartialAction]:
    """Lifted graph of ``mv`` with each ``Γ_i`` acting by left translation on its fibers."""
    lift = lift_type2(mv)
    mg = mv.multigroup
    classes, perms = [], []
    for i, group in enumerate(mg.groups):
        verts = tuple(k for k, (v, _) in enumerate(lift.vertex_labels) if mv.partition[v] == i)
        classes.append(verts)
        perms.append({
            x: {k: lift.index[(lift.vertex_labels[k][0], group.mul(x, lift.vertex_labels[k][1]))] for k in verts}
            for x in group.elements
        })
    return lift.graph, PartialAction(mg, tuple(classes), tuple(perms))


@dataclass(frozen=True)
class Reconstruction2:
    voltage: MultiVoltage2
    vertex_map: tuple[int, ...]


def reconstruct_type2_from_partial_action(g: Multigraph, action: PartialAction) -> Reconstruction2:
    """Partially-quotient graph with recovered type-2 voltages.

    Orbit labellings are searched in least-representative order until the
    recovered voltages lift back onto ``g`` exactly.
    """
    mg = action.multigroup
    orbit_of: dict[int, tuple[int, int]] = {}
    orbits: list[tuple[int, tuple[int, ...]]] = []
    for i, verts in enumerate(action.classes):
        group = mg.groups[i]
        for x in group.elements:
            if x == group.identity:
                continue
            for v in verts:
                if action.vertex_perms[i][x][v] == v:
                    raise VoltageError(f"partial action is not fixed-free: {x} fixes vertex {v}")
        seen: set[int] = set()
        for v in sorted(verts):
            if v in seen:
                continue
            orb = tuple(sorted({action.vertex_perms[i][x][v] for x in group.elements}))
            seen.update(orb)
            orbit_of.update({w: (len(orbits), i) for w in orb})
            orbits.append((i, orb))
    if set(orbit_of) != set(range(g.vertex_count)):
        raise VoltageError("classes must partition the vertex set")

    def attempt(reps: Sequence[int]) -> Reconstruction2 | None:
        label: dict[int, str] = {}
        for k, (i, _) in enumerate(orbits):
            for x in mg.groups[i].elements:
                label[action.vertex_perms[i][x][reps[k]]] = x
        classes_of = tuple(i for i, _ in orbits)
        found: dict[tuple[int, int, str], int] = {}
        for t, h in g.edges:
            (ot, i), (oh, j) = orbit_of[t], orbit_of[h]
            gi, gj = mg.groups[i], mg.groups[j]
            a, c = label[t], label[h]
            if a not in gj:
                return None
            b = gj.mul(gj.inv(a), c)
            if b not in gi:
                return None
            key = (ot, oh, b)
            found[key] = found.get(key, 0) + 1
        edges, tau = [], []
        for (ot, oh, b), count in sorted(found.items()):
            i, j = classes_of[ot], classes_of[oh]
            shared = sum(1 for a in mg.groups[i].elements if a in mg.groups[j])
            if count % shared:
                return None
            for _ in range(count // shared):
                edges.append((ot, oh))
                tau.append(b)
        try:
            mv = MultiVoltage2(Multigraph(len(orbits), tuple(edges)), mg, classes_of, tuple(tau))
        except VoltageError:
            return None
        lift = lift_type2(mv)
        vmap = tuple(lift.index[(orbit_of[v][0], label[v])] for v in range(g.vertex_count))
        if g.relabel(vmap).edge_multiset() != lift.graph.edge_multiset():
            return None
        return Reconstruction2(mv, vmap)

    for reps in itertools.product(*(orb for _, orb in orbits)):
        rec = attempt(reps)
        if rec is not None:
            return rec
    raise VoltageError("no orbit labelling reproduces the graph as a type-2 lift")


# Cayley graphs as bouquet lifts


@dataclass(frozen=True)
class BouquetLift:
    voltage: MultiVoltage1
    vertex_map: tuple[int, ...]  # lift vertex -> Cayley graph vertex


def cayley_as_bouquet_lift(mg: MultiGroup, sets: Sequence[Sequence[str]]) -> BouquetLift:
    """One loop per connection element ``s`` of ``S_i``, lifted by operation ``i`` only.

    Every Cayley edge ``{g, g s}`` is covered twice (once from ``s`` at ``g`` and once
    from ``s^-1`` at ``g s``); fibers map to their group element.
    """
    from .groups import cayley_graph_multigroup

    cay = cayley_graph_multigroup(mg, sets)
    psi, ops = [], []
    for i, s in enumerate(sets):
        for x in dict.fromkeys(str(y) for y in s):
            psi.append(x)
            ops.append((i,))
    base = Multigraph(1, tuple((0, 0) for _ in psi))
    mv = MultiVoltage1(base, mg, tuple(psi), tuple(ops))
    lift = lift_type1(mv)
    vmap = tuple(mg.index(a) for _, a in lift.vertex_labels)
    under = {(min(vmap[t], vmap[h]), max(vmap[t], vmap[h])) for t, h in lift.graph.edges}
    if under != set(cay.graph.edges):
        raise GraphError("bouquet lift does not cover the Cayley graph")
    return BouquetLift(mv, vmap)


def is_lift_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    return find_isomorphism(g, h) is not None


__all__ = [
    "GroupAction",
    "GroupError",
    "HomogeneousLifting",
    "Lift",
    "LiftedWalk",
    "MultiVoltage1",
    "MultiVoltage2",
    "PartialAction",
    "Quotient",
    "Reconstruction",
    "Reconstruction2",
    "VoltageError",
    "action_from_perms",
    "cayley_as_bouquet_lift",
    "circuit_homogeneous_liftings",
    "circuit_lifting_orbits",
    "deck_action",
    "induced_arc_perm",
    "left_subaction",
    "lift_type1",
    "lift_type2",
    "lift_walk",
    "partial_action_of_lift",
    "quotient_graph",
    "reconstruct_type2_from_partial_action",
    "reconstruct_voltage_from_action",
    "sublift",
    "walk_lifting_bound",
]
