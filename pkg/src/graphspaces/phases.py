"""Graph phases in Euclidean 3-space.

A phase attaches a vector ``omega(v)`` to every vertex of a simple graph whose
vertices sit at points of R^3. Edge values divide ``omega(u) ∘ omega(v)`` by the
squared distance between the endpoints. Every routine works on floats, and on
``Fraction`` coordinates when ``exact=True``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .core_graph import GraphError, Multigraph

Vec = tuple


class PhaseError(ValueError):
    """Raised for coincident adjacent vertices, bad operations and zero norms."""


def cross(a: Vec, b: Vec) -> Vec:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def componentwise(a: Vec, b: Vec) -> Vec:
    return tuple(x * y for x, y in zip(a, b))


def vector_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


OPERATIONS: dict[str, Callable[[Vec, Vec], Vec]] = {
    "cross": cross,
    "componentwise": componentwise,
    "add": vector_add,
}

# operations that are bilinear, for which the star identity holds
BILINEAR = frozenset({"cross", "componentwise"})


def operation(name: str) -> Callable[[Vec, Vec], Vec]:
    try:
        return OPERATIONS[name]
    except KeyError:
        raise PhaseError(f"unknown operation {name!r}; choose from {sorted(OPERATIONS)}") from None


def _vec(v: Sequence, exact: bool) -> Vec:
    if len(v) != 3:
        raise PhaseError(f"expected a 3-vector, got {v!r}")
    return tuple(Fraction(x) for x in v) if exact else tuple(float(x) for x in v)


def _scale(a: Vec, s) -> Vec:
    return tuple(x * s for x in a)


def _sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def norm_sq(a: Vec):
    return sum(x * x for x in a)


def _exact_sqrt(q: Fraction) -> Fraction:
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise PhaseError(f"exact mode needs rational distances; {q} is not a rational square")
    return Fraction(rn, rd)


@dataclass(frozen=True)
class GraphPhase:
    """A simple graph with vertex positions, vertex vectors and an edge operation.

    ``omega`` defaults to the positions themselves; ``labels`` name vertices for
    phase addition and default to ``v0, v1, ...``.
    """

    graph: Multigraph
    positions: tuple[Vec, ...]
    omega: tuple[Vec, ...] | None = None
    op: str = "cross"
    labels: tuple[str, ...] | None = None
    exact: bool = False

    def __post_init__(self) -> None:
        g = self.graph
        if not g.is_simple():
            raise GraphError("phases are defined on simple graphs")
        n = g.vertex_count
        pos = tuple(_vec(p, self.exact) for p in self.positions)
        om = pos if self.omega is None else tuple(_vec(w, self.exact) for w in self.omega)
        labels = tuple(f"v{i}" for i in range(n)) if self.labels is None else tuple(map(str, self.labels))
        if len(pos) != n or len(om) != n or len(labels) != n:
            raise PhaseError("positions, omega and labels need one entry per vertex")
        if len(set(labels)) != n:
            raise PhaseError("duplicate vertex labels")
        operation(self.op)
        for u, v in g.edges:
            if pos[u] == pos[v]:
                raise PhaseError(f"adjacent vertices {labels[u]} and {labels[v]} coincide")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return self.graph.vertex_count

    def distance(self, i: int, j: int, squared: bool = False):
        d2 = norm_sq(_sub(self.positions[i], self.positions[j]))
        if squared:
            return d2
        return _exact_sqrt(d2) if self.exact else math.sqrt(d2)

    def edge_value(self, i: int, j: int, squared: bool = True) -> Vec:
        """``omega(i) ∘ omega(j)`` over the squared distance, or the plain distance."""
        num = operation(self.op)(self.omega[i], self.omega[j])
        return _scale(num, 1 / self.distance(i, j, squared=squared))


def _zero(exact: bool) -> Vec:
    return (Fraction(0),) * 3 if exact else (0.0,) * 3


def _adjacent(ph: GraphPhase) -> set[tuple[int, int]]:
    return {(u, v) for u, v in ph.graph.edges} | {(v, u) for u, v in ph.graph.edges}


def _matrix(ph: GraphPhase, cell: Callable[[int, int], Vec]) -> np.ndarray:
    p = ph.size
    adj = _adjacent(ph)
    out = np.empty((p, p, 3), dtype=object if ph.exact else float)
    for i in range(p):
        for j in range(p):
            out[i, j] = cell(i, j) if (i, j) in adj else _zero(ph.exact)
    return out


def phase_matrices(ph: GraphPhase, squared: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """The ``V`` and ``Λ`` matrices as ``p x p x 3`` arrays.

    ``squared=False`` divides ``Λ`` by the plain distance instead.
    """

    def v_cell(i: int, j: int) -> Vec:
        return _scale(ph.omega[i], 1 / ph.distance(i, j))

    vm = _matrix(ph, v_cell)
    lm = _matrix(ph, lambda i, j: ph.edge_value(i, j, squared=squared))
    return vm, lm


def star_product(a: np.ndarray, b: np.ndarray, op: str) -> np.ndarray:
    """Entrywise ``a_ij ∘ b_ij``."""
    f = operation(op)
    p = a.shape[0]
    out = np.empty_like(a)
    for i in range(p):
        for j in range(p):
            out[i, j] = f(tuple(a[i, j]), tuple(b[i, j]))
    return out


def verify_star_identity(ph: GraphPhase, squared: bool = True):
    """Largest entrywise deviation of ``V * V^t`` from ``Λ``, relative to the largest ``Λ`` entry.

    Exact phases return an exact ``Fraction`` absolute deviation.
    """
    vm, lm = phase_matrices(ph, squared=squared)
    star = star_product(vm, vm.transpose(1, 0, 2), ph.op)
    diff = star - lm
    if ph.exact:
        return max((abs(x) for x in diff.flat), default=Fraction(0))
    scale = max(1.0, float(np.max(np.abs(lm))) if lm.size else 1.0)
    return float(np.max(np.abs(diff))) / scale if diff.size else 0.0


def add_phases(
    ph1: GraphPhase,
    ph2: GraphPhase,
    vertex_op: str = "add",
    edge_op: str | None = None,
) -> GraphPhase:
    """Union of two phases; vertices with the same label are combined by ``vertex_op``.

    Shared labels must sit at the same position. The edge operation defaults to
    ``ph1.op`` and edge values are recomputed from the combined vectors.
    """
    if ph1.exact != ph2.exact:
        raise PhaseError("cannot add an exact phase to a float phase")
    combine = operation(vertex_op)
    edge_op = ph1.op if edge_op is None else edge_op
    operation(edge_op)
    labels = list(ph1.labels) + [x for x in ph2.labels if x not in set(ph1.labels)]
    index = {x: k for k, x in enumerate(labels)}
    pos2 = dict(zip(ph2.labels, ph2.positions))
    om1 = dict(zip(ph1.labels, ph1.omega))
    om2 = dict(zip(ph2.labels, ph2.omega))
    positions = []
    omega = []
    for x in labels:
        if x in om1 and x in om2:
            p1 = ph1.positions[ph1.labels.index(x)]
            if p1 != pos2[x]:
                raise PhaseError(f"vertex {x} has different positions in the two phases")
            positions.append(p1)
            omega.append(combine(om1[x], om2[x]))
        elif x in om1:
            positions.append(ph1.positions[ph1.labels.index(x)])
            omega.append(om1[x])
        else:
            positions.append(pos2[x])
            omega.append(om2[x])
    edges = set()
    for ph in (ph1, ph2):
        for u, v in ph.graph.edges:
            a, b = index[ph.labels[u]], index[ph.labels[v]]
            edges.add((min(a, b), max(a, b)))
    graph = Multigraph(len(labels), tuple(sorted(edges)))
    return GraphPhase(graph, tuple(positions), tuple(omega), edge_op, tuple(labels), ph1.exact)


def transform_phase(ph: GraphPhase, matrix: Sequence[Sequence[float]], shift: Sequence[float] = (0, 0, 0)) -> GraphPhase:
    """Apply ``x -> M x + shift`` to positions and ``x -> M x`` to vectors.

    A singular ``M`` is rejected, since it need not be one-to-one on vertices.
    """
    m = np.array(matrix, dtype=float)
    if m.shape != (3, 3) or abs(np.linalg.det(m)) < 1e-12:
        raise PhaseError("transform needs an invertible 3x3 matrix")
    b = np.array(shift, dtype=float)
    pos = tuple(tuple(m @ np.array(p, dtype=float) + b) for p in ph.positions)
    om = tuple(tuple(m @ np.array(w, dtype=float)) for w in ph.omega)
    return GraphPhase(ph.graph, pos, om, ph.op, ph.labels)


def capacity(ph: GraphPhase) -> Vec:
    total = _zero(ph.exact)
    for w in ph.omega:
        total = vector_add(total, w)
    return total


def entropy(ph: GraphPhase, squared: bool = False) -> float:
    """``Σ log ‖ω(u)‖``; ``squared=True`` uses ``Σ log ‖ω(u)‖²`` (twice the value)."""
    total = 0.0
    for lab, w in zip(ph.labels, ph.omega):
        n2 = float(norm_sq(w))
        if n2 == 0:
            raise PhaseError(f"vertex {lab} has a zero vector; entropy is undefined")
        total += math.log(n2) if squared else 0.5 * math.log(n2)
    return total


@dataclass(frozen=True)
class DiffCheck:
    capacity_numeric: tuple[float, float, float]
    capacity_analytic: tuple[float, float, float]
    entropy_numeric: float
    entropy_analytic: float
    capacity_deviation: float
    entropy_deviation: float


def differential_check(
    ph: GraphPhase,
    direction: Sequence[Sequence[float]] | Mapping[str, Sequence[float]],
    step: float,
    at: float = 0.0,
    squared_entropy: bool = False,
) -> DiffCheck:
    """Central differences of capacity and entropy along ``omega + t * direction``.

    The analytic side sums the per-vertex partials: ``Σ d`` for capacity and
    ``Σ <ω, d> / ‖ω‖²`` for entropy, both evaluated at ``t = at``.
    """
    if step <= 0:
        raise PhaseError("step must be positive")
    if isinstance(direction, Mapping):
        direction = [direction[x] for x in ph.labels]
    d = np.array(direction, dtype=float)
    w0 = np.array(ph.omega, dtype=float)
    if d.shape != w0.shape:
        raise PhaseError("direction needs one 3-vector per vertex")

    def at_t(t: float) -> GraphPhase:
        return GraphPhase(ph.graph, ph.positions, tuple(map(tuple, w0 + t * d)), ph.op, ph.labels)

    hi, lo = at_t(at + step), at_t(at - step)
    cap_num = (np.array(capacity(hi)) - np.array(capacity(lo))) / (2 * step)
    en_num = (entropy(hi, squared_entropy) - entropy(lo, squared_entropy)) / (2 * step)
    w = w0 + at * d
    cap_an = d.sum(axis=0)
    en_an = float(np.sum(np.einsum("ij,ij->i", w, d) / np.einsum("ij,ij->i", w, w)))
    if squared_entropy:
        en_an *= 2
    return DiffCheck(
        tuple(map(float, cap_num)),
        tuple(map(float, cap_an)),
        float(en_num),
        en_an,
        float(np.max(np.abs(cap_num - cap_an))),
        abs(en_num - en_an),
    )


__all__ = [
    "BILINEAR",
    "DiffCheck",
    "GraphPhase",
    "OPERATIONS",
    "PhaseError",
    "add_phases",
    "capacity",
    "componentwise",
    "cross",
    "differential_check",
    "entropy",
    "norm_sq",
    "operation",
    "phase_matrices",
    "star_product",
    "transform_phase",
    "vector_add",
    "verify_star_identity",
]
