"""JSON workspace documents: one object per file with ``kind`` and ``version`` fields."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .algsys import AlgebraError, Arc, PartialBinarySystem, WeightedDigraph
from .core_graph import GraphError, Multigraph
from .groups import FiniteGroup, GroupError, MultiGroup
from .maps import CombinatorialMap, MapError, RotationSystem
from .phases import GraphPhase, PhaseError
from .voltage import MultiVoltage1, MultiVoltage2, VoltageError

VERSION = 1


class DocumentError(ValueError):
    """Raised when a document violates its schema or its kind's invariants."""


_labels = {"type": "array", "items": {"type": "string"}}
_table = {"type": "array", "items": _labels}
_edges = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
}
_vec3 = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}
_group = {
    "type": "object",
    "required": ["elements", "table"],
    "properties": {"elements": _labels, "table": _table},
}
_graph = {
    "type": "object",
    "required": ["vertices", "edges"],
    "properties": {"vertices": {"type": "integer", "minimum": 0}, "edges": _edges},
}
_multigroup = {
    "type": "object",
    "required": ["groups"],
    "properties": {"universe": _labels, "groups": {"type": "array", "items": _group, "minItems": 1}},
}
_system = {
    "type": "object",
    "required": ["elements", "table"],
    "properties": {
        "elements": _labels,
        "table": {"type": "array", "items": {"type": "array", "items": {"type": ["string", "null"]}}},
    },
}
_bits = {"type": "array", "items": {"enum": [0, 1]}}

SCHEMAS: dict[str, dict[str, Any]] = {
    "graph": _graph,
    "group": _group,
    "multigroup": _multigroup,
    "voltage1": {
        "type": "object",
        "required": ["graph", "multigroup", "psi"],
        "properties": {
            "graph": _graph,
            "multigroup": _multigroup,
            "psi": _labels,
            "ops": {
                "type": ["array", "null"],
                "items": {"type": ["array", "null"], "items": {"type": "integer", "minimum": 0}},
            },
        },
    },
    "voltage2": {
        "type": "object",
        "required": ["graph", "multigroup", "partition", "tau"],
        "properties": {
            "graph": _graph,
            "multigroup": _multigroup,
            "partition": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "tau": _labels,
        },
    },
    "map": {
        "type": "object",
        "required": ["edges", "cycles"],
        "properties": {"edges": {"type": "integer", "minimum": 0}, "cycles": _table},
    },
    "rotation": {
        "type": "object",
        "required": ["vertices", "edges", "rotation"],
        "properties": {
            "vertices": {"type": "integer", "minimum": 0},
            "edges": _edges,
            "rotation": {"type": "array", "items": _edges},
            "twist": _bits,
        },
    },
    "phase": {
        "type": "object",
        "required": ["vertices", "edges", "positions"],
        "properties": {
            "vertices": {"type": "integer", "minimum": 0},
            "edges": _edges,
            "positions": {"type": "array", "items": _vec3},
            "omega": {"type": "array", "items": _vec3},
            "op": {"type": "string"},
            "labels": _labels,
        },
    },
    "system": {
        "oneOf": [
            _system,
            {
                "type": "object",
                "required": ["systems"],
                "properties": {"systems": {"type": "array", "items": _system, "minItems": 1}},
            },
        ]
    },
    "digraph": {
        "type": "object",
        "required": ["vertices", "arcs"],
        "properties": {
            "vertices": _labels,
            "arcs": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [
                        {"type": "string"},
                        {"type": "string"},
                        {"type": "integer", "minimum": 0},
                        {"type": "string"},
                    ],
                    "minItems": 4,
                    "maxItems": 4,
                },
            },
        },
    },
}

KINDS = tuple(SCHEMAS)
_ERRORS = (GraphError, GroupError, MapError, VoltageError, PhaseError, AlgebraError)


def _graph_of(p: dict) -> Multigraph:
    return Multigraph(p["vertices"], tuple(tuple(e) for e in p["edges"]))


def _multigroup_of(p: dict) -> MultiGroup:
    groups = tuple(FiniteGroup(g["elements"], g["table"]) for g in p["groups"])
    return MultiGroup(groups, tuple(p.get("universe", ())))


def _system_of(p: dict) -> PartialBinarySystem:
    return PartialBinarySystem(tuple(p["elements"]), tuple(tuple(r) for r in p["table"]))


def _build(kind: str, p: dict) -> Any:
    if kind == "graph":
        return _graph_of(p)
    if kind == "group":
        return FiniteGroup(p["elements"], p["table"])
    if kind == "multigroup":
        return _multigroup_of(p)
    if kind == "voltage1":
        ops = p.get("ops")
        ops = None if ops is None else tuple(None if o is None else tuple(o) for o in ops)
        return MultiVoltage1(_graph_of(p["graph"]), _multigroup_of(p["multigroup"]), tuple(p["psi"]), ops)
    if kind == "voltage2":
        return MultiVoltage2(
            _graph_of(p["graph"]), _multigroup_of(p["multigroup"]), tuple(p["partition"]), tuple(p["tau"])
        )
    if kind == "map":
        return CombinatorialMap.from_cycles(p["edges"], p["cycles"])
    if kind == "rotation":
        base = _graph_of(p)
        rot = tuple(tuple(tuple(a) for a in cyc) for cyc in p["rotation"])
        return RotationSystem(base, rot, tuple(p.get("twist", ())))
    if kind == "phase":
        return GraphPhase(
            _graph_of(p),
            tuple(map(tuple, p["positions"])),
            None if "omega" not in p else tuple(map(tuple, p["omega"])),
            p.get("op", "cross"),
            None if "labels" not in p else tuple(p["labels"]),
        )
    if kind == "system":
        if "systems" in p:
            return tuple(_system_of(s) for s in p["systems"])
        return _system_of(p)
    if kind == "digraph":
        arcs = tuple(Arc(t, h, (tag, b)) for t, h, tag, b in p["arcs"])
        known = set(p["vertices"])
        for a in arcs:
            if not {a.tail, a.head, a.weight[1]} <= known:
                raise AlgebraError(f"arc {a} mentions an unknown vertex")
        return WeightedDigraph(tuple(p["vertices"]), arcs)
    raise DocumentError(f"unknown kind {kind!r}")  # pragma: no cover


def validate_payload(kind: str, data: dict) -> None:
    if kind not in SCHEMAS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        jsonschema.validate(data, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        path = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise DocumentError(f"{kind} document invalid at {path}: {exc.message}") from None


def load_document(data: dict, expect: str | tuple[str, ...] | None = None) -> tuple[str, Any]:
    """Validate a parsed document and build its object; returns ``(kind, object)``."""
    if not isinstance(data, dict):
        raise DocumentError("a document must be a JSON object")
    kind = data.get("kind")
    if data.get("version") != VERSION:
        raise DocumentError(f"unsupported or missing version {data.get('version')!r}; expected {VERSION}")
    if expect is not None:
        allowed = (expect,) if isinstance(expect, str) else expect
        if kind not in allowed:
            raise DocumentError(f"expected a {' or '.join(allowed)} document, got {kind!r}")
    validate_payload(kind, data)
    try:
        return kind, _build(kind, data)
    except _ERRORS as exc:
        raise DocumentError(f"{kind} document rejected: {exc}") from None


def read_payload(path: str | Path, kind: str) -> dict:
    """Schema-checked raw payload, for commands that inspect invalid objects."""
    data = _read_json(path)
    if not isinstance(data, dict) or data.get("kind") != kind:
        raise DocumentError(f"expected a {kind} document")
    if data.get("version") != VERSION:
        raise DocumentError(f"unsupported or missing version {data.get('version')!r}; expected {VERSION}")
    validate_payload(kind, data)
    return data


def _read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None


def read_document(path: str | Path, expect: str | tuple[str, ...] | None = None) -> tuple[str, Any]:
    return load_document(_read_json(path), expect)


def _graph_payload(g: Multigraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges]}


def _group_payload(g: FiniteGroup) -> dict:
    return {"elements": list(g.elements), "table": [list(r) for r in g.table]}


def _multigroup_payload(mg: MultiGroup) -> dict:
    return {"universe": list(mg.universe), "groups": [_group_payload(g) for g in mg.groups]}


def _system_payload(s: PartialBinarySystem) -> dict:
    return {"elements": list(s.elements), "table": [list(r) for r in s.table]}


def dump_document(obj: Any) -> dict:
    """Inverse of ``load_document``: ``load_document(dump_document(x))[1] == x``."""
    if isinstance(obj, Multigraph):
        kind, p = "graph", _graph_payload(obj)
    elif isinstance(obj, FiniteGroup):
        kind, p = "group", _group_payload(obj)
    elif isinstance(obj, MultiGroup):
        kind, p = "multigroup", _multigroup_payload(obj)
    elif isinstance(obj, MultiVoltage1):
        ops = None if obj.ops is None else [None if o is None else list(o) for o in obj.ops]
        kind, p = "voltage1", {
            "graph": _graph_payload(obj.base),
            "multigroup": _multigroup_payload(obj.multigroup),
            "psi": list(obj.psi),
            "ops": ops,
        }
    elif isinstance(obj, MultiVoltage2):
        kind, p = "voltage2", {
            "graph": _graph_payload(obj.base),
            "multigroup": _multigroup_payload(obj.multigroup),
            "partition": list(obj.partition),
            "tau": list(obj.tau),
        }
    elif isinstance(obj, CombinatorialMap):
        kind, p = "map", {"edges": obj.edge_count, "cycles": obj.named_cycles()}
    elif isinstance(obj, RotationSystem):
        kind, p = "rotation", {
            **_graph_payload(obj.base),
            "rotation": [[list(a) for a in cyc] for cyc in obj.rotation],
            "twist": list(obj.twist),
        }
    elif isinstance(obj, GraphPhase):
        if obj.exact:
            raise DocumentError("exact phases have no document form")
        kind, p = "phase", {
            **_graph_payload(obj.graph),
            "positions": [list(v) for v in obj.positions],
            "omega": [list(v) for v in obj.omega],
            "op": obj.op,
            "labels": list(obj.labels),
        }
    elif isinstance(obj, PartialBinarySystem):
        kind, p = "system", _system_payload(obj)
    elif isinstance(obj, tuple) and obj and all(isinstance(s, PartialBinarySystem) for s in obj):
        kind, p = "system", {"systems": [_system_payload(s) for s in obj]}
    elif isinstance(obj, WeightedDigraph):
        kind, p = "digraph", {
            "vertices": list(obj.vertices),
            "arcs": [[a.tail, a.head, a.weight[0], a.weight[1]] for a in obj.arcs],
        }
    else:
        raise DocumentError(f"no document kind for {type(obj).__name__}")
    return {"kind": kind, "version": VERSION, **p}


__all__ = [
    "DocumentError",
    "KINDS",
    "SCHEMAS",
    "VERSION",
    "dump_document",
    "load_document",
    "read_document",
    "read_payload",
    "validate_payload",
]
