"""Command-line interface: ``graphspaces <group> <command> [options]``.

Exit statuses: 0 success, 1 property-check failure, 2 usage error,
3 document schema violation, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import algsys, core_graph, groups, maps, phases, spatial, voltage
from .core_graph import BudgetExceeded, GraphError, Multigraph
from .documents import DocumentError, dump_document, read_document, read_payload

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCHEMA, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    """Bad arguments that argparse cannot catch on its own."""


@dataclass
class Result:
    data: dict[str, Any]
    status: int = EXIT_OK
    text: str | None = None
    document: Any = None  # object emitted as a workspace document under --json

    def render(self, as_json: bool) -> str:
        if as_json:
            if self.document is not None:
                return json.dumps(dump_document(self.document))
            return json.dumps(self.data, default=_jsonable)
        if self.text is not None:
            return self.text
        return " ".join(f"{k}={_fmt(v)}" for k, v in self.data.items())


def _jsonable(x: Any) -> Any:
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


# argument helpers


def _load(path: str, kind: str | tuple[str, ...]) -> Any:
    return read_document(path, kind)[1]


def _graph_arg(args: argparse.Namespace) -> Multigraph:
    if getattr(args, "file", None):
        return _load(args.file, "graph")
    if getattr(args, "complete", None) is not None:
        return core_graph.complete_graph(args.complete)
    if getattr(args, "bipartite", None) is not None:
        return core_graph.complete_bipartite(*args.bipartite)
    if getattr(args, "bouquet", None) is not None:
        return core_graph.bouquet(args.bouquet)
    raise UsageError("give a graph with --file, --complete N, --bipartite M N or --bouquet N")


def _semi_arcs(text: str) -> list[tuple[int, int]]:
    """``"0:0,1:1"`` names the semi-arcs (edge 0, end 0) and (edge 1, end 1)."""
    out = []
    for part in text.split(","):
        try:
            e, end = part.split(":")
            out.append((int(e), int(end)))
        except ValueError:
            raise UsageError(f"bad semi-arc {part!r}; expected EDGE:END") from None
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [x for x in text.split(",") if x != ""]


# seq and graph


def cmd_seq_check(args) -> Result:
    seq = args.sequence
    hh, eg = core_graph.is_graphical_hh(seq), core_graph.is_graphical_eg(seq)
    data = {"graphical": hh, "havel_hakimi": hh, "erdos_gallai": eg}
    if hh:
        g = core_graph.realize_sequence(seq)
        data["realization"] = [list(e) for e in g.edges]
    return Result(data, EXIT_OK if hh == eg else EXIT_FAIL, text=f"graphical={_fmt(hh)} hh={_fmt(hh)} eg={_fmt(eg)}")


def cmd_graph_info(args) -> Result:
    g = _graph_arg(args)
    data = {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "betti": g.betti_number(),
        "connected": g.is_connected(),
        "simple": g.is_simple(),
        "valencies": g.valencies(),
    }
    return Result(data)


def cmd_graph_ecc(args) -> Result:
    p = core_graph.eccentricity_profile(_graph_arg(args))
    return Result(
        {
            "eccentricities": list(p.eccentricities),
            "value_sequence": list(p.value_sequence),
            "radius": p.radius,
            "diameter": p.diameter,
        }
    )


def cmd_graph_closure(args) -> Result:
    g = core_graph.closure(_graph_arg(args))
    return Result({"vertices": g.vertex_count, "edges": g.edge_count}, document=g)


def cmd_graph_decompose(args) -> Result:
    n = args.complete_odd
    circuits = core_graph.decompose_complete_odd(n)
    text = "\n".join(" ".join(map(str, c)) for c in circuits)
    return Result({"n": n, "circuits": circuits}, text=text)


def cmd_graph_split(args) -> Result:
    g = core_graph.splitting_operator(_graph_arg(args), args.vertex)
    return Result({"vertices": g.vertex_count, "edges": g.edge_count}, document=g)


# groups and Cayley graphs


def cmd_group_verify(args) -> Result:
    data = read_payload(args.file, "group")
    check = groups.verify_group(data["elements"], data["table"])
    if check:
        return Result({"group": True}, text="group=true")
    res = {"group": False, "axiom": check.axiom, "witness": list(check.witness)}
    return Result(res, EXIT_FAIL, text=f"group=false axiom={check.axiom} witness={_fmt(check.witness)}")


def cmd_cayley_build(args) -> Result:
    g = _load(args.group, "group")
    graph = groups.cayley_graph(g, _str_list(args.set))
    return Result({"vertices": graph.vertex_count, "edges": graph.edge_count}, document=graph)


def cmd_cayley_connected(args) -> Result:
    mg = _load(args.multigroup, "multigroup")
    sets = [_str_list(s) for s in args.sets]
    if len(sets) != mg.operation_count:
        raise UsageError(f"need one --sets entry per constituent ({mg.operation_count})")
    crit = groups.is_multigroup_cayley_connected(mg, sets)
    direct = groups.cayley_graph_multigroup(mg, sets).graph.is_connected()
    return Result({"criterion": crit, "direct": direct}, EXIT_OK if crit == direct else EXIT_FAIL)


def cmd_cayley_factorize(args) -> Result:
    g = _load(args.group, "group")
    factors = groups.factorize_cayley(g, _str_list(args.set))
    text = "\n".join(f"{f.kind} {f.generator}: {len(f.edges)} edges" for f in factors)
    data = {"factors": [{"kind": f.kind, "generator": f.generator, "edges": [list(e) for e in f.edges]} for f in factors]}
    return Result(data, text=text)


# voltages


def cmd_lift_type1(args) -> Result:
    lift = voltage.lift_type1(_load(args.file, "voltage1"))
    return Result({"vertices": lift.graph.vertex_count, "edges": lift.graph.edge_count}, document=lift.graph)


def cmd_lift_type2(args) -> Result:
    lift = voltage.lift_type2(_load(args.file, "voltage2"))
    return Result({"vertices": lift.graph.vertex_count, "edges": lift.graph.edge_count}, document=lift.graph)


def cmd_lift_walks(args) -> Result:
    mv = _load(args.file, "voltage1")
    walk = _semi_arcs(args.walk)
    lifts = voltage.lift_walk(mv, walk, args.start)
    bound = voltage.walk_lifting_bound(mv, walk, args.start)
    data = {"liftings": len(lifts), "bound": bound, "ops": [list(w.ops) for w in lifts]}
    return Result(data, text=f"liftings={len(lifts)} bound={bound}")


def cmd_lift_circuit(args) -> Result:
    mv = _load(args.file, "voltage1")
    rows = voltage.circuit_homogeneous_liftings(mv, _semi_arcs(args.circuit))
    data = {
        "liftings": [
            {"op": r.op, "product": r.product, "order": r.order, "count": r.count, "length": r.length} for r in rows
        ],
        "total": sum(r.count for r in rows),
    }
    text = "\n".join(f"op={r.op} product={r.product} order={r.order} count={r.count} length={r.length}" for r in rows)
    return Result(data, text=text + f"\ntotal={data['total']}")


def cmd_quotient(args) -> Result:
    g = _load(args.file, "graph")
    perms = [_int_list(p) for p in args.perm]
    q = voltage.quotient_graph(g, perms)
    data = {"vertex_orbits": [list(o) for o in q.vertex_orbits], "edge_orbits": [list(o) for o in q.edge_orbits]}
    return Result({"vertices": q.graph.vertex_count, "edges": q.graph.edge_count, **data}, document=q.graph)


# maps


def _map(args) -> maps.CombinatorialMap:
    return _load(args.file, "map")


def cmd_map_validate(args) -> Result:
    check = maps.validate_map(_map(args))
    if check:
        return Result({"valid": True}, text="valid=true")
    w = None if check.witness is None else maps.quadricell_name(check.witness)
    return Result({"valid": False, "axiom": check.axiom, "witness": w}, EXIT_FAIL)


def cmd_map_orbits(args) -> Result:
    m = _map(args)
    orb = maps.map_orbits(m)

    def names(cells):
        return [maps.quadricell_name(q) for q in cells]

    data = {
        "vertices": [[names(a), names(b)] for a, b in orb.vertices],
        "edges": [names(e) for e in orb.edges],
        "faces": [[names(a), names(b)] for a, b in orb.faces],
    }
    lines = [f"vertex ({' '.join(a)})({' '.join(b)})" for a, b in data["vertices"]]
    lines += [f"edge {{{', '.join(e)}}}" for e in data["edges"]]
    lines += [f"face ({' '.join(a)})({' '.join(b)})" for a, b in data["faces"]]
    return Result(data, text="\n".join(lines))


def cmd_map_chi(args) -> Result:
    s = maps.surface(_map(args))
    return Result({"chi": s.chi, "orientable": s.orientable}, text=f"chi={s.chi} orientable={_fmt(s.orientable)}")


def cmd_map_orientable(args) -> Result:
    s = maps.surface(_map(args))
    return Result({"orientable": s.orientable, "genus": s.genus})


def cmd_map_twist(args) -> Result:
    m = maps.edge_twist(_map(args), args.edge)
    s = maps.surface(m)
    return Result({"chi": s.chi, "orientable": s.orientable}, document=m)


def cmd_map_from_rotation(args) -> Result:
    m = maps.map_from_rotation(_load(args.file, "rotation"))
    s = maps.surface(m)
    return Result({"chi": s.chi, "orientable": s.orientable, "faces": maps.face_count(m)}, document=m)


def cmd_map_lift(args) -> Result:
    m = _map(args)
    mg = _load(args.multigroup, "multigroup")
    ops = _int_list(args.ops) if args.ops else ()
    mv = maps.MapVoltage(m, mg, tuple(_str_list(args.values)), tuple(ops))
    cond = maps.face_generation_condition(mv)
    if not cond:
        return Result({"lifted": False, "axiom": cond.axiom, "witness": cond.witness}, EXIT_FAIL)
    lifted = maps.lift_map(mv)
    check = maps.validate_map(lifted)
    if not check:
        return Result({"lifted": False, "axiom": check.axiom, "witness": check.witness}, EXIT_FAIL)
    chi = maps.euler_characteristic(lifted)
    formula = maps.lift_euler_formula(mv)
    data = {"lifted": True, "chi": chi, "formula": str(formula), "edges": lifted.edge_count}
    return Result(data, EXIT_OK if formula == chi else EXIT_FAIL, document=lifted)


# genus


def cmd_genus_formula(args) -> Result:
    if args.complete is not None:
        v = maps.genus_formulas("complete", args.complete)
    elif args.bipartite is not None:
        v = maps.genus_formulas("bipartite", *args.bipartite)
    else:
        raise UsageError("give --complete N or --bipartite M N")
    data = {"gamma": v.gamma, "gamma_tilde": v.gamma_tilde, "gamma_max": v.gamma_max, "gamma_tilde_max": v.gamma_tilde_max}
    return Result(data, text=f"gamma={_fmt(v.gamma)} gamma_tilde={_fmt(v.gamma_tilde)}")


def cmd_genus_range(args) -> Result:
    r = maps.genus_range(_graph_arg(args), args.budget)
    data = {
        "orientable": list(r.orientable),
        "nonorientable": list(r.nonorientable),
        "genus": r.genus,
        "max_genus": r.max_genus,
        "crosscap": r.nonorientable_genus,
    }
    return Result(data)


def cmd_genus_xuong(args) -> Result:
    return Result({"max_genus": maps.xuong_max_genus(_graph_arg(args), args.budget)})


def cmd_genus_nebesky(args) -> Result:
    return Result({"max_genus": maps.nebesky_max_genus(_graph_arg(args), args.budget)})


# enumeration


def cmd_enumerate_embeddings(args) -> Result:
    c = maps.enumerate_embeddings(_graph_arg(args), args.budget)
    data = {
        "orientable": {str(k): v for k, v in sorted(c.orientable.items())},
        "nonorientable": {str(k): v for k, v in sorted(c.nonorientable.items())},
        "orientable_total": sum(c.orientable.values()),
        "nonorientable_total": sum(c.nonorientable.values()),
    }
    data["total"] = data["orientable_total"] + data["nonorientable_total"]
    text = (
        f"orientable={data['orientable_total']} nonorientable={data['nonorientable_total']} total={data['total']}\n"
        + "genus " + " ".join(f"{k}:{v}" for k, v in data["orientable"].items())
        + "\ncrosscap " + " ".join(f"{k}:{v}" for k, v in data["nonorientable"].items())
    )
    return Result(data, text=text)


def cmd_enumerate_rooted_maps(args) -> Result:
    g = _graph_arg(args)
    count = maps.rooted_map_count(g)
    data = {"count": count}
    status = EXIT_OK
    if args.exhaustive:
        data["exhaustive"] = maps.rooted_maps_exhaustive(g, args.budget)
        status = EXIT_OK if data["exhaustive"] == count else EXIT_FAIL
        return Result(data, status)
    return Result(data, status, text=str(count))


def cmd_enumerate_rooted_manifold(args) -> Result:
    g = _graph_arg(args)
    count = spatial.rooted_manifold_count(g, args.n)
    data = {"count": count}
    if args.exhaustive:
        data["exhaustive"] = spatial.rooted_manifolds_exhaustive(g, args.n, args.budget)
        return Result(data, EXIT_OK if data["exhaustive"] == count else EXIT_FAIL)
    return Result(data, text=str(count))


# space


def cmd_space_count(args) -> Result:
    return Result({"count": spatial.count_space_embeddings(_graph_arg(args), args.n)})


def cmd_space_rectilinear(args) -> Result:
    g = _graph_arg(args)
    ts = None
    if args.seed is not None:
        rng = random.Random(args.seed)
        ts = sorted(rng.sample(range(1, 10 * g.vertex_count + 1), g.vertex_count))
    pts = spatial.rectilinear_coordinates(g, ts)
    ok = spatial.is_rectilinear_embedding(g, pts)
    data = {"embedding": ok, "points": [[str(x) for x in p] for p in pts]}
    return Result(data, EXIT_OK if ok else EXIT_FAIL, text=f"embedding={_fmt(ok)}")


def cmd_space_blocks(args) -> Result:
    if args.complete is not None:
        data = {"n_p": spatial.planar_block_number("complete", args.complete)}
    elif args.bipartite is not None:
        data = {"n_p": spatial.planar_block_number("bipartite", *args.bipartite)}
    else:
        data = {"n_p": spatial.planar_block_number_exhaustive(_graph_arg(args), args.budget)}
    return Result(data)


def cmd_space_feasible(args) -> Result:
    kind, size = ("complete", args.complete) if args.complete is not None else ("bipartite", args.bipartite)
    if size is None:
        raise UsageError("give --complete N or --bipartite N")
    ok = spatial.multi_embedding_feasible(kind, size, args.genera, not args.nonorientable)
    return Result({"feasible": ok})


# algebraic systems


def _system(args):
    obj = _load(args.file, "system")
    return obj if isinstance(obj, tuple) else (obj,)


def _digraph(args) -> algsys.WeightedDigraph:
    kind, obj = read_document(args.file, ("system", "digraph"))
    if kind == "digraph":
        return obj
    systems = obj if isinstance(obj, tuple) else (obj,)
    return algsys.multispace_graph(list(systems)) if len(systems) > 1 else algsys.graph_model(systems[0])


def cmd_algsys_build(args) -> Result:
    d = _digraph(args)
    text = "\n".join(f"{a.tail} -> {a.head} [{a.weight[0]}:{a.weight[1]}]" for a in d.arcs)
    return Result({"vertices": len(d.vertices), "arcs": len(d.arcs)}, text=text, document=d)


def cmd_algsys_analyze(args) -> Result:
    r = algsys.analyze_properties(_digraph(args))
    data = {
        "connected": r.connected,
        "partition": None if r.partition is None else [list(p) for p in r.partition],
        "left_units": list(r.left_units),
        "right_units": list(r.right_units),
        "units": list(r.units),
        "inverse_pairs": [list(p) for p in r.inverse_pairs],
        "commuting_pairs": [list(p) for p in r.commuting_pairs],
        "cancellation": r.cancellation,
    }
    text = (
        f"connected={_fmt(r.connected)} units={_fmt(r.units) or 'none'} "
        f"inverses={len(r.inverse_pairs)} cancellation={_fmt(r.cancellation)}"
    )
    return Result(data, text=text)


def cmd_algsys_euler(args) -> Result:
    d = _digraph(args)
    rep = algsys.euler_analysis(d)
    if not rep.is_euler:
        v = rep.witness
        data = {"euler": False, "witness": v, "out_degree": d.out_degree(v), "in_degree": d.in_degree(v)}
        return Result(data, text=f"euler=false witness={v} out={d.out_degree(v)} in={d.in_degree(v)}")
    pairing = {v: {f"{b[0]}:{b[1]}": f"{c[0]}:{c[1]}" for b, c in m.items()} for v, m in rep.pairing.items()}
    data = {"euler": True, "global_map": rep.global_map, "pairing": pairing, "circuit_length": len(rep.circuit)}
    gm = "none" if rep.global_map is None else ",".join(f"{k}->{v}" for k, v in sorted(rep.global_map.items()))
    return Result(data, text=f"euler=true circuit={len(rep.circuit)} one_way={gm}")


def cmd_algsys_reconstruct(args) -> Result:
    d = _digraph(args)
    systems = algsys.reconstruct_systems(d)
    obj = systems[0] if len(systems) == 1 else tuple(systems)
    lines = []
    for s in systems:
        lines.append(" ".join(["∘", *s.elements]))
        for x, row in zip(s.elements, s.table):
            lines.append(" ".join([x, *(c or "*" for c in row)]))
    return Result({"systems": len(systems)}, text="\n".join(lines), document=obj)


# phases


def _phase(args) -> phases.GraphPhase:
    return _load(args.file, "phase")


def cmd_phase_matrices(args) -> Result:
    ph = _phase(args)
    vm, lm = phases.phase_matrices(ph, squared=not args.unsquared)
    data = {"V": vm.tolist(), "Lambda": lm.tolist(), "labels": list(ph.labels)}
    lines = []
    for name, m in (("V", vm), ("Lambda", lm)):
        lines.append(name)
        for i, row in enumerate(m):
            lines.append(ph.labels[i] + " " + " ".join("(" + ",".join(f"{x:.6g}" for x in cell) + ")" for cell in row))
    return Result(data, text="\n".join(lines))


def cmd_phase_verify(args) -> Result:
    dev = phases.verify_star_identity(_phase(args), squared=not args.unsquared)
    ok = dev <= args.tolerance
    return Result({"deviation": dev, "ok": ok}, EXIT_OK if ok else EXIT_FAIL)


def cmd_phase_capacity(args) -> Result:
    return Result({"capacity": list(phases.capacity(_phase(args)))})


def cmd_phase_entropy(args) -> Result:
    return Result({"entropy": phases.entropy(_phase(args), squared=args.squared)})


def cmd_phase_diffcheck(args) -> Result:
    ph = _phase(args)
    rng = np.random.default_rng(args.seed)
    d = rng.uniform(-1, 1, size=(ph.size, 3))
    r1 = phases.differential_check(ph, d, args.step)
    r2 = phases.differential_check(ph, d, args.step / 2)
    ratio = r1.entropy_deviation / r2.entropy_deviation if r2.entropy_deviation > 0 else None
    data = {
        "capacity_deviation": r1.capacity_deviation,
        "entropy_deviation": r1.entropy_deviation,
        "entropy_deviation_half_step": r2.entropy_deviation,
        "ratio": ratio,
    }
    return Result(data)


# acceptance driver


def _acceptance_file() -> Path | None:
    here = Path(__file__).resolve()
    for root in (Path.cwd(), *here.parents):
        cand = root / "tests" / "test_acceptance.py"
        if cand.is_file():
            return cand
    return None


def cmd_verify_all(args) -> Result:
    target = _acceptance_file()
    if target is None:
        raise UsageError("tests/test_acceptance.py not found; run from the repository checkout")
    cmd = [sys.executable, "-m", "pytest", str(target), "-q", "-s", "-p", "no:cacheprovider"]
    if args.seed is not None:
        cmd.append(f"--hypothesis-seed={args.seed}")
    env = dict(os.environ)
    if args.budget is not None:
        env["MSG_BUDGET"] = str(args.budget)
    proc = subprocess.run(cmd, capture_output=True, text=True, env=env, cwd=target.parent.parent)
    lines = [ln for ln in proc.stdout.splitlines() if ln.startswith(("PASS", "FAIL"))]
    failed = sum(ln.startswith("FAIL") for ln in lines)
    data = {"criteria": lines, "failed": failed, "pytest_status": proc.returncode}
    status = EXIT_OK if proc.returncode == 0 and failed == 0 else EXIT_FAIL
    summary = f"{len(lines) - failed} of {len(lines)} criteria pass; pytest exit status {proc.returncode}"
    return Result(data, status, text="\n".join(lines + [summary]))


# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit machine-readable output")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
    p.add_argument("--budget", type=int, default=None, help="cap on enumerated candidates")
    return p


def _graph_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--file", help="graph document")
    p.add_argument("--complete", type=int, metavar="N")
    p.add_argument("--bipartite", type=int, nargs=2, metavar=("M", "N"))
    p.add_argument("--bouquet", type=int, metavar="N")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="graphspaces", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    def group(name: str, help: str):
        g = top.add_parser(name, help=help)
        return g.add_subparsers(dest="command", required=True)

    def leaf(sub, name: str, fn: Callable[[argparse.Namespace], Result], help: str):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    s = group("seq", "degree sequences")
    p = leaf(s, "check", cmd_seq_check, "graphicality by Havel-Hakimi and Erdos-Gallai")
    p.add_argument("sequence", type=int, nargs="+")

    s = group("graph", "graph operations")
    _graph_source(leaf(s, "info", cmd_graph_info, "basic invariants"))
    _graph_source(leaf(s, "ecc", cmd_graph_ecc, "eccentricity profile"))
    _graph_source(leaf(s, "closure", cmd_graph_closure, "closure under the degree-sum rule"))
    p = leaf(s, "decompose", cmd_graph_decompose, "hamiltonian decomposition of K_{2n+1}")
    p.add_argument("--complete-odd", type=int, required=True, metavar="N")
    p = leaf(s, "split", cmd_graph_split, "apply the splitting operator at a vertex")
    _graph_source(p)
    p.add_argument("--vertex", type=int, required=True)

    s = group("group", "finite groups")
    leaf(s, "verify", cmd_group_verify, "check the group axioms of a table").add_argument("--file", required=True)

    s = group("cayley", "Cayley graphs")
    p = leaf(s, "build", cmd_cayley_build, "Cayley graph of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True, help="comma-separated connection set")
    p = leaf(s, "connected", cmd_cayley_connected, "connectivity of a multi-group Cayley graph")
    p.add_argument("--multigroup", required=True)
    p.add_argument("--sets", nargs="+", required=True, help="one comma-separated set per constituent")
    p = leaf(s, "factorize", cmd_cayley_factorize, "1- and 2-factors of a Cayley graph")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)

    s = group("lift", "voltage liftings")
    leaf(s, "type1", cmd_lift_type1, "type-1 multi-voltage lifting").add_argument("--file", required=True)
    leaf(s, "type2", cmd_lift_type2, "type-2 multi-voltage lifting").add_argument("--file", required=True)
    p = leaf(s, "walks", cmd_lift_walks, "count liftings of a walk")
    p.add_argument("--file", required=True)
    p.add_argument("--walk", required=True, help="semi-arcs as EDGE:END,EDGE:END,...")
    p.add_argument("--start", required=True, help="starting fiber element")
    p = leaf(s, "circuit", cmd_lift_circuit, "homogeneous liftings of a circuit")
    p.add_argument("--file", required=True)
    p.add_argument("--circuit", required=True, help="semi-arcs as EDGE:END,...")

    p = top.add_parser("quotient", parents=[common], help="quotient graph by vertex permutations")
    p.set_defaults(func=cmd_quotient)
    p.add_argument("--file", required=True)
    p.add_argument("--perm", nargs="+", required=True, help="comma-separated vertex images, one per group element")

    s = group("map", "combinatorial maps")
    for name, fn, help in (
        ("validate", cmd_map_validate, "check the map axioms"),
        ("orbits", cmd_map_orbits, "vertices, edges and faces as conjugate pairs"),
        ("chi", cmd_map_chi, "Euler characteristic and orientability"),
        ("orientable", cmd_map_orientable, "orientability and genus"),
    ):
        leaf(s, name, fn, help).add_argument("--file", required=True)
    p = leaf(s, "twist", cmd_map_twist, "twist one edge")
    p.add_argument("--file", required=True)
    p.add_argument("--edge", type=int, required=True)
    leaf(s, "from-rotation", cmd_map_from_rotation, "map of a rotation system").add_argument("--file", required=True)
    p = leaf(s, "lift", cmd_map_lift, "lift a map along multi-voltages")
    p.add_argument("--file", required=True)
    p.add_argument("--multigroup", required=True)
    p.add_argument("--values", required=True, help="comma-separated voltage per edge")
    p.add_argument("--ops", default="", help="comma-separated constituent per edge")

    s = group("genus", "genus computations")
    p = leaf(s, "formula", cmd_genus_formula, "closed-form genera of K_n and K(m,n)")
    p.add_argument("--complete", type=int, metavar="N")
    p.add_argument("--bipartite", type=int, nargs=2, metavar=("M", "N"))
    _graph_source(leaf(s, "range", cmd_genus_range, "genus range by enumeration"))
    _graph_source(leaf(s, "max-xuong", cmd_genus_xuong, "maximum genus by spanning trees"))
    _graph_source(leaf(s, "max-nebesky", cmd_genus_nebesky, "maximum genus by edge subsets"))

    s = group("enumerate", "exhaustive enumeration")
    _graph_source(leaf(s, "embeddings", cmd_enumerate_embeddings, "embedding census"))
    p = leaf(s, "rooted-maps", cmd_enumerate_rooted_maps, "rooted map count")
    _graph_source(p)
    p.add_argument("--exhaustive", action="store_true", help="also count by enumeration")
    p = leaf(s, "rooted-manifold", cmd_enumerate_rooted_manifold, "rooted manifold graph count")
    _graph_source(p)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--exhaustive", action="store_true")

    s = group("space", "graphs in space")
    p = leaf(s, "count", cmd_space_count, "number of embeddings in R^n")
    _graph_source(p)
    p.add_argument("--n", type=int, default=3)
    _graph_source(leaf(s, "rectilinear", cmd_space_rectilinear, "moment-curve rectilinear embedding"))
    _graph_source(leaf(s, "blocks", cmd_space_blocks, "planar block number"))
    p = leaf(s, "feasible", cmd_space_feasible, "multi-embedding on surfaces of given genera")
    p.add_argument("--complete", type=int, metavar="N")
    p.add_argument("--bipartite", type=int, metavar="N")
    p.add_argument("--genera", type=int, nargs="+", required=True)
    p.add_argument("--nonorientable", action="store_true")

    s = group("algsys", "algebraic systems as weighted digraphs")
    for name, fn, help in (
        ("build", cmd_algsys_build, "weighted digraph of a system"),
        ("analyze", cmd_algsys_analyze, "properties P1 to P5"),
        ("euler", cmd_algsys_euler, "Euler test and one-way function"),
        ("reconstruct", cmd_algsys_reconstruct, "recover tables from a digraph"),
    ):
        leaf(s, name, fn, help).add_argument("--file", required=True)

    s = group("phase", "graph phases in R^3")
    for name, fn, help in (
        ("matrices", cmd_phase_matrices, "V and Lambda matrices"),
        ("verify", cmd_phase_verify, "star identity deviation"),
        ("capacity", cmd_phase_capacity, "sum of vertex vectors"),
        ("entropy", cmd_phase_entropy, "sum of log norms"),
        ("diffcheck", cmd_phase_diffcheck, "finite-difference gradient check"),
    ):
        p = leaf(s, name, fn, help)
        p.add_argument("--file", required=True)
        if name in ("matrices", "verify"):
            p.add_argument("--unsquared", action="store_true", help="divide Lambda by the plain distance")
        if name == "verify":
            p.add_argument("--tolerance", type=float, default=1e-9)
        if name == "entropy":
            p.add_argument("--squared", action="store_true", help="use log of squared norms")
        if name == "diffcheck":
            p.add_argument("--step", type=float, default=1e-3)

    s = group("verify", "acceptance suite")
    leaf(s, "all", cmd_verify_all, "run every acceptance check")
    return parser


@dataclass
class Outcome:
    status: int
    out: str = ""
    err: str = ""
    result: Result | None = field(default=None, repr=False)


def run(argv: Sequence[str]) -> Outcome:
    """Parse and execute; never raises and never exits."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return Outcome(EXIT_USAGE if code else EXIT_OK)
    if args.budget is not None and args.budget <= 0:
        return Outcome(EXIT_USAGE, err="--budget must be positive")
    saved = os.environ.get("MSG_BUDGET")
    if args.budget is not None:
        # functions without a budget argument read the environment default
        os.environ["MSG_BUDGET"] = str(args.budget)
    try:
        result = args.func(args)
    except UsageError as exc:
        return Outcome(EXIT_USAGE, err=str(exc))
    except DocumentError as exc:
        return Outcome(EXIT_SCHEMA, err=str(exc))
    except FileNotFoundError as exc:
        return Outcome(EXIT_USAGE, err=f"no such file: {exc.filename}")
    except BudgetExceeded as exc:
        return Outcome(EXIT_BUDGET, err=f"budget exceeded: {exc}")
    except (GraphError, groups.GroupError, voltage.VoltageError, maps.MapError, spatial.SpatialError,
            algsys.AlgebraError, phases.PhaseError) as exc:
        return Outcome(EXIT_USAGE, err=str(exc))
    finally:
        if saved is None:
            os.environ.pop("MSG_BUDGET", None)
        else:
            os.environ["MSG_BUDGET"] = saved
    return Outcome(result.status, result.render(args.json), result=result)


def main(argv: Sequence[str] | None = None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    if outcome.out:
        print(outcome.out)
    if outcome.err:
        print(f"error: {outcome.err}", file=sys.stderr)
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
