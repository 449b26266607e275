"""Binary systems read as weighted digraphs.

Run with ``python3 demos/04_algebra_as_graphs.py``.
"""

from __future__ import annotations

from graphspaces.algsys import (
    CYCLIC3_TABLE,
    PARTIAL4_TABLE,
    PartialBinarySystem,
    analyze_properties,
    euler_analysis,
    graph_model,
    multispace_graph,
    reconstruct_system,
    reconstruct_systems,
)
from graphspaces.groups import cyclic_group

d = graph_model(PartialBinarySystem.from_group(cyclic_group(4)))
print("G[Z_4] has", len(d.arcs), "arcs; a few of them:")
for arc in d.arcs[:5]:
    print(f"  {arc.tail} -> {arc.head}  weight o{arc.weight[1]}")
rep = analyze_properties(d)
print("connected:", rep.connected, "| unit:", rep.units, "| inverse pairs:", rep.inverse_pairs,
      "| cancellation:", rep.cancellation)
eu = euler_analysis(d)
print("Eulerian:", eu.is_euler, "| one-way map is the identity:", all(k == v for k, v in eu.global_map.items()))
print("Euler circuit starts", " ".join(a.tail for a in eu.circuit[:8]), "...")

# A partial operation: only some products are defined.
p = graph_model(PARTIAL4_TABLE)
print("\npartial table on", PARTIAL4_TABLE.elements, "has", len(p.arcs), "arcs")
print("round trip:", reconstruct_system(p).products() == PARTIAL4_TABLE.products())

# Two systems in one digraph; weights carry an operation tag.
union = multispace_graph([CYCLIC3_TABLE, PARTIAL4_TABLE])
print("\nunion digraph:", len(union.vertices), "vertices,", len(union.arcs), "arcs, tags", union.tags())
back = reconstruct_systems(union)
print("separated again:", [s.products() == t.products() for s, t in zip(back, [CYCLIC3_TABLE, PARTIAL4_TABLE])])
