"""Voltage graphs over groups and multi-groups.

Run with ``python3 demos/03_voltage_lifts.py``.
"""

from __future__ import annotations

import networkx as nx

from graphspaces.core_graph import Multigraph, cycle_graph
from graphspaces.groups import MultiGroup, cyclic_group, cayley_graph_multigroup, is_multigroup_cayley_connected
from graphspaces.voltage import MultiVoltage1, circuit_homogeneous_liftings, lift_type1, lift_walk

# Two loops and a link over Z_5 lift to the Petersen graph.
base = Multigraph(2, ((0, 0), (1, 1), (0, 1)))
petersen = MultiVoltage1(base, MultiGroup((cyclic_group(5),)), ("1", "2", "0"))
lift = lift_type1(petersen).graph
h = nx.Graph(lift.edges)
print("lift over Z_5:", lift.vertex_count, "vertices,", lift.edge_count, "edges,",
      "Petersen:", nx.is_isomorphic(h, nx.petersen_graph()))

# Two operations on the same three labels: each walk step lifts in two ways.
z3 = cyclic_group(3)
other = z3.relabeled(["1", "0", "2"])
mg = MultiGroup((z3, other))
mv = MultiVoltage1(cycle_graph(3), mg, ("1", "1", "2"))
walk = [(0, 0), (1, 0), (2, 0)]
print("\nliftings of a 3-step walk with 2 operations:", len(lift_walk(mv, walk, "0")), "= 2^3")
for res in circuit_homogeneous_liftings(mv, walk):
    print(f"  operation {res.op}: circuit voltage {res.product} of order {res.order}, "
          f"{res.count} lifted circuit(s) of length {res.length}")

# Cayley graph of a multi-group whose constituents overlap in one element.
a = cyclic_group(3, ["a0", "a1", "a2"])
c = cyclic_group(3, ["a2", "c1", "c2"])
mg2 = MultiGroup((a, c))
sets = [["a1", "a2"], ["c1", "c2"]]
cay = cayley_graph_multigroup(mg2, sets)
print("\nmulti-group Cayley graph on", cay.labels)
print("  edges:", [(cay.labels[u], cay.labels[v]) for u, v in cay.graph.edges])
print("  connected by the overlap criterion:", is_multigroup_cayley_connected(mg2, sets))
