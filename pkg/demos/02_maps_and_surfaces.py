"""Combinatorial maps, embedding census and genus.

Run with ``python3 demos/02_maps_and_surfaces.py``.
"""

from __future__ import annotations

from graphspaces.core_graph import complete_bipartite, complete_graph
from graphspaces.maps import (
    enumerate_embeddings,
    genus_formulas,
    genus_range,
    klein_bottle_dipole,
    map_orbits,
    nebesky_max_genus,
    surface,
    xuong_max_genus,
)

# Four parallel edges between two vertices, drawn on the Klein bottle.
m = klein_bottle_dipole()
print("Klein bottle dipole, P as named quadricell cycles:")
for cyc in m.named_cycles():
    print("  (" + ", ".join(cyc) + ")")
orb = map_orbits(m)
print(f"vertices {len(orb.vertices)}, edges {len(orb.edges)}, faces {len(orb.faces)}")
print("surface:", surface(m))

# Every rotation system of K_4, split by surface.
census = enumerate_embeddings(complete_graph(4))
print("\nK_4 census")
print("  orientable genus histogram:", census.orientable)
print("  crosscap histogram:", census.nonorientable)
print("  totals:", census.orientable_total, census.nonorientable_total, census.total)

# Closed forms against brute force.
for name, g, values in [
    ("K_5", complete_graph(5), genus_formulas("complete", 5)),
    ("K(3,3)", complete_bipartite(3, 3), genus_formulas("bipartite", 3, 3)),
]:
    r = genus_range(g)
    print(f"\n{name}: formula genus {values.gamma}, enumerated genus {r.genus}")
    print(f"{name}: formula crosscap {values.gamma_tilde}, enumerated crosscap {r.nonorientable_genus}")
    print(f"{name}: maximum genus by Xuong {xuong_max_genus(g)}, Nebesky {nebesky_max_genus(g)}, "
          f"enumeration {r.max_genus}")

print("\nK_7 needs 3 crosscaps though the general formula gives 2:", genus_formulas("complete", 7))
