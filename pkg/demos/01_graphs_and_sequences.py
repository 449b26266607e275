"""Multigraphs, degree sequences and a hamiltonian decomposition.

Run with ``python3 demos/01_graphs_and_sequences.py``.
"""

from __future__ import annotations

import itertools

from graphspaces.core_graph import (
    Multigraph,
    adjacency_matrix,
    circuit_edges,
    complete_graph,
    decompose_complete_odd,
    eccentricity_profile,
    is_graphical_eg,
    is_graphical_hh,
    realize_sequence,
)

# A 4-cycle with a loop at every vertex and two doubled sides.
square = Multigraph(4, ((0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (3, 0)))
print("looped square, adjacency matrix:")
print(adjacency_matrix(square))
print("valencies (a loop counts twice):", square.valencies())

# Havel-Hakimi and Erdos-Gallai always agree; count the graphical sequences on 6 vertices.
seqs = list(itertools.combinations_with_replacement(range(5, -1, -1), 6))
graphical = [s for s in seqs if is_graphical_hh(s)]
assert all(is_graphical_eg(s) == (s in graphical) for s in seqs)
print(f"\n{len(graphical)} of {len(seqs)} non-increasing sequences on 6 vertices are graphical")
g = realize_sequence((3, 3, 2, 2, 2))
print("a realization of (3,3,2,2,2):", g.edges)
print("its eccentricity profile:", eccentricity_profile(g))

# K_7 splits into three edge-disjoint hamiltonian circuits.
print("\nK_7 as three hamiltonian circuits:")
used = set()
for c in decompose_complete_odd(3):
    edges = circuit_edges(c)
    used.update(edges)
    print("  ", " -> ".join(map(str, c + c[:1])))
print("edges covered:", len(used), "of", complete_graph(7).edge_count)
