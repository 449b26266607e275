"""Graphs in space carrying vectors: the star identity, capacity and entropy.

Run with ``python3 demos/05_graph_phases.py``.
"""

from __future__ import annotations

import random

from graphspaces.core_graph import complete_graph
from graphspaces.phases import GraphPhase, capacity, differential_check, entropy, phase_matrices, verify_star_identity

rng = random.Random(5)
points = tuple(tuple(rng.uniform(-2, 2) for _ in range(3)) for _ in range(4))
ph = GraphPhase(complete_graph(4), points)
vm, lm = phase_matrices(ph)
print("K_4 phase with the cross product; Λ[0,1] =", lm[0, 1].round(4))
print("relative deviation of V * V^t from Λ:", f"{verify_star_identity(ph):.1e}")
print("with the plain distance instead:", f"{verify_star_identity(ph, squared=False):.1e}")
print("capacity:", tuple(round(x, 4) for x in capacity(ph)), "| entropy:", round(entropy(ph), 4))

direction = [tuple(rng.uniform(-1, 1) for _ in range(3)) for _ in range(4)]
print("\ncentral differences of entropy along ω + t·d:")
previous = None
for step in (0.1, 0.05, 0.025, 0.0125):
    err = differential_check(ph, direction, step).entropy_deviation
    ratio = "" if previous is None else f"  error ratio {previous / err:.2f}"
    print(f"  h = {step:<7} error {err:.2e}{ratio}")
    previous = err
print("ratios near 4 confirm second-order convergence")
