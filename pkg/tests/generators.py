"""Seeded random instance generators shared by the unit and acceptance tests."""

from __future__ import annotations

import random

from graphspaces.groups import FiniteGroup, MultiGroup, abelian_groups, cyclic_group, symmetric_group

SMALL_GROUPS = [g for n in range(2, 7) for g in abelian_groups(n)] + [symmetric_group(3)]


def random_generating_set(rng: random.Random, group: FiniteGroup) -> list[str]:
    """Inverse-closed, identity-free set generating ``group``."""
    others = [x for x in group.elements if x != group.identity]
    while True:
        picks = rng.sample(others, rng.randint(1, len(others)))
        s = sorted({x for p in picks for x in (p, group.inv(p))})
        if group.generated(s) == frozenset(group.elements):
            return s


def random_multigroup(rng: random.Random, max_universe: int = 12, max_groups: int = 4) -> MultiGroup:
    """Constituents are small groups relabelled onto random subsets of a shared universe."""
    size = rng.randint(2, max_universe)
    universe = [f"u{i}" for i in range(size)]
    groups = []
    for _ in range(rng.randint(1, max_groups)):
        candidates = [g for g in SMALL_GROUPS if g.order <= size]
        base = rng.choice(candidates)
        labels = rng.sample(universe, base.order)
        groups.append(base.relabeled(labels))
    return MultiGroup(tuple(groups), tuple(universe))


def permuted_copy(rng: random.Random, group: FiniteGroup) -> FiniteGroup:
    """Same label set with a different operation: transport along a random relabelling."""
    labels = list(group.elements)
    rng.shuffle(labels)
    return group.relabeled(labels)


def same_set_multigroup(rng: random.Random, base: FiniteGroup, n: int) -> MultiGroup:
    """``n`` operations on the label set of ``base``; the first is ``base`` itself."""
    groups = [base] + [permuted_copy(rng, base) for _ in range(n - 1)]
    return MultiGroup(tuple(groups))


def z(n: int) -> FiniteGroup:
    return cyclic_group(n)
