"""Small permutation helpers on ``range(n)``; permutations are tuples of images."""

from __future__ import annotations

from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation from disjoint cycles; unlisted points are fixed."""
    image = list(range(n))
    seen: set[int] = set()
    for cyc in cycles:
        for k, x in enumerate(cyc):
            if not 0 <= x < n:
                raise ValueError(f"point {x} out of range")
            if x in seen:
                raise ValueError(f"point {x} appears twice")
            seen.add(x)
            image[x] = cyc[(k + 1) % len(cyc)]
    return tuple(image)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its least point, ordered by that point."""
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """``p o q``: apply ``q`` first."""
    return tuple(p[q[x]] for x in range(len(q)))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def orbits(n: int, gens: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Orbits of the group generated by ``gens``, as sorted tuples ordered by least point."""
    gens = list(gens)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        orb = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
                    stack.append(y)
        out.append(tuple(sorted(orb)))
    return out
