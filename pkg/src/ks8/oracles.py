"""Slow, independent reference computations used to cross-check the fast paths.

Nothing here shares code with the bitmask clique search or the GF(2)
nullspace walk: cliques are grown from raw inner products over plain lists,
and certificates are found by testing every context subset directly.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from ks8.exact_linalg import ExactVector


def naive_octads(vectors: Sequence[ExactVector], size: int | None = None) -> set[frozenset[ExactVector]]:
    """Depth-first extension over sorted vectors, checking dot products directly."""
    vs = sorted(set(vectors))
    if not vs:
        return set()
    k = len(vs[0].components) if size is None else size
    out: set[frozenset[ExactVector]] = set()

    def dot(a: ExactVector, b: ExactVector) -> int:
        total = 0
        for x, y in zip(a.components, b.components):
            total += x * y
        return total

    def grow(chosen: list[ExactVector], start: int) -> None:
        if len(chosen) == k:
            out.add(frozenset(chosen))
            return
        for idx in range(start, len(vs)):
            cand = vs[idx]
            if all(dot(cand, c) == 0 for c in chosen):
                chosen.append(cand)
                grow(chosen, idx + 1)
                chosen.pop()

    grow([], 0)
    return out


def brute_force_certificates(contexts: Sequence[Sequence[object]], max_contexts: int) -> set[tuple[int, ...]]:
    """Every odd-size subset of contexts in which each member occurs an even number of times."""
    found = set()
    for r in range(1, max_contexts + 1, 2):
        for combo in itertools.combinations(range(len(contexts)), r):
            counts: dict[object, int] = {}
            for k in combo:
                for m in contexts[k]:
                    counts[m] = counts.get(m, 0) + 1
            if all(c % 2 == 0 for c in counts.values()):
                found.add(combo)
    return found


def brute_force_satisfiable(contexts: Sequence[Sequence[object]]) -> bool:
    """Try every 0/1 labelling of the members; feasible only for small instances."""
    members = sorted({m for ctx in contexts for m in ctx}, key=repr)
    if len(members) > 22:
        raise ValueError(f"{len(members)} members is too many for brute force")
    pos = {m: i for i, m in enumerate(members)}
    idx = [[pos[m] for m in ctx] for ctx in contexts]
    for bits in range(1 << len(members)):
        if all(sum(bits >> i & 1 for i in ctx) == 1 for ctx in idx):
            return True
    return False
