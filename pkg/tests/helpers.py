"""Brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools

from freeboolean import Partition


def all_partitions_bruteforce(n: int) -> set[Partition]:
    """Every set partition of [n] via label assignments (Bell(n) distinct results)."""
    if n == 0:
        return {Partition([], [])}
    out = set()
    for labels in itertools.product(range(n), repeat=n):
        out.add(Partition.from_labels(labels))
    return out


def crosses_bruteforce(p: Partition) -> bool:
    """Literal search for a < b < c < d with a, c in one block and b, d in another."""
    bm = p.block_map()
    g = p.ground
    for a, b, c, d in itertools.combinations(g, 4):
        if bm[a] == bm[c] and bm[b] == bm[d] and bm[a] != bm[b]:
            return True
    return False


def inner_bruteforce(p: Partition, white: set[int]) -> bool:
    """True iff some ∘ element lies in a block nested strictly inside another block."""
    for v in p.blocks:
        for w in p.blocks:
            if v != w and any(a < min(v) and max(v) < b for a, b in itertools.combinations(w, 2)):
                if white & set(v):
                    return True
    return False


def catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)
