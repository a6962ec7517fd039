"""Interval-noncrossing partitions INC(chi) and their factorization.

For a color map with ∘-positions ``1 = l_0 < l_1 < ... < l_m = n`` (after
coloring both endpoints ∘), restriction to the overlapping intervals
``[l_{i-1}, l_i]`` is an order isomorphism from INC(chi) onto the product of
the noncrossing lattices of those intervals. Meets and joins are computed
through this isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .partitions import (
    ColorMap,
    Partition,
    _check_size,
    is_noncrossing,
    iter_noncrossing,
    leq,
    restrict,
)

__all__ = [
    "NotIncError",
    "IncFactorization",
    "is_inc",
    "enumerate_inc",
    "enumerate_nc",
    "color_points",
    "factorize",
    "unfactorize",
    "meet",
    "join",
    "nc_meet",
    "nc_join",
    "interval_below",
]


class NotIncError(ValueError):
    """A partition is not interval-noncrossing for the given color map."""


def _white_set(p: Partition, chi: ColorMap) -> set[int]:
    cm = chi.on(p.ground)
    return {g for g, c in cm.items() if c == "w"}


def is_inc(p: Partition, chi: ColorMap) -> bool:
    """Noncrossing, and no ∘-colored element lies in an inner block."""
    if p.size != chi.n:
        raise ValueError(f"partition has {p.size} elements, color map has length {chi.n}")
    if not is_noncrossing(p):
        return False
    white = _white_set(p, chi)
    if not white:
        return True
    for v in p.blocks:
        if white.isdisjoint(v):
            continue
        lo, hi = v[0], v[-1]
        for w in p.blocks:
            if w[0] < lo and hi < w[-1]:
                return False
    return True


@lru_cache(maxsize=None)
def _nc_rgs(n: int) -> tuple[Partition, ...]:
    return tuple(iter_noncrossing(n, guard=max(n, 0)))


@lru_cache(maxsize=4096)
def _inc_cached(colors: str) -> tuple[Partition, ...]:
    n = len(colors)
    chi = ColorMap(colors)
    return tuple(p for p in _nc_rgs(n) if is_inc(p, chi))


def enumerate_inc(chi: ColorMap, guard: int | None = None) -> list[Partition]:
    """All of INC(chi) on ``[n]``, in restricted-growth-string order."""
    _check_size(chi.n, guard)
    return list(_inc_cached(chi.normalized().colors))


def _relabel(p: Partition, ground: Sequence[int]) -> Partition:
    """Move a partition of ``[k]`` onto the ordered ``ground`` of size k."""
    ground = tuple(ground)
    return Partition._trusted(tuple(tuple(ground[x - 1] for x in b) for b in p.blocks), ground)


def enumerate_nc(ground: Sequence[int]) -> list[Partition]:
    """Noncrossing partitions of an arbitrary finite ordered ground set."""
    ground = tuple(sorted(ground))
    return [_relabel(p, ground) for p in _nc_rgs(len(ground))]


@dataclass(frozen=True)
class IncFactorization:
    """Components ``alpha_i(pi)`` on the overlapping intervals ``[l_{i-1}, l_i]``."""

    components: tuple[Partition, ...]
    points: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.components)

    def to_json(self) -> list[dict]:
        return [{"ground": list(c.ground), "blocks": c.to_json()} for c in self.components]


def color_points(ground: Sequence[int], chi: ColorMap) -> tuple[int, ...]:
    """Ground elements colored ∘ after coloring both endpoints ∘."""
    ground = tuple(ground)
    norm = chi.normalized()
    if len(ground) != norm.n:
        raise ValueError(f"color map has length {norm.n}, ground set has {len(ground)}")
    return tuple(g for g, c in zip(ground, norm.colors) if c == "w")


def _segments(ground: tuple[int, ...], points: tuple[int, ...]) -> list[tuple[int, ...]]:
    if len(points) <= 1:
        return [ground]
    pos = {g: i for i, g in enumerate(ground)}
    return [ground[pos[a]:pos[b] + 1] for a, b in zip(points, points[1:])]


def factorize(p: Partition, chi: ColorMap, check: bool = True) -> IncFactorization:
    """Restrictions of ``p`` to the intervals between consecutive ∘-points.

    Raises
    ------
    NotIncError
        If ``p`` is not in INC(chi).
    """
    if check and not is_inc(p, chi):
        raise NotIncError(f"{p!r} is not interval-noncrossing for {chi!r}")
    points = color_points(p.ground, chi)
    comps = tuple(restrict(p, seg) for seg in _segments(p.ground, points))
    return IncFactorization(comps, points)


def unfactorize(f: IncFactorization) -> Partition:
    """Glue components along their shared endpoints."""
    comps = f.components
    for c in comps:
        if not is_noncrossing(c):
            raise NotIncError(f"component {c!r} is not noncrossing")
    for a, b in zip(comps, comps[1:]):
        if a.ground[-1] != b.ground[0]:
            raise ValueError("consecutive components must share exactly their common endpoint")
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in comps:
        for g in c.ground:
            parent.setdefault(g, g)
    for c in comps:
        for blk in c.blocks:
            r = find(blk[0])
            for x in blk[1:]:
                rx = find(x)
                if rx != r:
                    parent[rx] = r
    groups: dict[int, list[int]] = {}
    for g in parent:
        groups.setdefault(find(g), []).append(g)
    return Partition(groups.values(), parent.keys())


def nc_meet(a: Partition, b: Partition) -> Partition:
    """Meet in the noncrossing lattice: the common refinement."""
    if a.ground != b.ground:
        raise ValueError("partitions live on different ground sets")
    bm = b.block_map()
    blocks = []
    for blk in a.blocks:
        groups: dict[int, list[int]] = {}
        for x in blk:
            groups.setdefault(bm[x], []).append(x)
        blocks.extend(groups.values())
    return Partition(blocks, a.ground)


def _crosses(v: tuple[int, ...], w: tuple[int, ...]) -> bool:
    # blocks are sorted; look for v_i < w_j < v_k < w_l or the mirror pattern
    merged = sorted([(x, 0) for x in v] + [(x, 1) for x in w])
    tags = [t for _, t in merged]
    # collapse runs; a crossing needs at least 4 alternations
    runs = [k for k, _ in itertools.groupby(tags)]
    return len(runs) >= 4


def nc_join(a: Partition, b: Partition) -> Partition:
    """Join in the noncrossing lattice.

    The partition-lattice join, followed by merging crossing block pairs
    until no crossing remains.
    """
    if a.ground != b.ground:
        raise ValueError("partitions live on different ground sets")
    parent = {g: g for g in a.ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for blk in a.blocks + b.blocks:
        for x in blk[1:]:
            union(blk[0], x)
    while True:
        groups: dict[int, list[int]] = {}
        for g in a.ground:
            groups.setdefault(find(g), []).append(g)
        blocks = [tuple(v) for v in groups.values()]
        merged = False
        for v, w in itertools.combinations(blocks, 2):
            if _crosses(v, w):
                union(v[0], w[0])
                merged = True
                break
        if not merged:
            return Partition(blocks, a.ground)


def _check_pair(a: Partition, b: Partition, chi: ColorMap) -> None:
    for p in (a, b):
        if not is_inc(p, chi):
            raise NotIncError(f"{p!r} is not interval-noncrossing for {chi!r}")


def meet(a: Partition, b: Partition, chi: ColorMap) -> Partition:
    """Greatest lower bound in INC(chi), computed componentwise."""
    _check_pair(a, b, chi)
    fa, fb = factorize(a, chi, check=False), factorize(b, chi, check=False)
    comps = tuple(nc_meet(x, y) for x, y in zip(fa.components, fb.components))
    return unfactorize(IncFactorization(comps, fa.points))


def join(a: Partition, b: Partition, chi: ColorMap) -> Partition:
    """Least upper bound in INC(chi), computed componentwise."""
    _check_pair(a, b, chi)
    fa, fb = factorize(a, chi, check=False), factorize(b, chi, check=False)
    comps = tuple(nc_join(x, y) for x, y in zip(fa.components, fb.components))
    return unfactorize(IncFactorization(comps, fa.points))


def interval_below(p: Partition, chi: ColorMap) -> list[Partition]:
    """All sigma in INC(chi) with sigma <= p.

    Built as a product over the blocks ``V`` of ``p`` of INC(chi restricted
    to V); the result is sorted in restricted-growth-string order.
    """
    if not is_inc(p, chi):
        raise NotIncError(f"{p!r} is not interval-noncrossing for {chi!r}")
    per_block = []
    for v in p.blocks:
        sub = chi.restrict(p.ground, v)
        per_block.append([_relabel(q, v) for q in _inc_cached(sub.normalized().colors)])
    out = []
    for combo in itertools.product(*per_block):
        blocks = sorted((b for q in combo for b in q.blocks), key=lambda b: b[0])
        out.append(Partition._trusted(tuple(blocks), p.ground))
    out.sort(key=lambda q: q.rgs())
    return out
