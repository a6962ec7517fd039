"""Incidence algebras of finite lattices and Möbius functions on INC(chi).

Two independent routes to the Möbius function are provided:

* :func:`moebius_direct` inverts the zeta function of an explicit lattice.
* :func:`moebius_inc` multiplies noncrossing Möbius values over the interval
  factorization of INC(chi); each noncrossing value is read off the block
  sizes of a Kreweras complement, with ``mu(0_k, 1_k) = (-1)^(k-1) Cat(k-1)``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Callable, Hashable, Sequence

import numpy as np

from .inc import NotIncError, factorize, is_inc
from .partitions import ColorMap, Partition, leq, one, restrict

__all__ = [
    "FiniteLattice",
    "IncidenceFunction",
    "delta",
    "zeta",
    "convolve",
    "moebius_direct",
    "catalan",
    "kreweras_complement",
    "moebius_nc",
    "moebius_inc",
    "moebius_block_product",
    "moebius_component_product",
]


class FiniteLattice:
    """A finite poset given by an element list and its order relation.

    The order is stored as a boolean matrix ``order[a, b] = (a <= b)``.
    """

    def __init__(self, elements: Sequence[Hashable], leq: Callable | None = None,
                 order: np.ndarray | None = None):
        self.elements = list(elements)
        self.index = {e: k for k, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("lattice elements must be distinct")
        n = len(self.elements)
        if order is None:
            if leq is None:
                raise ValueError("either leq or order is required")
            order = np.array([[bool(leq(a, b)) for b in self.elements] for a in self.elements],
                             dtype=bool).reshape(n, n)
        self.order = np.asarray(order, dtype=bool)
        if self.order.shape != (n, n):
            raise ValueError("order matrix has the wrong shape")

    @classmethod
    def of_partitions(cls, parts: Sequence[Partition]) -> "FiniteLattice":
        """Partitions ordered by reversed refinement (vectorized)."""
        parts = list(parts)
        if not parts:
            return cls([], order=np.zeros((0, 0), dtype=bool))
        ground = parts[0].ground
        pos = {g: i for i, g in enumerate(ground)}
        n = len(ground)
        same = np.zeros((len(parts), n * n), dtype=np.int64)
        for k, p in enumerate(parts):
            if p.ground != ground:
                raise ValueError("partitions live on different ground sets")
            lab = np.empty(n, dtype=np.int64)
            for j, b in enumerate(p.blocks):
                for x in b:
                    lab[pos[x]] = j
            same[k] = (lab[:, None] == lab[None, :]).ravel()
        # s <= p iff same(s) is contained in same(p)
        order = (same @ (1 - same).T) == 0
        return cls(parts, order=order)

    @classmethod
    def product(cls, *lattices: "FiniteLattice") -> "FiniteLattice":
        """Direct product with the componentwise order."""
        idx = list(itertools.product(*(range(len(L)) for L in lattices)))
        elements = [tuple(L.elements[i] for L, i in zip(lattices, t)) for t in idx]
        n = len(idx)
        order = np.ones((n, n), dtype=bool)
        arr = np.array(idx, dtype=np.int64).reshape(n, len(lattices))
        for c, L in enumerate(lattices):
            order &= L.order[arr[:, c][:, None], arr[:, c][None, :]]
        return cls(elements, order=order)

    def __len__(self):
        return len(self.elements)

    def leq(self, a, b) -> bool:
        return bool(self.order[self.index[a], self.index[b]])

    def pairs(self):
        """All comparable pairs ``(a, b)`` with ``a <= b``."""
        ai, bi = np.nonzero(self.order)
        return [(self.elements[i], self.elements[j]) for i, j in zip(ai, bi)]

    def interval(self, a, b) -> list:
        i, j = self.index[a], self.index[b]
        mask = self.order[i] & self.order[:, j]
        return [self.elements[k] for k in np.nonzero(mask)[0]]

    def linear_extension(self) -> np.ndarray:
        """Element indices sorted so that ``a < b`` implies a comes first."""
        return np.argsort(self.order.sum(axis=0), kind="stable")


class IncidenceFunction:
    """A function on the comparable pairs ``L^(2) = {(a, b) : a <= b}``."""

    def __init__(self, lattice: FiniteLattice, values: dict):
        self.lattice = lattice
        self.values = values

    def __call__(self, a, b):
        try:
            return self.values[(a, b)]
        except KeyError:
            if not self.lattice.leq(a, b):
                raise KeyError(f"({a!r}, {b!r}) is not a comparable pair") from None
            return 0

    def __eq__(self, other):
        if not isinstance(other, IncidenceFunction) or other.lattice is not self.lattice:
            return NotImplemented
        return all(self(a, b) == other(a, b) for a, b in self.lattice.pairs())

    def __repr__(self):
        return f"IncidenceFunction(<{len(self.values)} values on {len(self.lattice)} elements>)"


def delta(L: FiniteLattice) -> IncidenceFunction:
    return IncidenceFunction(L, {(a, a): 1 for a in L.elements})


def zeta(L: FiniteLattice) -> IncidenceFunction:
    return IncidenceFunction(L, {pair: 1 for pair in L.pairs()})


def convolve(f: IncidenceFunction, g: IncidenceFunction) -> IncidenceFunction:
    """``(f * g)(a, b) = sum over a <= c <= b of f(a, c) g(c, b)``."""
    if f.lattice is not g.lattice:
        raise ValueError("incidence functions live on different lattices")
    L = f.lattice
    out = {}
    for a, b in L.pairs():
        out[(a, b)] = sum((f(a, c) * g(c, b) for c in L.interval(a, b)), 0)
    return IncidenceFunction(L, out)


def moebius_direct(L: FiniteLattice) -> IncidenceFunction:
    """Möbius function by recursive inversion of zeta.

    ``mu(a, a) = 1`` and ``mu(a, b) = -sum_{a <= c < b} mu(a, c)``, evaluated
    along a linear extension. Values are integers.
    """
    n = len(L)
    lin = L.linear_extension()
    Z = L.order.astype(np.int64)
    rank = np.empty(n, dtype=np.int64)
    rank[lin] = np.arange(n)
    M = np.zeros((n, n), dtype=object)
    for a in range(n):
        row = np.zeros(n, dtype=np.int64)
        row[a] = 1
        ups = np.nonzero(L.order[a])[0]
        for b in ups[np.argsort(rank[ups], kind="stable")]:
            if b == a:
                continue
            # row[b] is still zero here, so the dot product sums over c < b
            row[b] = -int(row @ Z[:, b])
        M[a] = row
    values = {}
    for a in range(n):
        for b in np.nonzero(L.order[a])[0]:
            values[(L.elements[a], L.elements[b])] = int(M[a, b])
    return IncidenceFunction(L, values)


@lru_cache(maxsize=None)
def catalan(k: int) -> int:
    if k < 0:
        raise ValueError("negative index")
    return comb(2 * k, k) // (k + 1)


def _signed_catalan(k: int) -> int:
    """``mu_NC(0_k, 1_k)``."""
    return (-1) ** (k - 1) * catalan(k - 1)


def kreweras_complement(p: Partition) -> Partition:
    """Kreweras complement ``K(p) = p^{-1} gamma`` on the same ordered ground set.

    ``p`` is read as the permutation cycling each block in increasing order
    and ``gamma`` is the full cycle of the ground set.
    """
    ground = p.ground
    k = len(ground)
    pos = {g: i for i, g in enumerate(ground)}
    inv = [0] * k  # inverse block permutation on positions
    for b in p.blocks:
        idx = [pos[x] for x in b]
        for t, i in enumerate(idx):
            inv[i] = idx[t - 1]
    perm = [inv[(i + 1) % k] for i in range(k)]
    seen = [False] * k
    blocks = []
    for i in range(k):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(ground[j])
            j = perm[j]
        blocks.append(cyc)
    return Partition(blocks, ground)


@lru_cache(maxsize=65536)
def _mu_to_top(rgs: tuple[int, ...]) -> int:
    # mu_NC(s, 1) for s given by its growth string on [k]
    k = len(rgs)
    if k == 0:
        return 1  # empty-set convention
    p = Partition.from_labels(rgs)
    out = 1
    for b in kreweras_complement(p).blocks:
        out *= _signed_catalan(len(b))
    return out


def moebius_nc(sigma: Partition, pi: Partition) -> int:
    """Möbius function of the noncrossing lattice on ``sigma <= pi``.

    Factorizes over the blocks of ``pi``; each factor ``mu(sigma|V, 1_V)``
    comes from the Kreweras complement of ``sigma|V``.
    """
    if not leq(sigma, pi):
        raise ValueError(f"{sigma!r} is not below {pi!r}")
    sm = sigma.block_map()
    out = 1
    for v in pi.blocks:
        seen: dict[int, int] = {}
        rgs = tuple(seen.setdefault(sm[x], len(seen)) for x in v)
        out *= _mu_to_top(rgs)
    return out


def _check_inc_pair(sigma: Partition, pi: Partition, chi: ColorMap) -> None:
    for p in (sigma, pi):
        if not is_inc(p, chi):
            raise NotIncError(f"{p!r} is not interval-noncrossing for {chi!r}")
    if not leq(sigma, pi):
        raise ValueError(f"{sigma!r} is not below {pi!r}")


def moebius_inc(sigma: Partition, pi: Partition, chi: ColorMap) -> int:
    """Möbius function of INC(chi) as a product over the factorization components."""
    _check_inc_pair(sigma, pi, chi)
    fs = factorize(sigma, chi, check=False)
    fp = factorize(pi, chi, check=False)
    out = 1
    for s, p in zip(fs.components, fp.components):
        out *= moebius_nc(s, p)
    return out


def moebius_block_product(sigma: Partition, pi: Partition, chi: ColorMap) -> int:
    """``prod over blocks V of pi`` of ``mu_INC(sigma|V, 1_V)`` for the restricted coloring."""
    _check_inc_pair(sigma, pi, chi)
    out = 1
    for v in pi.blocks:
        out *= moebius_inc(restrict(sigma, v), one(v), chi.restrict(pi.ground, v))
    return out


def moebius_component_product(sigma: Partition, pi: Partition, chi: ColorMap) -> int:
    """Double product over blocks ``V`` of ``pi`` and components ``i``.

    Each factor is ``mu(sigma_i | W, 1_W)`` with ``W = V ∩ [l_{i-1}, l_i]``;
    an empty ``W`` contributes 1.
    """
    _check_inc_pair(sigma, pi, chi)
    fs = factorize(sigma, chi, check=False)
    out = 1
    for v in pi.blocks:
        vs = set(v)
        for comp in fs.components:
            w = [x for x in comp.ground if x in vs]
            if w:
                out *= moebius_nc(restrict(comp, w), one(w))
    return out

