"""Truncated full Fock space and the two-faced central-limit family.

Basis vectors are tuples of indices in ``range(hdim)``: ``()`` is the vacuum
ξ and ``(a_1, ..., a_k)`` is ``e_{a_1} ⊗ ... ⊗ e_{a_k}``. The creation
operator is ``ℓ(h) u = h ⊗ u`` and its annihilation partner is
``ℓ*(g) ξ = 0``, ``ℓ*(g)(e_a ⊗ w) = conj(g_a) w``, so that
``<ℓ*(g) ℓ(h) ξ, ξ> = <h, g>`` with the pairing conjugate-linear in the
second slot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .inc import enumerate_inc
from .operators import DepthError, ModelOperator, OperatorModel
from .partitions import Letter, Word
from .scalars import conj, parse_scalar, scalar_to_json, simplify

__all__ = [
    "FockSpace",
    "creation",
    "annihilation",
    "vacuum_projection",
    "pairing",
    "FockCLT",
    "fock_clt_family",
    "clt_moment_oracle",
    "fock_from_json",
]


class FockSpace:
    """``Cξ ⊕ H ⊕ ... ⊕ H^{⊗depth}`` for ``H = C^hdim``."""

    def __init__(self, hdim: int, depth: int):
        if hdim < 1:
            raise ValueError("hdim must be positive")
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.hdim = hdim
        self.depth = depth
        self._basis: list | None = None

    def basis(self, depth: int | None = None) -> list:
        depth = self.depth if depth is None else min(depth, self.depth)
        words = [()]
        for k in range(1, depth + 1):
            words.extend(itertools.product(range(self.hdim), repeat=k))
        return words

    def dimension(self) -> int:
        return sum(self.hdim ** k for k in range(self.depth + 1))

    def vacuum(self) -> dict:
        return {(): Fraction(1)}


def _vector(v: Sequence, hdim: int) -> list:
    vec = [parse_scalar(x) for x in v]
    if len(vec) != hdim:
        raise ValueError(f"vector has length {len(vec)}, expected {hdim}")
    return vec


def creation(space: FockSpace, h: Sequence) -> ModelOperator:
    """``ℓ(h) u = h ⊗ u``."""
    h = _vector(h, space.hdim)

    def column(u):
        if not any(h):
            return {}
        if len(u) + 1 > space.depth:
            raise DepthError(f"ℓ(h) maps a length-{len(u)} word past depth {space.depth}")
        return {(a,) + u: h[a] for a in range(space.hdim) if h[a]}

    return ModelOperator(space, column, "ℓ(h)")


def annihilation(space: FockSpace, g: Sequence) -> ModelOperator:
    """``ℓ*(g) ξ = 0`` and ``ℓ*(g)(e_a ⊗ w) = conj(g_a) w``."""
    g = _vector(g, space.hdim)

    def column(u):
        if not u:
            return {}
        c = conj(g[u[0]])
        return {u[1:]: c} if c else {}

    return ModelOperator(space, column, "ℓ*(g)")


def vacuum_projection(space: FockSpace) -> ModelOperator:
    """Projection ``P`` onto ``Cξ ⊕ H``."""
    op = ModelOperator(space, lambda u: {u: Fraction(1)} if len(u) <= 1 else {}, "P")
    op.keep = lambda u: len(u) <= 1
    return op


def pairing(h: Sequence, g: Sequence):
    """``<h, g> = sum_a h_a conj(g_a)``."""
    return simplify(sum((x * conj(y) for x, y in zip(h, g)), Fraction(0)))


@dataclass
class FockCLT:
    """The central-limit family: operators, covariance and the model wrapper."""

    space: FockSpace
    model: OperatorModel
    covariance: dict  # (k, l) -> C_{k,l}
    left: tuple
    right: tuple


def fock_clt_family(hdim: int, h: Mapping, hstar: Mapping, I: Sequence, J: Sequence,
                    depth: int = 6) -> FockCLT:
    """Left variables ``z_i = ℓ(h(i)) + ℓ*(h*(i))`` for ``i ∈ I`` and right variables
    ``z_j = P(ℓ(h(j)) + ℓ*(h*(j)))P`` for ``j ∈ J``; ``C_{k,l} = <h(l), h*(k)>``.

    Variable ids are ``str(k)``; all variables belong to family 1.
    """
    space = FockSpace(hdim, depth)
    labels = [str(k) for k in I] + [str(k) for k in J]
    if len(set(labels)) != len(labels):
        raise ValueError("left and right index sets must be disjoint")
    hv = {str(k): _vector(v, hdim) for k, v in h.items()}
    hs = {str(k): _vector(v, hdim) for k, v in hstar.items()}
    for k in labels:
        if k not in hv or k not in hs:
            raise ValueError(f"missing h or h* vector for index {k}")
    P = vacuum_projection(space)
    variables = {}
    for k in labels:
        z = creation(space, hv[k]) + annihilation(space, hs[k])
        if k in map(str, I):
            variables[Letter(k, 1, "l")] = z
        else:
            variables[Letter(k, 1, "r")] = P @ z @ P
    C = {(k, l): pairing(hv[l], hs[k]) for k in labels for l in labels}
    meta = {"hdim": hdim, "depth": depth,
            "h": {k: [scalar_to_json(x) for x in hv[k]] for k in labels},
            "hstar": {k: [scalar_to_json(x) for x in hs[k]] for k in labels},
            "I": [str(k) for k in I], "J": [str(k) for k in J]}
    model = OperatorModel(space, variables, meta)
    return FockCLT(space, model, C, tuple(map(str, I)), tuple(map(str, J)))


def fock_from_json(data: Mapping, depth: int | None = None) -> FockCLT:
    """Build from ``{"hdim", "h", "hstar", "I", "J"}`` (optional ``"depth"``)."""
    d = depth if depth is not None else int(data.get("depth", 6))
    return fock_clt_family(int(data["hdim"]), data["h"], data["hstar"], data["I"], data["J"], d)


def clt_moment_oracle(C: Mapping, w: Word):
    """``sum over pair partitions π ∈ INC(χ_w) of prod_{(a<b)∈π} C_{w_a, w_b}``.

    Independent of any operator: enumerates INC(χ) and keeps the pairings.
    """
    key = w.key
    total = Fraction(0)
    for p in enumerate_inc(w.colors):
        if any(len(b) != 2 for b in p.blocks):
            continue
        term = Fraction(1)
        for a, b in p.blocks:
            term = term * C[(key[a - 1], key[b - 1])]
        total = total + term
    return simplify(total)
