"""Truncated reduced free products of pointed spaces and operators on them.

Basis vectors are keys: ``()`` is the specified vector ξ, and an alternating
word ``((i_1, a_1), ..., (i_k, a_k))`` with ``i_j != i_{j+1}`` and
``1 <= a_j < dim_{i_j}`` is the tensor ``e_{i_1,a_1} ⊗ ... ⊗ e_{i_k,a_k}``.
Vectors are sparse dicts from keys to exact scalars. Operators act lazily
column by column; a column reaching past the truncation depth raises
:class:`DepthError` rather than being truncated.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .cumulants import MomentSpec, exact_sqrt, random_rational
from .partitions import Letter
from .scalars import parse_scalar, scalar_to_json, simplify

__all__ = [
    "DepthError",
    "BasisSizeError",
    "PointedSpace",
    "ReducedProductSpace",
    "build_reduced_product",
    "ModelOperator",
    "lambda_",
    "rho",
    "projection",
    "identity",
    "RECIPES",
    "Faces",
    "make_family",
    "vacuum_moment",
    "OperatorModel",
    "random_matrix",
    "random_model",
    "copy_sum_model",
]

DEFAULT_BASIS_GUARD = 1_000_000


class DepthError(RuntimeError):
    """An operator produced a tensor word longer than the truncation depth."""


class BasisSizeError(ValueError):
    """The truncated basis would exceed the configured size guard."""


@dataclass(frozen=True)
class PointedSpace:
    """``C^dim`` with specified vector e_0; the complement is spanned by e_1..e_{dim-1}."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")


def _add_into(acc: dict, vec: Mapping, c=1) -> None:
    for k, v in vec.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class ReducedProductSpace:
    """The reduced free product of pointed spaces, truncated at tensor length ``depth``.

    ``factors`` is a list (factor ids 1..k) or a mapping id -> dim/PointedSpace.
    ``order`` lists the factor ids from smallest to largest; it is used by
    the monotone projections and defaults to the sorted ids.
    """

    def __init__(self, factors, depth: int, order: Sequence | None = None,
                 guard: int = DEFAULT_BASIS_GUARD):
        if isinstance(factors, Mapping):
            items = list(factors.items())
        else:
            items = list(enumerate(factors, start=1))
        self.factors: dict = {}
        for i, f in items:
            self.factors[i] = f if isinstance(f, PointedSpace) else PointedSpace(int(f))
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.depth = depth
        self.order = list(order) if order is not None else sorted(self.factors)
        if sorted(self.order, key=repr) != sorted(self.factors, key=repr):
            raise ValueError("order must list every factor exactly once")
        self._rank = {i: k for k, i in enumerate(self.order)}
        if self.dimension() > guard:
            raise BasisSizeError(f"basis size {self.dimension()} exceeds guard {guard}")
        self._basis: list | None = None

    def dim(self, i) -> int:
        try:
            return self.factors[i].dim
        except KeyError:
            raise KeyError(f"unknown factor {i!r}") from None

    def rank(self, i) -> int:
        return self._rank[i]

    def dimension(self, depth: int | None = None) -> int:
        """``1 + sum over alternating index words of prod (dim - 1)``."""
        depth = self.depth if depth is None else depth
        ids = list(self.factors)
        last = {i: self.dim(i) - 1 for i in ids}
        total = 1
        for k in range(1, depth + 1):
            if k > 1:
                s = sum(last.values())
                last = {i: (self.dim(i) - 1) * (s - last[i]) for i in ids}
            total += sum(last.values())
        return total

    def _words(self, depth: int):
        yield ()
        frontier = [()]
        for _ in range(depth):
            nxt = []
            for w in frontier:
                prev = w[-1][0] if w else None
                for i in self.order:
                    if i == prev:
                        continue
                    for a in range(1, self.dim(i)):
                        nxt.append(w + ((i, a),))
            yield from nxt
            frontier = nxt

    def basis(self, depth: int | None = None) -> list:
        """Deterministic basis: by length, then factor order, then coordinate."""
        if depth is None or depth == self.depth:
            if self._basis is None:
                self._basis = list(self._words(self.depth))
            return self._basis
        return list(self._words(min(depth, self.depth)))

    def vacuum(self) -> dict:
        return {(): Fraction(1)}

    def __repr__(self):
        dims = {i: f.dim for i, f in self.factors.items()}
        return f"ReducedProductSpace({dims}, depth={self.depth})"


def build_reduced_product(factors, depth: int, order=None,
                          guard: int = DEFAULT_BASIS_GUARD) -> ReducedProductSpace:
    return ReducedProductSpace(factors, depth, order, guard)


class ModelOperator:
    """A linear operator on a truncated reduced product, given column by column."""

    def __init__(self, space: ReducedProductSpace, column: Callable[[tuple], dict], tag: str):
        self.space = space
        self._column = column
        self.tag = tag
        self._memo: dict = {}

    def col(self, u: tuple) -> dict:
        try:
            return self._memo[u]
        except KeyError:
            out = self._column(u)
            self._memo[u] = out
            return out

    def apply(self, vec: Mapping) -> dict:
        out: dict = {}
        for u, c in vec.items():
            _add_into(out, self.col(u), c)
        return out

    def _check(self, other):
        if not isinstance(other, ModelOperator):
            return NotImplemented
        if other.space is not self.space:
            raise ValueError("operators act on different spaces")
        return other

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ModelOperator(self.space, lambda u: self.apply(other.col(u)),
                             f"({self.tag})({other.tag})")

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented

        def column(u):
            out = dict(self.col(u))
            _add_into(out, other.col(u))
            return out

        return ModelOperator(self.space, column, f"{self.tag} + {other.tag}")

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-1) * other

    def __rmul__(self, c):
        if isinstance(c, ModelOperator):
            return NotImplemented
        c = parse_scalar(c) if isinstance(c, (str, dict)) else c
        if not c:
            return ModelOperator(self.space, lambda u: {}, f"0·{self.tag}")
        return ModelOperator(self.space, lambda u: {k: c * v for k, v in self.col(u).items()},
                             f"{c}·({self.tag})")

    __mul__ = __rmul__

    def matrix(self, domain_depth: int | None = None) -> np.ndarray:
        """Dense exact matrix: rows over the full basis, columns over words of
        length <= ``domain_depth`` (default: the space depth)."""
        rows = self.space.basis()
        cols = self.space.basis(domain_depth)
        index = {k: r for r, k in enumerate(rows)}
        M = np.full((len(rows), len(cols)), Fraction(0), dtype=object)
        for c, u in enumerate(cols):
            for k, v in self.col(u).items():
                M[index[k], c] = v
        return M

    def __repr__(self):
        return f"ModelOperator({self.tag})"


def _parse_matrix(T, dim: int) -> list[list]:
    rows = [[parse_scalar(x) for x in row] for row in T]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError(f"expected a {dim}x{dim} matrix")
    return rows


def _regular(space: ReducedProductSpace, i, T, side: str) -> ModelOperator:
    d = space.dim(i)
    M = _parse_matrix(T, d)
    depth = space.depth

    def column(u):
        out: dict = {}
        if side == "l":
            if u and u[0][0] == i:
                b, rest = u[0][1], u[1:]
                make = lambda a: ((i, a),) + rest  # noqa: E731
            else:
                b, rest = 0, u
                make = lambda a: ((i, a),) + u  # noqa: E731
        else:
            if u and u[-1][0] == i:
                b, rest = u[-1][1], u[:-1]
                make = lambda a: rest + ((i, a),)  # noqa: E731
            else:
                b, rest = 0, u
                make = lambda a: u + ((i, a),)  # noqa: E731
        if M[0][b]:
            out[rest] = M[0][b]
        for a in range(1, d):
            if M[a][b]:
                w = make(a)
                if len(w) > depth:
                    raise DepthError(f"{'λ' if side == 'l' else 'ρ'}_{i} maps a length-{len(u)} "
                                     f"word past depth {depth}")
                out[w] = M[a][b]
        return out

    name = "λ" if side == "l" else "ρ"
    return ModelOperator(space, column, f"{name}_{i}(T)")


def lambda_(space: ReducedProductSpace, i, T) -> ModelOperator:
    """Left regular representation: ``T`` acts on the leftmost tensor slot."""
    return _regular(space, i, T, "l")


def rho(space: ReducedProductSpace, i, T) -> ModelOperator:
    """Right regular representation: ``T`` acts on the rightmost tensor slot."""
    return _regular(space, i, T, "r")


def identity(space: ReducedProductSpace) -> ModelOperator:
    return ModelOperator(space, lambda u: {u: Fraction(1)}, "I")


_KIND_ALIASES = {
    "boolean": "boolean", "⊎": "boolean", "U": "boolean",
    "monotone": "monotone", "▷": "monotone", ">": "monotone",
    "antimonotone": "antimonotone", "◁": "antimonotone", "<": "antimonotone",
    "anti_left": "anti_left", "anti_right": "anti_right",
}


def _keeper(space: ReducedProductSpace, kind: str, i) -> Callable[[tuple], bool]:
    rank = space.rank
    if kind == "boolean":
        if i is None:
            return lambda u: len(u) <= 1
        return lambda u: not u or (len(u) == 1 and u[0][0] == i)
    if i is None:
        raise ValueError(f"the {kind} projection needs a factor index")
    ri = rank(i)
    if kind == "monotone":
        # ξ and strictly decreasing words whose first index is at most i
        return lambda u: not u or (rank(u[0][0]) <= ri and all(
            rank(x[0]) > rank(y[0]) for x, y in zip(u, u[1:])))
    if kind == "anti_left":
        # ξ and strictly increasing words whose first index is at least i
        return lambda u: not u or (rank(u[0][0]) >= ri and all(
            rank(x[0]) < rank(y[0]) for x, y in zip(u, u[1:])))
    if kind == "anti_right":
        # ξ and strictly decreasing words whose last index is at least i
        return lambda u: not u or (rank(u[-1][0]) >= ri and all(
            rank(x[0]) > rank(y[0]) for x, y in zip(u, u[1:])))
    # ξ and strictly increasing words whose last index is at most i
    return lambda u: not u or (rank(u[-1][0]) <= ri and all(
        rank(x[0]) < rank(y[0]) for x, y in zip(u, u[1:])))


def projection(space: ReducedProductSpace, kind: str, i=None) -> ModelOperator:
    """Coordinate projection onto a named subspace.

    * ``"boolean"`` (``⊎``) with ``i``: ξ and length-1 words in factor ``i``;
      without ``i``: ξ and all length-1 words.
    * ``"monotone"`` (``▷``): ξ and strictly decreasing words whose first
      index is at most ``i``.
    * ``"antimonotone"`` (``◁``): ξ and strictly increasing words whose last
      index is at most ``i``.
    * ``"anti_left"``: ξ and strictly increasing words whose first index is at
      least ``i`` (compressing ``λ_i`` onto it gives anti-monotone variables).
    * ``"anti_right"``: ξ and strictly decreasing words whose last index is at
      least ``i`` (compressing ``ρ_i`` onto it gives anti-monotone variables).

    ``▷`` with ``λ_i`` and ``◁`` with ``ρ_i`` give monotone variables.
    """
    try:
        kind = _KIND_ALIASES[kind]
    except KeyError:
        raise ValueError(f"unknown projection kind {kind!r}") from None
    if i is not None:
        space.dim(i)
    keep = _keeper(space, kind, i)
    op = ModelOperator(space, lambda u: {u: Fraction(1)} if keep(u) else {},
                       f"P_{kind}" + ("" if i is None else f",{i}"))
    op.keep = keep
    return op


def _compress(P: ModelOperator, A: ModelOperator) -> ModelOperator:
    keep = P.keep

    def column(u):
        if not keep(u):
            return {}
        return {k: v for k, v in A.col(u).items() if keep(k)}

    return ModelOperator(A.space, column, f"{P.tag} {A.tag} {P.tag}")


@dataclass(frozen=True)
class Faces:
    """The two represented faces of one factor: ``T -> operator`` maps."""

    left: Callable[[object], ModelOperator]
    right: Callable[[object], ModelOperator]


# recipe -> (left construction, right construction); each is (projection kind | None,
# which regular representation, projection index mode)
RECIPES = {
    "free": (("", "l"), ("", "l")),
    "boolean": (("boolean", "l"), ("boolean", "l")),
    "monotone": (("monotone", "l"), ("monotone", "l")),
    "antimonotone": (("anti_left", "l"), ("anti_left", "l")),
    "free_boolean": (("", "l"), ("boolean", "r")),
    "free_monotone": (("", "l"), ("antimonotone", "r")),
    "bi_monotone": (("monotone", "l"), ("antimonotone", "r")),
    "monotone_antimonotone": (("monotone", "l"), ("anti_right", "r")),
    "bi_free": (("", "l"), ("", "r")),
}


def _face_builder(space, i, kind: str, side: str):
    rep = lambda_ if side == "l" else rho
    if not kind:
        return lambda T: rep(space, i, T)
    P = projection(space, kind, i)
    return lambda T: _compress(P, rep(space, i, T))


def make_family(space: ReducedProductSpace, recipe: str) -> dict:
    """Per factor, the left and right face constructions of ``recipe``.

    ``free``/``boolean``/``monotone``/``antimonotone`` give the same
    (single-face) construction on both faces: ``λ_i``, ``P_{⊎,i} λ_i P_{⊎,i}``,
    ``P_{▷,i} λ_i P_{▷,i}`` and ``Q λ_i Q`` with ``Q`` the ``anti_left``
    projection. The two-faced recipes
    use ``P_i λ_i P_i`` on the left and ``Q_i ρ_i Q_i`` on the right with
    ``(P_i, Q_i)`` = ``(I, P_{⊎,i})`` (free_boolean), ``(I, P_{◁,i})``
    (free_monotone), ``(P_{▷,i}, P_{◁,i})`` (bi_monotone),
    ``(P_{▷,i}, anti_right)`` (monotone_antimonotone) or ``(I, I)`` (bi_free).
    """
    try:
        (lk, ls), (rk, rs) = RECIPES[recipe]
    except KeyError:
        raise ValueError(f"unknown recipe {recipe!r}; choose from {sorted(RECIPES)}") from None
    return {i: Faces(_face_builder(space, i, lk, ls), _face_builder(space, i, rk, rs))
            for i in space.factors}


def vacuum_moment(space: ReducedProductSpace, ops: Sequence[ModelOperator]):
    """ξ-coefficient of ``op_1 ... op_n ξ``."""
    vec = space.vacuum()
    for op in reversed(list(ops)):
        vec = op.apply(vec)
    return simplify(vec.get((), Fraction(0)))


class OperatorModel:
    """Named variables realized as operators on one reduced product space.

    ``variables`` maps a :class:`Letter` to its operator. Moments of words
    are memoized through the vectors ``w ξ`` of their suffixes.
    """

    def __init__(self, space: ReducedProductSpace, variables: Mapping[Letter, ModelOperator],
                 meta: dict | None = None):
        self.space = space
        self.variables = dict(variables)
        self.letters = {x.var: x for x in self.variables}
        self.ops = {x.var: op for x, op in self.variables.items()}
        self.meta = meta or {}
        self._vecs: dict = {(): space.vacuum()}

    def vector(self, key: tuple) -> dict:
        """``z_1 ... z_n ξ`` for the word with variable ids ``key``."""
        key = tuple(key)
        try:
            return self._vecs[key]
        except KeyError:
            pass
        vec = self.ops[key[0]].apply(self.vector(key[1:]))
        self._vecs[key] = vec
        return vec

    def moment(self, key) -> object:
        if isinstance(key, str):
            key = tuple(key.split())
        return simplify(self.vector(tuple(key)).get((), Fraction(0)))

    def spec(self) -> MomentSpec:
        """Lazy moment spec of all variables."""
        return MomentSpec(self.letters.values(), None, self.moment)

    def pair_specs(self) -> dict:
        """Lazy moment spec per family (the pair marginals)."""
        fams: dict = {}
        for x in self.letters.values():
            fams.setdefault(x.family, []).append(x)
        return {f: MomentSpec(xs, None, self.moment) for f, xs in fams.items()}

    def words(self, length: int):
        """All words of the given length over the variables, in a fixed order."""
        ids = list(self.letters)
        return [tuple(p) for p in itertools.product(ids, repeat=length)]

    # -- JSON ------------------------------------------------------------------

    @classmethod
    def from_json(cls, data: Mapping) -> "OperatorModel":
        """Build from the model JSON format.

        ``{"factors": [{"dim": 2}, ...], "depth": 6, "order": [1, 2],
        "operators": {"1": {"T_a": [["1/2", "0"], ...]}}, "recipe": "free_boolean",
        "vars": [{"id": "a1", "factor": 1, "face": "l", "op": "T_a"}]}``.
        Factors are numbered from 1. Without ``vars`` every operator of
        factor i gets a left variable ``<op>@<i>``.
        """
        dims = [int(f["dim"]) for f in data["factors"]]
        order = data.get("order")
        space = ReducedProductSpace(dims, int(data["depth"]), order)
        recipe = data.get("recipe", "free_boolean")
        fam = make_family(space, recipe)
        mats = {int(i): {name: _parse_matrix(T, space.dim(int(i))) for name, T in ops.items()}
                for i, ops in data.get("operators", {}).items()}
        var_items = data.get("vars")
        if var_items is None:
            var_items = [{"id": f"{name}@{i}", "factor": i, "face": "l", "op": name}
                         for i in sorted(mats) for name in mats[i]]
        variables = {}
        for v in var_items:
            i = int(v["factor"])
            T = mats[i][v["op"]]
            face = v.get("face", "l")
            op = fam[i].left(T) if face == "l" else fam[i].right(T)
            variables[Letter(str(v["id"]), i, face)] = op
        meta = {"factors": [{"dim": d} for d in dims], "depth": space.depth,
                "order": space.order, "recipe": recipe,
                "operators": {str(i): {n: [[scalar_to_json(x) for x in row] for row in T]
                                       for n, T in ops.items()} for i, ops in mats.items()},
                "vars": [dict(v) for v in var_items]}
        return cls(space, variables, meta)

    def to_json(self) -> dict:
        if not self.meta:
            raise ValueError("this model was not built from a serializable description")
        return self.meta


def random_matrix(rng: random.Random, dim: int, bound: int = 9, centered: bool = False) -> list:
    """Random ``dim x dim`` rational matrix; ``centered`` zeroes the (0, 0) entry."""
    M = [[random_rational(rng, bound) for _ in range(dim)] for _ in range(dim)]
    if centered:
        M[0][0] = Fraction(0)
    return M


def random_model(rng: random.Random, n_factors: int = 2, dims: Sequence[int] = (2, 3),
                 recipe: str = "free_boolean", depth: int = 6,
                 left: int = 1, right: int = 1, bound: int = 9) -> OperatorModel:
    """Seeded random model: per factor ``i``, left variables ``a{i}``, ``a{i}'``...
    and right variables ``b{i}``, ``b{i}'``... with random rational matrices."""
    dl = [rng.choice(list(dims)) for _ in range(n_factors)]
    data = {"factors": [{"dim": d} for d in dl], "depth": depth, "recipe": recipe,
            "operators": {}, "vars": []}
    for i, d in enumerate(dl, start=1):
        ops = {}
        for face, count, stem in (("l", left, "a"), ("r", right, "b")):
            for k in range(count):
                name = f"{stem}{i}" + "'" * k
                ops[f"T_{name}"] = [[scalar_to_json(x) for x in row]
                                    for row in random_matrix(rng, d, bound)]
                data["vars"].append({"id": name, "factor": i, "face": face, "op": f"T_{name}"})
        data["operators"][str(i)] = ops
    return OperatorModel.from_json(data)


def copy_sum_model(left: Mapping[str, object], right: Mapping[str, object], N: int,
                   recipe: str = "free_boolean", depth: int = 4) -> OperatorModel:
    """Normalized sums of ``N`` independent copies of one pair.

    ``left``/``right`` map variable ids to matrices on a common pointed space.
    Each variable becomes ``N^(-1/2) * sum over copies n of`` its operator on
    factor ``n``; all variables share family 1. ``N`` must be a perfect square.
    """
    r = exact_sqrt(N)
    mats = {v: [[parse_scalar(x) for x in row] for row in T] for v, T in {**left, **right}.items()}
    dim = len(next(iter(mats.values())))
    space = ReducedProductSpace([dim] * N, depth)
    fam = make_family(space, recipe)
    variables = {}
    for v, T in mats.items():
        face = "l" if v in left else "r"
        build = (lambda i, T=T: fam[i].left(T)) if face == "l" else (lambda i, T=T: fam[i].right(T))
        total = build(1)
        for i in range(2, N + 1):
            total = total + build(i)
        variables[Letter(v, 1, face)] = Fraction(1, r) * total
    return OperatorModel(space, variables)
