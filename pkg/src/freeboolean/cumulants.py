"""Moment functionals, free-Boolean cumulants and the mixed-moment algorithms.

Words are sequences of :class:`~freeboolean.partitions.Letter`; a word's
color map marks right-face letters ∘ and left-face letters •. Moments are
looked up by the tuple of variable ids, with the empty word mapped to 1.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .inc import NotIncError, enumerate_inc, interval_below, is_inc
from .incidence import moebius_inc
from .partitions import ColorMap, Letter, Partition, Word, leq, one
from .scalars import parse_scalar, scalar_to_json, simplify

__all__ = [
    "MissingMomentError",
    "MomentSpec",
    "CumulantTable",
    "PairDistribution",
    "phi_pi",
    "kappa",
    "moments_from_cumulants",
    "predicted_moment_star",
    "evaluate_moment_recursive",
    "factor_word",
    "is_boolean_product",
    "check_combinatorial_independence",
    "check_moment_conditions",
    "convolve_distributions",
    "clt_cumulant_scaling",
    "exact_sqrt",
    "random_rational",
    "random_moment_spec",
    "tensor_spec",
    "IndependenceReport",
    "ConditionReport",
]

Key = tuple  # tuple of variable ids


class MissingMomentError(KeyError):
    """A moment needed by a computation is not defined by the spec."""


def _key_from_text(text: str) -> Key:
    return tuple(text.split())


def _key_text(key: Key) -> str:
    return " ".join(key)


class MomentSpec:
    """A partial moment functional on words over a fixed alphabet.

    Values come from an explicit table and, for keys not in it, from an
    optional ``source`` callable (memoized). The empty word has moment 1.
    Queries for undefined words raise :class:`MissingMomentError`.
    """

    def __init__(self, letters: Iterable[Letter], moments: Mapping | None = None,
                 source: Callable[[Key], object] | None = None):
        self.letters: dict[str, Letter] = {}
        for x in letters:
            if x.var in self.letters and self.letters[x.var] != x:
                raise ValueError(f"variable {x.var!r} declared twice")
            self.letters[x.var] = x
        self._values: dict[Key, object] = {}
        for k, v in (moments or {}).items():
            key = _key_from_text(k) if isinstance(k, str) else tuple(k)
            self._check_key(key)
            val = parse_scalar(v)
            if key == () and val != 1:
                raise ValueError("the empty word must have moment 1")
            self._values[key] = val
        self._values[()] = Fraction(1)
        self._source = source
        self._memo: dict[Key, object] = {}
        self._kappa: dict[Key, object] = {}

    def _check_key(self, key: Key) -> None:
        for v in key:
            if v not in self.letters:
                raise ValueError(f"unknown variable {v!r}")

    def value(self, key: Key):
        key = tuple(key)
        try:
            return self._values[key]
        except KeyError:
            pass
        if self._source is None:
            raise MissingMomentError(f"moment of '{_key_text(key)}' is not defined")
        try:
            return self._memo[key]
        except KeyError:
            self._check_key(key)
            val = self._source(key)
            self._memo[key] = val
            return val

    def __call__(self, w: Word):
        return self.value(w.key)

    def has(self, key: Key) -> bool:
        try:
            self.value(key)
        except MissingMomentError:
            return False
        return True

    def word(self, ids: str | Sequence[str]) -> Word:
        """The word spelled by space-separated (or listed) variable ids."""
        key = _key_from_text(ids) if isinstance(ids, str) else tuple(ids)
        self._check_key(key)
        return Word(tuple(self.letters[v] for v in key))

    def keys(self) -> list[Key]:
        """Explicitly tabulated keys (excluding the empty word)."""
        return sorted((k for k in self._values if k), key=lambda k: (len(k), k))

    def with_value(self, key: Key | str, value) -> "MomentSpec":
        """A copy with one moment overridden (used for injected-defect checks)."""
        key = _key_from_text(key) if isinstance(key, str) else tuple(key)
        vals = dict(self._values)
        vals[key] = parse_scalar(value)
        vals.pop((), None)
        base = self

        def source(k):
            return base.value(k)

        return MomentSpec(self.letters.values(), vals, source if self._source else None)

    def tabulate(self, keys: Iterable[Key]) -> "MomentSpec":
        """An explicit spec holding the values of ``keys`` and all their subwords."""
        vals = {}
        for key in keys:
            for r in range(1, len(key) + 1):
                for pos in itertools.combinations(range(len(key)), r):
                    sub = tuple(key[i] for i in pos)
                    if sub not in vals:
                        vals[sub] = self.value(sub)
        return MomentSpec(self.letters.values(), vals)

    # -- JSON ---------------------------------------------------------------

    @staticmethod
    def letters_from_json(items) -> list[Letter]:
        return [Letter(str(d["id"]), d["family"], d["face"]) for d in items]

    @staticmethod
    def letters_to_json(letters: Iterable[Letter]) -> list[dict]:
        return [{"id": x.var, "family": x.family, "face": x.face} for x in letters]

    @classmethod
    def from_json(cls, data: Mapping) -> "MomentSpec":
        return cls(cls.letters_from_json(data["vars"]), data.get("moments", {}))

    def to_json(self) -> dict:
        return {
            "vars": self.letters_to_json(self.letters.values()),
            "moments": {_key_text(k): scalar_to_json(self._values[k]) for k in self.keys()},
        }

    def __repr__(self):
        return f"MomentSpec(<{len(self.letters)} vars, {len(self._values) - 1} moments>)"


@dataclass
class PairDistribution:
    """The joint law of one pair of faces: a moment spec on one family's letters."""

    family: object
    spec: MomentSpec

    def __post_init__(self):
        for x in self.spec.letters.values():
            if x.family != self.family:
                raise ValueError(f"letter {x.var!r} belongs to family {x.family!r}, "
                                 f"not {self.family!r}")


# -- moment functionals ------------------------------------------------------


def _blocks_value(lookup, key: Key, blocks) -> object:
    out = Fraction(1)
    for b in blocks:
        out = out * lookup(tuple(key[i - 1] for i in b))
    return out


def _check_word_partition(w: Word, p: Partition) -> None:
    if p.ground != tuple(range(1, len(w) + 1)):
        raise ValueError(f"partition ground {p.ground} does not index a word of length {len(w)}")


def phi_pi(m: MomentSpec, w: Word, p: Partition, rng: random.Random | None = None):
    """Multiplicative extension ``phi_pi`` by stripping interval blocks.

    Repeatedly removes a block that is an interval of the remaining positions
    and multiplies by the moment of the corresponding subword. With ``rng``
    the interval block to strip is chosen at random; the result does not
    depend on that choice.

    Raises
    ------
    ValueError
        If ``p`` is crossing (stripping gets stuck).
    """
    _check_word_partition(w, p)
    remaining = list(p.ground)
    blocks = [tuple(b) for b in p.blocks]
    out = Fraction(1)
    while blocks:
        pos = {x: k for k, x in enumerate(remaining)}
        candidates = [b for b in blocks if pos[b[-1]] - pos[b[0]] == len(b) - 1]
        if not candidates:
            raise ValueError(f"{p!r} has no interval block to strip; it is crossing")
        b = rng.choice(candidates) if rng is not None else candidates[0]
        out = out * m(w.sub(b))
        blocks.remove(b)
        remaining = [x for x in remaining if x not in b]
    return simplify(out)


@lru_cache(maxsize=4096)
def _mobius_row_top(colors: str) -> tuple[tuple[tuple[tuple[int, ...], ...], int], ...]:
    # (blocks of sigma, mu(sigma, 1_n)) for sigma in INC(colors)
    chi = ColorMap(colors)
    n = len(colors)
    top = one(n)
    return tuple((s.blocks, moebius_inc(s, top, chi)) for s in enumerate_inc(chi, guard=n))


def _kappa_top(m: MomentSpec, key: Key):
    try:
        return m._kappa[key]
    except KeyError:
        pass
    colors = "".join("w" if m.letters[v].face == "r" else "b" for v in key)
    total = Fraction(0)
    for blocks, mu in _mobius_row_top(colors):
        total = total + mu * _blocks_value(m.value, key, blocks)
    total = simplify(total)
    m._kappa[key] = total
    return total


def kappa(m: MomentSpec, w: Word, p: Partition | None = None):
    """Free-Boolean cumulant ``kappa_{chi_w, p}(w)``.

    The Möbius-weighted sum over ``sigma <= p`` in INC(chi_w) of ``phi_sigma``;
    ``p`` defaults to ``1_n``.
    """
    n = len(w)
    if n == 0:
        raise ValueError("cumulants are defined for nonempty words")
    chi = w.colors
    if p is None or p == one(n):
        _check_word_partition(w, one(n))
        return _kappa_top(m, w.key)
    _check_word_partition(w, p)
    if not is_inc(p, chi):
        raise NotIncError(f"{p!r} is not interval-noncrossing for {chi!r}")
    total = Fraction(0)
    for s in interval_below(p, chi):
        total = total + moebius_inc(s, p, chi) * _blocks_value(m.value, w.key, s.blocks)
    return simplify(total)


class CumulantTable:
    """Free-Boolean cumulants ``kappa(word, 1)``, extended multiplicatively.

    Entries come from an explicit table and an optional ``source`` callable.
    """

    def __init__(self, letters: Iterable[Letter], cumulants: Mapping | None = None,
                 source: Callable[[Key], object] | None = None):
        self._spec = MomentSpec(letters, None, None)
        self.letters = self._spec.letters
        self._values: dict[Key, object] = {}
        for k, v in (cumulants or {}).items():
            key = _key_from_text(k) if isinstance(k, str) else tuple(k)
            if not key:
                raise ValueError("cumulants are defined for nonempty words")
            self._spec._check_key(key)
            self._values[key] = parse_scalar(v)
        self._source = source
        self._memo: dict[Key, object] = {}

    @classmethod
    def from_moments(cls, m: MomentSpec, keys: Iterable[Key] | None = None) -> "CumulantTable":
        """Cumulants of ``m``; explicit for ``keys`` (default: all tabulated words)."""
        keys = m.keys() if keys is None else [tuple(k) for k in keys]
        table = {k: _kappa_top(m, k) for k in keys}
        return cls(m.letters.values(), table, source=lambda k: _kappa_top(m, k))

    def value(self, key: Key):
        key = tuple(key)
        try:
            return self._values[key]
        except KeyError:
            pass
        if self._source is None:
            raise MissingMomentError(f"cumulant of '{_key_text(key)}' is not defined")
        try:
            return self._memo[key]
        except KeyError:
            val = self._source(key)
            self._memo[key] = val
            return val

    def word(self, ids) -> Word:
        return self._spec.word(ids)

    def entry(self, w: Word, p: Partition | None = None):
        """``kappa(w, p) = prod over blocks V of p of kappa(w|V, 1_V)``."""
        if p is None:
            return self.value(w.key)
        _check_word_partition(w, p)
        return simplify(_blocks_value(self.value, w.key, p.blocks))

    def keys(self) -> list[Key]:
        return sorted(self._values, key=lambda k: (len(k), k))

    @classmethod
    def from_json(cls, data: Mapping) -> "CumulantTable":
        return cls(MomentSpec.letters_from_json(data["vars"]), data.get("cumulants", {}))

    def to_json(self) -> dict:
        return {
            "vars": MomentSpec.letters_to_json(self.letters.values()),
            "cumulants": {_key_text(k): scalar_to_json(self._values[k]) for k in self.keys()},
        }


def moments_from_cumulants(c: CumulantTable, w: Word):
    """``phi(w) = sum over pi in INC(chi_w) of kappa_pi(w)``."""
    if len(w) == 0:
        return Fraction(1)
    total = Fraction(0)
    for p in enumerate_inc(w.colors):
        total = total + _blocks_value(c.value, w.key, p.blocks)
    return simplify(total)


def moments_spec_from_cumulants(c: CumulantTable, keys: Iterable[Key] | None = None) -> MomentSpec:
    """Explicit moment spec on ``keys`` (default: the tabulated cumulant words)."""
    keys = c.keys() if keys is None else [tuple(k) for k in keys]
    return MomentSpec(c.letters.values(), {k: moments_from_cumulants(c, c.word(k)) for k in keys})


# -- free-Boolean products of pairs -------------------------------------------


def _pair_lookup(pairs) -> Callable[[Key], object]:
    """Normalize the accepted pair inputs to a key -> moment function."""
    if isinstance(pairs, MomentSpec):
        return pairs.value
    if isinstance(pairs, Mapping):
        pairs = [PairDistribution(f, s) if isinstance(s, MomentSpec) else s
                 for f, s in pairs.items()]
    owner: dict[str, MomentSpec] = {}
    for pd in pairs:
        for v in pd.spec.letters:
            if v in owner:
                raise ValueError(f"variable {v!r} occurs in two pairs")
            owner[v] = pd.spec

    def lookup(key: Key):
        if not key:
            return Fraction(1)
        try:
            spec = owner[key[0]]
        except KeyError:
            raise MissingMomentError(f"no pair defines variable {key[0]!r}") from None
        return spec.value(key)

    return lookup


@lru_cache(maxsize=4096)
def _star_coefficients(colors: str, eps_rgs: tuple[int, ...]):
    # sigma -> sum_{pi in INC, sigma <= pi <= eps} mu(sigma, pi), nonzero entries only
    chi = ColorMap(colors)
    n = len(colors)
    eps = Partition.from_labels(eps_rgs)
    coef: dict[Partition, int] = {}
    for p in enumerate_inc(chi, guard=n):
        if not leq(p, eps):
            continue
        for s in interval_below(p, chi):
            coef[s] = coef.get(s, 0) + moebius_inc(s, p, chi)
    return tuple((s.blocks, c) for s, c in sorted(coef.items(), key=lambda t: t[0].rgs()) if c)


def predicted_moment_star(pairs, w: Word):
    """Mixed moment from the pair marginals via the Möbius-weighted expansion over INC(chi).

    ``phi(w) = sum over sigma in INC(chi) of
    (sum over pi in INC(chi) with sigma <= pi <= ker w of mu(sigma, pi)) phi_sigma``.
    """
    if len(w) == 0:
        return Fraction(1)
    lookup = _pair_lookup(pairs)
    total = Fraction(0)
    for blocks, c in _star_coefficients(w.colors.colors, w.kernel().rgs()):
        total = total + c * _blocks_value(lookup, w.key, blocks)
    return simplify(total)


def factor_word(w: Word | Sequence[Letter]) -> list[tuple[Letter, ...]]:
    """Maximal single-family factors ``Z_1 ... Z_m`` of a word."""
    return [tuple(g) for _, g in itertools.groupby(tuple(w), key=lambda x: x.family)]


def is_boolean_product(z: Sequence[Letter]) -> bool:
    """A single-family product is Boolean iff it contains a right-face letter."""
    return any(x.face == "r" for x in z)


def evaluate_moment_recursive(pairs, w: Word, memo: dict | None = None):
    """Mixed moment by the recursion through Boolean products and centering.

    With ``w = Z_1 ... Z_m`` factored into maximal single-family products:
    if ``m = 1`` the pair moment is returned; if every ``Z_k`` is a Boolean
    product the moment factorizes; otherwise every non-Boolean ``Z_k`` is
    centered, the fully centered term vanishes, and expanding
    ``Z = phi(Z) + Z°`` expresses ``phi(w)`` through strictly shorter words:
    ``phi(w) = -sum over nonempty S ⊆ N of (-1)^|S| prod_{k in S} phi(Z_k) phi(w without S)``.
    """
    lookup = _pair_lookup(pairs)
    memo = {} if memo is None else memo

    def rec(letters: tuple[Letter, ...]):
        key = tuple(x.var for x in letters)
        if key in memo:
            return memo[key]
        factors = factor_word(letters)
        if len(factors) <= 1:
            val = lookup(key)
        else:
            fk = [tuple(x.var for x in z) for z in factors]
            if all(is_boolean_product(z) for z in factors):
                val = Fraction(1)
                for k in fk:
                    val = val * lookup(k)
            else:
                free = [k for k, z in enumerate(factors) if not is_boolean_product(z)]
                val = Fraction(0)
                for r in range(1, len(free) + 1):
                    for S in itertools.combinations(free, r):
                        coeff = Fraction((-1) ** (r + 1))
                        for k in S:
                            coeff = coeff * lookup(fk[k])
                        if not coeff:
                            continue
                        rest = tuple(x for k, z in enumerate(factors) if k not in S for x in z)
                        val = val + coeff * rec(rest)
        val = simplify(val)
        memo[key] = val
        return val

    return rec(tuple(w))


# -- checkers ----------------------------------------------------------------


@dataclass
class IndependenceReport:
    """Mixed words whose top cumulant is nonzero."""

    checked: int = 0
    violations: list[tuple[Word, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def minimal(self) -> tuple[Word, object] | None:
        if not self.violations:
            return None
        return min(self.violations, key=lambda t: (len(t[0]), t[0].key))


def check_combinatorial_independence(m: MomentSpec, words: Iterable[Word]) -> IndependenceReport:
    """Report every mixed word (non-constant family sequence) with ``kappa(w, 1) != 0``."""
    rep = IndependenceReport()
    for w in words:
        if len(set(w.families)) <= 1:
            continue
        rep.checked += 1
        k = kappa(m, w)
        if k != 0:
            rep.violations.append((w, k))
    return rep


@dataclass
class ConditionViolation:
    word: Word
    kind: str  # "boolean" or "centered"
    run: tuple[int, int] | None
    lhs: object
    rhs: object


@dataclass
class ConditionReport:
    checked: int = 0
    violations: list[ConditionViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def minimal(self) -> ConditionViolation | None:
        if not self.violations:
            return None
        return min(self.violations, key=lambda v: (len(v.word), v.word.key))


def _nonboolean_runs(factors) -> list[tuple[int, int]]:
    runs = []
    k = 0
    while k < len(factors):
        if is_boolean_product(factors[k]):
            k += 1
            continue
        start = k
        while k + 1 < len(factors) and not is_boolean_product(factors[k + 1]):
            k += 1
        runs.append((start, k))
        k += 1
    return runs


def check_moment_conditions(m: MomentSpec, words: Iterable[Word]) -> ConditionReport:
    """Check the two moment conditions characterizing free-Boolean pairs.

    For ``w = Z_1 ... Z_m`` (maximal single-family products, ``m >= 2``):

    * if all ``Z_k`` are Boolean products, ``phi(w) = prod phi(Z_k)``;
    * for each maximal run ``Z_{l1} ... Z_{l2}`` of non-Boolean products, the
      moment with that run centered vanishes, i.e.
      ``sum over S ⊆ run of (-1)^|S| prod_{k in S} phi(Z_k) phi(w without S) = 0``.
    """
    rep = ConditionReport()
    for w in words:
        factors = factor_word(w)
        if len(factors) < 2:
            continue
        fk = [tuple(x.var for x in z) for z in factors]
        rep.checked += 1
        lhs = m.value(w.key)
        if all(is_boolean_product(z) for z in factors):
            rhs = Fraction(1)
            for k in fk:
                rhs = rhs * m.value(k)
            if lhs != rhs:
                rep.violations.append(ConditionViolation(w, "boolean", None, lhs, simplify(rhs)))
            continue
        for l1, l2 in _nonboolean_runs(factors):
            run = range(l1, l2 + 1)
            total = Fraction(0)
            for r in range(0, len(run) + 1):
                for S in itertools.combinations(run, r):
                    coeff = Fraction((-1) ** r)
                    for k in S:
                        coeff = coeff * m.value(fk[k])
                    if not coeff:
                        continue
                    rest = tuple(v for k in range(len(fk)) if k not in S for v in fk[k])
                    total = total + coeff * m.value(rest)
            if total != 0:
                rep.violations.append(
                    ConditionViolation(w, "centered", (l1 + 1, l2 + 1), simplify(total), 0))
    return rep


# -- convolution and CLT scaling ------------------------------------------------


def convolve_distributions(a: MomentSpec, b: MomentSpec, w: Word):
    """Moment of ``w`` for the sum of free-Boolean independent copies with laws a and b.

    Cumulants add, ``kappa = kappa_a + kappa_b``, and the moment is rebuilt
    with :func:`moments_from_cumulants`.
    """
    if a.letters != b.letters:
        raise ValueError("the two distributions must share the same alphabet")
    table = CumulantTable(a.letters.values(),
                          source=lambda k: simplify(_kappa_top(a, k) + _kappa_top(b, k)))
    return moments_from_cumulants(table, w)


def exact_sqrt(N: int) -> int:
    r = int(round(N ** 0.5))
    while r * r > N:
        r -= 1
    while (r + 1) * (r + 1) <= N:
        r += 1
    if r * r != N:
        raise ValueError(f"N={N} is not a perfect square")
    return r


def clt_cumulant_scaling(m: MomentSpec, N: int, w: Word):
    """``kappa(S_N-word) = N^(1 - n/2) kappa(z-word)`` for ``S_N = N^(-1/2) sum of N copies``.

    Uses multilinearity of cumulants and vanishing of mixed cumulants
    between the independent copies. ``N`` must be a perfect square so the
    result stays rational.
    """
    if N < 1:
        raise ValueError("N must be positive")
    r = exact_sqrt(N)
    n = len(w)
    return simplify(Fraction(N) / Fraction(r) ** n * kappa(m, w))


# -- generators ----------------------------------------------------------------


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    """A small random rational with numerator and denominator bounded by ``bound``."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_moment_spec(rng: random.Random, n: int, families: Sequence = (1, 2, 3),
                       faces: Sequence[str] = ("l", "r")) -> tuple[MomentSpec, Word]:
    """Random moments on every subword of a word of ``n`` distinct variables."""
    letters = [Letter(f"x{k}", rng.choice(list(families)), rng.choice(list(faces)))
               for k in range(1, n + 1)]
    key = tuple(x.var for x in letters)
    vals = {}
    for r in range(1, n + 1):
        for pos in itertools.combinations(range(n), r):
            vals[tuple(key[i] for i in pos)] = random_rational(rng)
    spec = MomentSpec(letters, vals)
    return spec, Word(tuple(letters))


def tensor_spec(letters: Sequence[Letter], moments: Mapping[str, Sequence]) -> MomentSpec:
    """Classically independent commuting variables.

    ``moments[var][k]`` is the k-th moment of ``var`` (index 0 must be 1);
    a word's moment is the product over variables of the moment of the
    number of occurrences.
    """
    seqs = {v: [parse_scalar(x) for x in s] for v, s in moments.items()}

    def source(key):
        out = Fraction(1)
        for v in set(key):
            k = key.count(v)
            try:
                out = out * seqs[v][k]
            except (KeyError, IndexError):
                raise MissingMomentError(f"moment {k} of {v!r} is not given") from None
        return out

    return MomentSpec(letters, None, source)
