"""Set partitions of ordered index sets, color maps and words.

Indices are 1-based. A :class:`Partition` stores its ground set explicitly,
so restricting to a subset keeps the original labels.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "SizeLimitError",
    "Partition",
    "ColorMap",
    "Letter",
    "Word",
    "size_guard",
    "iter_partitions",
    "enumerate_partitions",
    "iter_noncrossing",
    "is_noncrossing",
    "is_interval",
    "inner_blocks",
    "kernel",
    "leq",
    "restrict",
    "zero",
    "one",
]

DEFAULT_GUARD = 12


class SizeLimitError(ValueError):
    """Raised when an enumeration would exceed the configured size guard."""


def size_guard(guard: int | None = None) -> int:
    """Effective size guard; ``FB_MAX_N`` overrides the default of 12."""
    if guard is not None:
        return guard
    env = os.environ.get("FB_MAX_N")
    return int(env) if env else DEFAULT_GUARD


def _check_size(n: int, guard: int | None) -> None:
    limit = size_guard(guard)
    if n < 0:
        raise ValueError(f"size must be non-negative, got {n}")
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds the size guard {limit} (set FB_MAX_N to override)")


class Partition:
    """A partition of a finite ordered set of integers.

    Blocks are stored in canonical form: each block ascending, blocks sorted
    by their minimum. Two partitions are equal iff ground sets and canonical
    blocks agree.
    """

    __slots__ = ("blocks", "ground", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]], ground: Iterable[int] | None = None):
        canon = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else 0)
        seen: list[int] = []
        for b in canon:
            if not b:
                raise ValueError("partition blocks must be nonempty")
            seen.extend(b)
        if len(set(seen)) != len(seen):
            raise ValueError("partition blocks must be pairwise disjoint")
        union = tuple(sorted(seen))
        if ground is None:
            ground = union
        else:
            ground = tuple(sorted(ground))
            if ground != union:
                raise ValueError("union of blocks must equal the ground set")
        self.blocks: tuple[tuple[int, ...], ...] = tuple(canon)
        self.ground: tuple[int, ...] = ground
        self._hash = hash((self.blocks, self.ground))

    @classmethod
    def _trusted(cls, blocks, ground) -> "Partition":
        # caller guarantees canonical blocks and sorted ground
        p = object.__new__(cls)
        p.blocks = blocks
        p.ground = ground
        p._hash = hash((blocks, ground))
        return p

    @classmethod
    def from_labels(cls, labels: Sequence[int], ground: Sequence[int] | None = None) -> "Partition":
        """Build from block labels aligned with ``ground`` (default ``1..n``)."""
        if ground is None:
            ground = range(1, len(labels) + 1)
        ground = tuple(ground)
        groups: dict[int, list[int]] = {}
        for g, lab in zip(ground, labels):
            groups.setdefault(lab, []).append(g)
        return cls(groups.values(), ground)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.blocks == other.blocks and self.ground == other.ground

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Partition({{{inner}}})"

    @property
    def size(self) -> int:
        return len(self.ground)

    def block_map(self) -> dict[int, int]:
        """Map each ground element to the index of its block."""
        return {x: k for k, b in enumerate(self.blocks) for x in b}

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string along the ground order."""
        bm = self.block_map()
        return tuple(bm[g] for g in self.ground)

    def canonicalize(self) -> "Partition":
        return Partition(self.blocks, self.ground)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def zero(ground: int | Iterable[int]) -> Partition:
    """The all-singletons partition ``0_n`` (or of an explicit ground set)."""
    g = tuple(range(1, ground + 1)) if isinstance(ground, int) else tuple(sorted(ground))
    return Partition._trusted(tuple((x,) for x in g), g)


def one(ground: int | Iterable[int]) -> Partition:
    """The one-block partition ``1_n``; on the empty set this is the empty partition."""
    g = tuple(range(1, ground + 1)) if isinstance(ground, int) else tuple(sorted(ground))
    return Partition._trusted((g,) if g else (), g)


def _from_rgs(rgs: Sequence[int], ground: tuple[int, ...]) -> Partition:
    blocks: list[list[int]] = []
    for g, lab in zip(ground, rgs):
        if lab == len(blocks):
            blocks.append([g])
        else:
            blocks[lab].append(g)
    return Partition._trusted(tuple(tuple(b) for b in blocks), ground)


def iter_partitions(n: int, guard: int | None = None) -> Iterator[Partition]:
    """Yield all partitions of ``[n]`` in restricted-growth-string order."""
    _check_size(n, guard)
    ground = tuple(range(1, n + 1))
    if n == 0:
        yield Partition._trusted((), ())
        return
    a = [0] * n
    while True:
        yield _from_rgs(a, ground)
        k = n - 1
        while k > 0 and a[k] == max(a[:k]) + 1:
            k -= 1
        if k == 0:
            return
        a[k] += 1
        for j in range(k + 1, n):
            a[j] = 0


def enumerate_partitions(n: int, guard: int | None = None) -> list[Partition]:
    """All partitions of ``[n]`` in restricted-growth-string order.

    Parameters
    ----------
    n : int
        Size of the ground set ``{1, ..., n}``.
    guard : int, optional
        Size limit; defaults to 12 or the ``FB_MAX_N`` environment variable.

    Returns
    -------
    list of Partition
        ``Bell(n)`` partitions; ``n = 0`` gives the single empty partition.
    """
    return list(iter_partitions(n, guard))


def iter_noncrossing(n: int, guard: int | None = None) -> Iterator[Partition]:
    """Yield the noncrossing partitions of ``[n]`` in restricted-growth-string order.

    Backtracking over growth strings; a position may join an existing block
    only if every position since that block's last element lies in a block
    opened after it.
    """
    _check_size(n, guard)
    ground = tuple(range(1, n + 1))
    if n == 0:
        yield Partition._trusted((), ())
        return
    labels = [0] * n
    first: list[int] = []  # first position of each block
    last: list[int] = []   # current last position of each block

    def rec(k: int):
        if k == n:
            yield _from_rgs(labels, ground)
            return
        for b in range(len(first)):
            lb = last[b]
            ok = True
            for j in range(lb + 1, k):
                if first[labels[j]] < lb:
                    ok = False
                    break
            if not ok:
                continue
            labels[k] = b
            last[b] = k
            yield from rec(k + 1)
            last[b] = lb
        labels[k] = len(first)
        first.append(k)
        last.append(k)
        yield from rec(k + 1)
        first.pop()
        last.pop()

    yield from rec(0)


def is_noncrossing(p: Partition) -> bool:
    """True iff no two blocks cross (``s1 < r1 < s2 < r2`` pattern)."""
    bm = p.block_map()
    remaining = {k: len(b) for k, b in enumerate(p.blocks)}
    stack: list[int] = []
    for g in p.ground:
        k = bm[g]
        if remaining[k] < len(p.blocks[k]):
            if not stack or stack[-1] != k:
                return False
        else:
            stack.append(k)
        remaining[k] -= 1
        if remaining[k] == 0:
            stack.pop()
    return True


def is_interval(p: Partition) -> bool:
    """True iff every block is a run of consecutive ground elements."""
    pos = {g: i for i, g in enumerate(p.ground)}
    for b in p.blocks:
        if pos[b[-1]] - pos[b[0]] != len(b) - 1:
            return False
    return True


def inner_blocks(p: Partition) -> tuple[tuple[int, ...], ...]:
    """Blocks strictly nested between two elements of some other block."""
    out = []
    for v in p.blocks:
        for w in p.blocks:
            if w is not v and w[0] < v[0] and v[-1] < w[-1]:
                out.append(v)
                break
    return tuple(out)


def leq(s: Partition, p: Partition) -> bool:
    """Reversed refinement order: every block of ``s`` lies inside a block of ``p``."""
    if s.ground != p.ground:
        raise ValueError("partitions live on different ground sets")
    bm = p.block_map()
    for b in s.blocks:
        k = bm[b[0]]
        for x in b[1:]:
            if bm[x] != k:
                return False
    return True


def restrict(p: Partition, subset: Iterable[int]) -> Partition:
    """Restriction of ``p`` to ``subset``; labels are kept."""
    sub = tuple(sorted(set(subset)))
    sset = set(sub)
    if not sset.issubset(p.ground):
        raise ValueError("subset is not contained in the ground set")
    blocks = []
    for b in p.blocks:
        r = tuple(x for x in b if x in sset)
        if r:
            blocks.append(r)
    return Partition._trusted(tuple(blocks), sub)


_COLOR_ALIASES = {"b": "b", "w": "w", "•": "b", "∘": "w", "l": "b", "r": "w"}


class ColorMap:
    """A coloring ``[n] -> {•, ∘}`` stored as a string over ``"b"``/``"w"``.

    ``"w"`` (∘) marks right-face (Boolean) positions, ``"b"`` (•) left-face
    (free) positions. The unicode glyphs are accepted on input.
    """

    __slots__ = ("colors",)

    def __init__(self, colors: str | Sequence[str]):
        try:
            self.colors = "".join(_COLOR_ALIASES[c] for c in colors)
        except KeyError as exc:
            raise ValueError(f"invalid color {exc.args[0]!r}; use 'b' or 'w'") from None

    @classmethod
    def from_white(cls, n: int, white: Iterable[int]) -> "ColorMap":
        """Color map on ``[n]`` whose ∘ positions are ``white`` (1-based)."""
        ws = set(white)
        if not ws.issubset(range(1, n + 1)):
            raise ValueError("white positions out of range")
        return cls("".join("w" if k in ws else "b" for k in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.colors)

    def __len__(self):
        return len(self.colors)

    def __eq__(self, other):
        return isinstance(other, ColorMap) and self.colors == other.colors

    def __hash__(self):
        return hash(self.colors)

    def __repr__(self):
        return f"ColorMap({self.colors!r})"

    def white_positions(self) -> tuple[int, ...]:
        return tuple(k + 1 for k, c in enumerate(self.colors) if c == "w")

    def normalized(self) -> "ColorMap":
        """Same INC set, with both endpoints colored ∘."""
        if self.n == 0:
            return self
        if self.n == 1:
            return ColorMap("w")
        return ColorMap("w" + self.colors[1:-1] + "w")

    def on(self, ground: Sequence[int]) -> dict[int, str]:
        """Color of each element of ``ground`` (aligned by position)."""
        if len(ground) != self.n:
            raise ValueError(f"color map has length {self.n}, ground set has {len(ground)}")
        return dict(zip(ground, self.colors))

    def restrict(self, ground: Sequence[int], subset: Iterable[int]) -> "ColorMap":
        """Restriction to ``subset`` of a color map aligned with ``ground``."""
        cm = self.on(ground)
        return ColorMap("".join(cm[g] for g in sorted(subset)))


FACES = ("l", "r")


@dataclass(frozen=True)
class Letter:
    """A variable: identifier, family index and face (``"l"`` or ``"r"``)."""

    var: str
    family: object
    face: str

    def __post_init__(self):
        if self.face not in FACES:
            raise ValueError(f"face must be 'l' or 'r', got {self.face!r}")


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters."""

    letters: tuple[Letter, ...]

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def __str__(self):
        return " ".join(x.var for x in self.letters)

    @property
    def key(self) -> tuple[str, ...]:
        return tuple(x.var for x in self.letters)

    @property
    def colors(self) -> ColorMap:
        return ColorMap("".join("w" if x.face == "r" else "b" for x in self.letters))

    @property
    def families(self) -> tuple:
        return tuple(x.family for x in self.letters)

    def kernel(self) -> Partition:
        return kernel(self)

    def sub(self, positions: Iterable[int]) -> "Word":
        """Subword on the given 1-based positions, in original order."""
        return Word(tuple(self.letters[k - 1] for k in sorted(positions)))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)


def kernel(w: Word) -> Partition:
    """Partition of positions by equal family index."""
    fams = w.families
    groups: dict[object, list[int]] = {}
    for k, f in enumerate(fams, start=1):
        groups.setdefault(f, []).append(k)
    return Partition(groups.values(), range(1, len(fams) + 1))
