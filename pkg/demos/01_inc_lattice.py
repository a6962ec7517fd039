"""Interval-noncrossing partitions: enumeration, factorization, Möbius values.

Run: python3 demos/01_inc_lattice.py
"""

from freeboolean import (
    ColorMap,
    FiniteLattice,
    Partition,
    enumerate_inc,
    factorize,
    moebius_direct,
    moebius_inc,
    one,
    zero,
)

print("1. Colorings interpolate between noncrossing and interval partitions.")
for colors in ["bbbbb", "bwbbb", "bwbwb", "wwwww"]:
    print(f"   χ = {colors}: |INC(χ)| = {len(enumerate_inc(ColorMap(colors)))}")
print("   all • gives Catalan(5) = 42, all ∘ gives 2^4 = 16.\n")

print("2. A partition is cut at the ∘ positions into noncrossing pieces.")
chi = ColorMap.from_white(10, {1, 3, 7, 8, 9, 10})
p = Partition([[1, 3, 4, 7], [2], [5, 6], [8, 9], [10]])
print(f"   χ = {chi.colors}, π = {p}")
for c in factorize(p, chi).components:
    print(f"     on {c.ground[0]}..{c.ground[-1]}: {c}")
print()

print("3. The Möbius function is the product of noncrossing Möbius values of the pieces.")
for colors in ["bbbb", "bwbb", "wwww"]:
    chi = ColorMap(colors)
    fast = moebius_inc(zero(4), one(4), chi)
    L = FiniteLattice.of_partitions(enumerate_inc(chi))
    slow = moebius_direct(L)(zero(4), one(4))
    print(f"   χ = {colors}: μ(0_4, 1_4) = {fast} (direct inversion of ζ: {slow})")
