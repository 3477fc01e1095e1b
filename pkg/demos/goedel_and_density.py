#!/usr/bin/env python3
"""Walk through the Goedel numbering and language densities.

Every bit string maps to a unique positive integer by prepending a 1 and
reading binary; walking the integers therefore enumerates all words.  The
density of a language counts its members along that enumeration, and for
value languages in minimal form the count is pinned between d * x**(1/beta)
and sqrt(x).
"""

from owflab.languages import SQ, density_csv_rows, intersect, power_oracle
from owflab.words import gn_of_integer, goedel_inverse, goedel_number

print("The first twelve Goedel indices and their words:")
for idx in range(1, 13):
    w = goedel_inverse(idx)
    member = "  <- square" if SQ.member(w) else ""
    print(f"  gn={idx:>3}  word={w!r:>8}  (round-trip {goedel_number(w)}){member}")

print("\ngn of an integer y keeps y <= gn(y) <= 5y:")
for y in (1, 4, 9, 100, 2**10, 10**6):
    g = gn_of_integer(y)
    print(f"  y={y:>8}  gn={g:>8}  ratio={g / y:.3f}")

print("\nSquare density every decade, with its claimed bounds:")
rows = list(density_csv_rows(SQ, 10_000))
for x in (10, 100, 1000, 10_000):
    _, dens, lower, upper = rows[x - 1]
    print(f"  x={x:>6}  dens={dens:>4}  lower={lower:8.2f}  upper={upper:8.2f}")

print("\nCubes are sparser (beta = 3):")
cube = power_oracle(3)
rows = list(density_csv_rows(cube, 10_000))
for x in (10, 100, 1000, 10_000):
    _, dens, lower, upper = rows[x - 1]
    print(f"  x={x:>6}  dens={dens:>4}  lower={lower:8.2f}  upper={upper:8.2f}")

print("\nIntersections only thin a language out:")
sq_and_cube = intersect(SQ, cube)  # sixth powers
rows = list(density_csv_rows(sq_and_cube, 10_000))
for x in (100, 10_000):
    _, dens, _, _ = rows[x - 1]
    print(f"  x={x:>6}  dens(squares & cubes)={dens}")
