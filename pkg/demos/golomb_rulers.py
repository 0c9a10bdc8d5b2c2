"""Quadratic-residue Golomb rulers: construction, verification, density.

A Golomb ruler places integer marks so that every ordered pairwise
difference is distinct.  The construction used throughout this library is
g(k) = 2pk + (k^2 mod p) for a prime p >= 3, which fits p marks into
[0, q-1] with q = 3p(p-1)+1 -- a quadratic range, which is optimal up to
the constant because p(p-1) distinct differences must fit in (-q, q).
"""

import numpy as np

from ripforge.golomb import build_ruler, verify_ruler

for p in (3, 5, 7):
    ruler = build_ruler(p)
    print(f"p = {p}:  marks = {ruler.marks},  range bound q = {ruler.q}")
    diffs = sorted(a - b for a in ruler.marks for b in ruler.marks if a != b)
    print(f"        {len(diffs)} ordered differences, "
          f"{len(set(diffs))} distinct -> ruler: {verify_ruler(ruler.marks)}")

print()
print("A set that is NOT a ruler: [0, 1, 2] has 1-0 == 2-1 ->",
      verify_ruler([0, 1, 2]))

print()
print("Density check: the ruler needs ~3p^2 range against the p(p-1) lower bound")
for p in (11, 31, 101):
    ruler = build_ruler(p)
    min_q = p * (p - 1) // 2 + 1   # smallest q with 2q-1 >= p(p-1)
    print(f"  p = {p:4d}:  q = {ruler.q:7d},  minimum feasible q = {min_q:7d},  "
          f"ratio = {ruler.q / min_q:.2f}")

# the same marks drive the harmonic phase matrix: j*g(k) mod m phases with
# m = 2q-1 rows make the columns exactly orthogonal
p = 5
ruler = build_ruler(p)
m = 2 * ruler.q - 1
print()
print(f"For p = {p} the phase matrix has m = 2q-1 = {m} rows; mark differences")
print("stay inside (-m, m) and are never zero, so every column inner product is")
print("a full geometric sum equal to zero:")
offsets = {(marks := ruler.marks)[k] - marks[kp] for k in range(p)
           for kp in range(p) if k != kp}
print(f"  differences mod m all nonzero: {all(d % m != 0 for d in offsets)}")
