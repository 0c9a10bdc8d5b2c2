"""Coherence of the deterministic families, against their provable bounds.

Coherence mu(A) is the largest inner product between distinct unit
columns.  Small coherence certifies restricted isometry at quadratic
measurement cost through delta_s < s mu, checked here exactly by
enumerating all s x s column Gram blocks.
"""

import numpy as np

from ripforge.certify import coherence, exact_ric
from ripforge.constructors import alltop, devore, weil

print(f"{'matrix':>14} {'shape':>12} {'coherence':>12} {'bound':>10} "
      f"{'delta_2':>10} {'2*mu':>8}")

for m in (5, 7, 11):
    mat = alltop(m)
    mu = coherence(mat)
    print(f"{'alltop(' + str(m) + ')':>14} {str(mat.data.shape):>12} {mu:12.6f} "
          f"{1 / np.sqrt(m):10.6f} {exact_ric(mat, 2):10.6f} {2 * mu:8.4f}")

for p, d in ((3, 1), (5, 2), (7, 2)):
    mat = weil(p, d)
    mu = coherence(mat)
    print(f"{f'weil({p},{d})':>14} {str(mat.data.shape):>12} {mu:12.6f} "
          f"{d / np.sqrt(p):10.6f} {exact_ric(mat, 2):10.6f} {2 * mu:8.4f}")

for p, d in ((3, 2), (5, 2)):
    mat = devore(p, d)
    mu = coherence(mat)
    print(f"{f'devore({p},{d})':>14} {str(mat.data.shape):>12} {mu:12.6f} "
          f"{d / p:10.6f} {exact_ric(mat, 2):10.6f} {2 * mu:8.4f}")

print()
print("Notes:")
print(" * alltop hits its bound exactly: every pair of distinct columns has")
print("   inner product of modulus 1/sqrt(m) or 0.")
print(" * weil/devore meet their bounds with equality on worst-case pairs;")
print("   the bound follows from character sums (weil) or root counting (devore).")
print(" * delta_2 always stays below 2 mu, the coherence route to the RIP.")
