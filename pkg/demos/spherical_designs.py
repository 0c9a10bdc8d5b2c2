"""Weighted spherical designs and the tensor view of l2 -> l4 isometries.

The sphere average delta_{n,2k} of |<x,y>|^(2k) has a closed rational
form; any weighted point set obeys sum tau_i tau_j |<x_i,x_j>|^(2k)
>= delta (Sidelnikov), with equality exactly for weighted 2k-designs.
A matrix giving an exact l2 -> l4 isometry converts, row by row, into a
weighted 4-design with zero defect.
"""

import numpy as np

from ripforge.constructors import golomb_stacked
from ripforge.designs import (EpsilonChain, WeightedPointSet, delta_closed_form,
                              delta_monte_carlo, design_defect, matrix_to_design,
                              tensor_defect_explicit)

print("Closed form vs Monte Carlo (200k samples):")
for n, k, field in ((2, 1, "real"), (3, 2, "real"), (3, 2, "complex"),
                    (4, 3, "complex")):
    exact = delta_closed_form(n, k, field)
    est, se = delta_monte_carlo(n, k, field, samples=200_000, seed=0)
    print(f"  n={n} k={k} {field:>7}:  exact {exact:.6f}   MC {est:.6f} "
          f"(+- {se:.6f})")

print()
print("Design defects (zero iff a weighted 2k-design):")
basis = WeightedPointSet(np.eye(3, dtype=complex), np.ones(3) / 3)
print(f"  orthonormal basis of C^3, k=1:   {design_defect(basis, 1):+.2e}  "
      "(a tight 2-design)")
single = WeightedPointSet(np.array([[1.0, 0.0, 0.0]]), np.array([1.0]))
print(f"  a single point, k=2:             {design_defect(single, 2):+.2e}  "
      f"(= 1 - delta = {1 - delta_closed_form(3, 2, 'real'):.2f})")

for p in (3, 5):
    ps, total = matrix_to_design(golomb_stacked(p), k=2)
    print(f"  rows of the stacked matrix p={p}: {design_defect(ps, 2):+.2e}  "
          f"(exact l4 isometry -> 4-design;  S = {total:.1f} = p(p+1)/2)")

print()
print("At k = 1 the moment matrix is small enough to materialize, giving an")
print("independent check of the Gram-sum identity:")
rng = np.random.default_rng(3)
pts = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
pts /= np.linalg.norm(pts, axis=1)[:, None]
w = rng.random(5)
ps = WeightedPointSet(pts, w / w.sum())
print(f"  explicit ||sum tau x x* - I/n||_F^2 = {tensor_defect_explicit(ps):.6f}")
print(f"  Gram-sum defect                     = {design_defect(ps, 1):.6f}")

print()
print("Error conversions between the embedding and design views:")
chain = EpsilonChain.from_defect(0.04, n=3, k=2, field="complex")
print(f"  design defect eps2 = {chain.eps2}  ->  tensor deviation eps3 = "
      f"{chain.eps3}  ->  embedding error eps1 = {chain.eps1:.3f}")
