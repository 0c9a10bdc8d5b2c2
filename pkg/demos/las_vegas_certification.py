"""Quasideterministic sign matrices: draw, certify, repeat until certified.

A +-1 matrix whose pair sums and quadruple column sums all stay below
kappa sqrt(m) embeds s-sparse vectors from l2 into l1 with explicit
two-sided constants.  Random draws satisfy both conditions with failure
probability at most 1/N^2 + 1/12 <= 1/3 at kappa = sqrt(8 ln N), so
redrawing gives a certified matrix after very few rounds -- and the
certificate, being an exact integer computation, is unconditional.
"""

import numpy as np

from ripforge.certify import (certify_sign_matrix, default_kappa, las_vegas,
                              probe_l1, theorem1_bound)

m, n = 64, 16
kappa = default_kappa(n)
print(f"Target: {m} x {n} sign matrix, kappa = sqrt(8 ln {n}) = {kappa:.4f}, "
      f"threshold kappa sqrt(m) = {kappa * np.sqrt(m):.2f}")

mat, rounds = las_vegas(m, n, seed=42)
report = certify_sign_matrix(mat)
print(f"certified in {rounds} round(s): max pair sum {report.max_pair_sum}, "
      f"max quadruple sum {report.max_quad_sum}")
print(f"round seeds derive from the master seed: {mat.meta['derive']}")

print()
print("Scaling up to a provable embedding envelope: N = 32, s = 2, delta = 0.5")
kappa = default_kappa(32)
bound = theorem1_bound(kappa, delta=0.5, s=2)
print(f"  required rows m = ceil(kappa^2 delta^-2 s^4) = {bound.m_required}")
print(f"  certified constants per row count: alpha = {bound.alpha:.4f}, "
      f"beta = {bound.beta:.4f}, distortion <= {bound.distortion_bound:.3f}")

mat, rounds = las_vegas(bound.m_required, 32, kappa=kappa, seed=7)
print(f"  certified in {rounds} round(s)")

probe = probe_l1(mat, 2, trials=2000, seed=1)
lo, hi = bound.alpha * mat.rows, bound.beta * mat.rows
print(f"  sampled 2-sparse l1/l2 ratios: [{probe.min_ratio:.1f}, {probe.max_ratio:.1f}]")
print(f"  proven envelope:               [{lo:.1f}, {hi:.1f}]")
print("  every sample must land inside the envelope:",
      lo <= probe.min_ratio and probe.max_ratio <= hi)
