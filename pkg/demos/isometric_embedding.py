"""An exact linear isometry from l2^p into l4^(m+p).

Stacking the Golomb-ruler phase matrix over a scaled identity,

    M = [ (2m)^(-1/4) A ; 2^(-1/4) I_p ],      m = 6p^2 - 6p + 1,

gives ||Mx||_4 = ||x||_2 for every complex x -- distortion exactly one,
not merely close to one.  The mechanism: the phase matrix has exactly
orthogonal columns (so ||Ax||_2^2 = m ||x||_2^2) and all of its
fourth-order column products vanish (so ||Ax||_4^4 = 2m ||x||_2^4
- m ||x||_4^4); the identity block then cancels the residual ||x||_4 term.
"""

import numpy as np

from ripforge.constructors import golomb_phase, golomb_stacked
from ripforge.matrix_core import norm

rng = np.random.default_rng(0)

for p in (3, 5, 7):
    stacked = golomb_stacked(p)
    phase = golomb_phase(p)
    m = phase.rows
    worst = 0.0
    for _ in range(2000):
        x = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        worst = max(worst, abs(norm(stacked.data @ x, 4) - norm(x, 2)) / norm(x, 2))
    print(f"p = {p}: M is {stacked.rows} x {p},  "
          f"max | ||Mx||_4 - ||x||_2 | / ||x||_2 over 2000 draws = {worst:.2e}")

print()
print("The two ingredients, shown for p = 5:")
p = 5
phase = golomb_phase(p)
m = phase.rows
gram = phase.data.conj().T @ phase.data
print(f"  column Gram deviation from {m} I: {np.abs(gram - m * np.eye(p)).max():.2e}")

x = rng.standard_normal(p) + 1j * rng.standard_normal(p)
lhs = norm(phase.data @ x, 4) ** 4
rhs = 2 * m * norm(x, 2) ** 4 - m * norm(x, 4) ** 4
print(f"  ||Ax||_4^4 = 2m||x||_2^4 - m||x||_4^4 up to {abs(lhs - rhs):.2e}")
