"""
Decay of the smallest stretch along a ray
=========================================

For diagonalizable ad the smallest singular value of phi(t ad_xhat) decays
no faster than 1/t, as long as no eigenvalue lam makes 1 - e^{-lam t}
vanish. We watch t * s_n on two rays: one where this holds and one where a
purely imaginary eigenvalue makes phi(t ad) singular at t = 2 pi.
"""

import numpy as np

from dexpbounds import builtin, corollary_decay

grid = np.arange(1, 51, dtype=float)

# sl(2) along H: eigenvalues 0, 2, -2. t * s_n = (1 - e^{-2t}) / 2.
sl2 = builtin.get("sl2").algebra
d = corollary_decay(sl2, np.array([1.0, 0.0, 0.0]), grid)
print(f"sl2, H ray:   min t*s_n = {d.min_value:.6f} at t = {d.witness_t:g}")
# The minimum sits at t = 1 and t * s_n climbs towards 1/2 afterwards.

# A generic sl(2) direction. Far out, s_1 / s_n of phi(t ad) exceeds 1e30
# and s_n is recovered from the inverse, which keeps its relative accuracy.
xhat = np.array([-0.73, 0.61, 0.31])
xhat /= np.linalg.norm(xhat)
d = corollary_decay(sl2, xhat, grid)
print(f"sl2, generic: min t*s_n = {d.min_value:.6f} at t = {d.witness_t:g}")

# so(3): ad has eigenvalues 0, i, -i. At t = 2 pi, e^{-i t} = 1 and phi is singular.
so3 = builtin.get("so3").algebra
d = corollary_decay(so3, np.array([1.0, 0.0, 0.0]), [1.0, 3.0, 2 * np.pi, 7.0])
print(f"so3:          applicable = {d.applicable}, singular at t = {d.singular_at:.6f}")
