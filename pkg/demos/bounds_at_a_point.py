"""
How far |d exp_x(y)| can stretch or shrink a unit vector
=========================================================

At a point x of a Lie algebra, d exp_x acts as phi(ad_x) with
phi(z) = (1 - e^{-z}) / z. Its smallest and largest singular values are the
exact extremes of |d exp_x(y)| over unit y. Below we compare them with the
cheap bounds built from the eigenvalues of ad_x.
"""

import numpy as np

from dexpbounds import bound_report, builtin

# sl(2) with the orthonormal basis H, E, F. ad_H is diag(0, 2, -2).
sl2 = builtin.get("sl2").algebra
x = np.array([1.0, 0.0, 0.0])
rep = bound_report(sl2, x)

print("sl2 at x = H")
print(f"  exact extremes       {rep.exact_min:.6f} .. {rep.exact_max:.6f}")
print(f"  eigenvalue extremes  {rep.lambda_tilde_min:.6f} .. {rep.lambda_tilde_max:.6f}")
print(f"  diagonalizable case  {rep.thm1_lower:.6f} .. {rep.thm1_upper:.6f}  (kappa = {rep.kappa:.3g})")
print(f"  any-x bounds         {rep.thm2_lower:.3e} .. {rep.thm2_upper:.6f}")

# Along H everything is diagonal, so the eigenvalue extremes are exact:
# (1 - e^{-2}) / 2 and (e^2 - 1) / 2.
print("  closed form          "
      f"{-np.expm1(-2.0) / 2:.6f} .. {np.expm1(2.0) / 2:.6f}")

# The Heisenberg algebra is nilpotent, so ad_x has only zero eigenvalues and
# the polynomial bounds apply.
h3 = builtin.get("heis3").algebra
rep = bound_report(h3, np.array([1.0, 0.0, 0.0]))
print()
print("heis3 at x = e0  (ad_x^%d = 0)" % rep.nilp_step)
print(f"  exact extremes       {rep.exact_min:.6f} .. {rep.exact_max:.6f}")
print(f"  polynomial bounds    {rep.nilp_lower:.6f} .. {rep.nilp_upper:.6f}")
print(f"  any-x bounds         {rep.thm2_lower:.6f} .. {rep.thm2_upper:.6f}")

# Any violated inequality would show up here.
print()
print("violations:", rep.violations() or "none")
