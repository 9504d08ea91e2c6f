"""
The norm of the Lie bracket
===========================

delta_0 = sup |[x, y]| over unit x, y controls the any-x bounds. It has no
closed form in general, so it comes as a two-sided estimate: a lower value
from multi-start ascent and an upper value from a Frobenius certificate.
"""

from dexpbounds import builtin, delta_zero

for entry in builtin.catalog():
    d = delta_zero(entry.algebra, budget=32, seed=0)
    print(f"{entry.id:10s} {d.lower:.6f} <= delta_0 <= {d.upper:.6f}"
          f"   ({d.iterations} iterations, converged={d.converged})")

# The upper value is what the bounds use. It overestimates delta_0, which
# only loosens the bounds and never breaks them.
