"""
Randomized checks of every inequality
=====================================

Each suite draws random inputs from a seeded generator, evaluates one family
of inequalities and records the worst residual (positive means violated).
Reports without timing are byte-identical across reruns with the same seed.
"""

from dexpbounds import run_suite
from dexpbounds.harness import SUITES

for name in sorted(SUITES):
    rep = run_suite(name, seed=7, trials=20)
    worst = max(rep.max_residuals.values()) if rep.max_residuals else float("nan")
    print(f"{name:17s} ok={rep.ok!s:5s} failures={len(rep.failures):3d}  worst residual {worst: .2e}")

a = run_suite("weyl", seed=3, trials=10).to_json(timing=False)
b = run_suite("weyl", seed=3, trials=10).to_json(timing=False)
print("rerun identical:", a == b)
