"""Integration error decay of the inverse-square-distance integrand.

f(z) = 1/|z - x0|^2 with x0 = (1+i, 1+i) is smooth on the complex 2-sphere
and harmonic as a function of the four real coordinates, so its exact
integral is the value at the origin: 1/|x0|^2 = 1/4. Computing rules of
increasing degree shows the quadrature error falling by orders of
magnitude.

Run:  python3 demos/integration_convergence.py     (about a minute)
"""

from pathlib import Path

import numpy as np

from cxdesign import (
    OptimizerConfig,
    demo_error_curve,
    find_design,
    map_design,
    point_counts,
    write_error_curve_csv,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# degree ladder with the symmetric working node counts
ladder = [(3, 10, 6), (5, 28, 10), (7, 60, 10), (9, 114, 3)]
rules = []
for t, n, restarts in ladder:
    assert t == 3 or point_counts(2, t).nbar == n
    cfg = OptimizerConfig(t=t, m=3, N=n, symmetric=True, restarts=restarts,
                          seed=11)
    result = find_design(cfg)
    print(f"t={t:>2}: N={n:>4}  converged={result.converged}  "
          f"V={result.final_V:.2e}")
    rules.append(map_design(result.points, t))

x0 = np.array([1 + 1j, 1 + 1j])
rows = demo_error_curve(rules, x0)
print(f"\nexact integral 1/|x0|^2 = {1 / abs(np.vdot(x0, x0)):.6f}")
print(f"{'t':>3} {'N':>5} {'abs error':>12}")
for t, n, err in rows:
    print(f"{t:>3} {n:>5} {err:>12.3e}")

write_error_curve_csv(OUT / "error_curve.csv", rows)
print(f"\nwrote {OUT / 'error_curve.csv'}")
