"""Ultracontractivity read off the truncated heat diagonal.

The sup of p_t(x, x) should decay like t^(-lambda) for small t; fitting
the log-log slope over t in [0.02, 0.2] recovers the heat dimension.
Also demonstrates the float-conditioning cliff that caps how deep a
truncation double precision can actually evaluate.
"""

import numpy as np

from deltoid import HeatKernelTruncation, Lambda, heat_diag, ultracontractivity_fit

print("= lambda = 4, truncation degree 40 =")
tr4 = HeatKernelTruncation(Lambda(4), 40)
rep4 = ultracontractivity_fit(Lambda(4), (0.02, 0.2), tr4)
print(f"fitted slope {rep4.exponent:.4f} (target {rep4.target}),"
      f" residual {rep4.residual:.3f}")
print(f"rounding-noise share of the sup: {rep4.details['noise_fraction']:.1%}")

print()
print("= lambda = 1, where conditioning bites =")
# coefficient mass over norm grows like e^(1.3 k): by degree 40 a mode
# value near a cusp is pure cancellation noise, so the fit runs at 25
tr1 = HeatKernelTruncation(Lambda(1), 25)
rep1 = ultracontractivity_fit(Lambda(1), (0.02, 0.2), tr1)
print(f"degree 25: slope {rep1.exponent:.4f} (target {rep1.target})")
for deg in (25, 40):
    noise = HeatKernelTruncation(Lambda(1), deg).evaluation_noise(0.02)
    print(f"evaluation noise at t = 0.02, degree {deg}: {noise:.3e}")

print()
print("= the diagonal itself =")
for t in (0.05, 0.2, 1.0, 3.0):
    vals = [heat_diag(z, t, tr4) for z in (0j, -1 / 3 + 0j, 0.999 + 0j)]
    print(f"t = {t:4g}: center {vals[0]:10.4f}  arc-mid {vals[1]:10.4f}"
          f"  near-cusp {vals[2]:12.4f}")
# as t grows everything flattens to the stationary value 1

print()
print("= (t, sup) table, the same thing `deltoid heat trace` emits =")
grid = [0j, -1 / 3 + 0j] + [0.999 * np.exp(2j * np.pi * k / 3) for k in range(3)]
for t in np.exp(np.linspace(np.log(0.02), np.log(0.2), 6)):
    sup = max(heat_diag(z, float(t), tr4) for z in grid)
    print(f"{t:.4f}, {sup:.4f}")
