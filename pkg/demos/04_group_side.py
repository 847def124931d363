"""The group-side construction: a nine-field frame on SU(3) whose
Casimir pushes forward, through the normalized trace, onto the deltoid
operator at lambda = 4.
"""

import numpy as np

from deltoid import (
    LieBasis,
    Z,
    ZBAR,
    charpoly_identity_check,
    commutator_table,
    curvature_dimension_check,
    haar_sample,
    pushforward_check,
    ricci_constant,
)

print("= frame structure =")
basis = LieBasis()
cas = sum(x @ x for _, x in basis)
print("fields:", ", ".join(basis.names))
print("Casimir sum of squares = -16/3 I:",
      np.abs(cas + (16 / 3) * np.eye(3)).max() < 1e-13)
print("Ricci proportionality constant:", ricci_constant())

table = commutator_table()
nonzero = sum(1 for c, nm in table.values() if nm is not None)
print(f"commutator table: {len(table)} pairs, {nonzero} nonvanishing")

print()
print("= pushforward through the normalized trace =")
us = haar_sample(11, 60)
rep = pushforward_check([Z, ZBAR, Z * ZBAR, Z**2], us)
print(f"{rep.count} comparisons: gamma residual {rep.max_gamma_residual:.2e},"
      f" generator residual {rep.max_generator_residual:.2e}")

print()
print("= characteristic-polynomial identities =")
rng = np.random.default_rng(5)
worst = 0.0
for u in us[:20]:
    x, y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    r = charpoly_identity_check(u, complex(x), complex(y))
    worst = max(worst, r.gamma_residual, r.generator_residual)
print(f"worst residual over 20 samples: {worst:.2e}")

print()
print("= Haar sanity: moments of the normalized trace =")
big = haar_sample(2, 20000)
tr = np.array([np.trace(u.matrix) / 3.0 for u in big])
print(f"E tr/3        = {tr.mean():.5f}          (target 0)")
print(f"E |tr/3|^2    = {np.mean(np.abs(tr) ** 2):.5f}   (target 1/9 = {1/9:.5f})")
print(f"E (tr/3)^3    = {np.mean(tr ** 3).real:.5f}   (target 1/27 = {1/27:.5f})")

print()
print("= curvature of the group model =")
cd = curvature_dimension_check(trials=6, samples=30, seed=7)
print(f"CD(3, 8) sampling: {cd.pairs} pairs, min margin {cd.min_margin:.3f},"
      f" passed {cd.passed}")
