"""Curvature-dimension evidence: the exact ray factorization, the grid
positivity of the optimal pair, the b-scan at a = 1/3, and the blow-up
probe showing why the corner matters.
"""

from deltoid import (
    Lambda,
    Rat,
    deltoid_grid,
    divergence_probe,
    factorization_check,
    gamma2_sample_check,
    psd_check,
    ray_nonneg_on_unit,
    scan_inf_b,
    tensor_residual,
)

print("= exact factorization on the diagonal ray =")
res = factorization_check(Rat(1, 6), Rat(9, 4))
print("k_const =", res.k_const, " reduced form checked:", res.reduced_form_checked)
ok, worst, _ = ray_nonneg_on_unit(Rat(1, 6), Rat(9, 4))
print("nonnegative on [0,1] at b1 = 9/4:", ok, " worst value:", worst)
ok2, worst2, rho2 = ray_nonneg_on_unit(Rat(1, 6), Rat(9, 4) + Rat(1, 100))
print(f"b1 = 9/4 + 1/100: nonnegative {ok2}, dips to {float(worst2):.2e}"
      f" at rho = {float(rho2):.3f}")

print()
print("= grid positivity of the optimal pair =")
grid = deltoid_grid(120)
rep = psd_check(tensor_residual(Rat(1, 6), Rat(9, 4)), grid)
print(f"(1/6, 9/4): {rep.count} points, failures {rep.failures}, "
      f"min margin {rep.min_margin2:.2e}")
bad = psd_check(tensor_residual(Rat(1, 6), Rat(113, 50)), grid)
print(f"(1/6, 2.26): failures {bad.failures}, worst at {bad.worst_point:.4f}")

print()
print("= scanning the admissible b at a = 1/3 =")
scan = scan_inf_b(1.0 / 3.0, grid=80)
print(f"inf b = {scan.inf_estimate:.7f}  (9/8 = 1.125 is the floor)")
print("refinement trace:", [f"{v:.6f}" for v in scan.trace])

print()
print("= divergence along a corner curve at a = 0.4 =")
probe = divergence_probe(0.4, "quad")
print("last b values:", [f"{v:.3g}" for v in probe.b_values[-3:]])
print("b * theta^2 tail:", [f"{v:.4f}" for v in probe.b_theta2[-3:]])
print(f"limit estimate {probe.limit_estimate:.4f} "
      f"(formula 4.5 (1 - 3a)/(1 - a) = {4.5 * (1 - 1.2) / 0.6:.4f})")

print()
print("= sampled Gamma_2 inequality at lambda = 4 =")
good = gamma2_sample_check(Lambda(4), 2.25, 8.0, trials=40, points=60, seed=1)
bad7 = gamma2_sample_check(Lambda(4), 2.25, 7.0, trials=40, points=60, seed=1)
print(f"n = 8: min margin {good.min_margin:.2e} over {good.pairs} pairs")
print(f"n = 7: violations {bad7.violations} (dimension 8 is sharp)")
