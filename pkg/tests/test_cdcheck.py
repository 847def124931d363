import cmath
import math
import random

import pytest

from deltoid.cdcheck import (
    CDParams,
    DegenerateDenominator,
    Gamma2Report,
    b_one_third_forms,
    b_one_third_of_t,
    deltoid_grid,
    divergence_probe,
    factorization_check,
    factorization_sweep,
    fd_oracle_b,
    gamma2_sample_check,
    psd_check,
    ray_nonneg_on_unit,
    scan_inf_b,
    tensor_residual,
    triangle_b,
)
from deltoid.exact import Rat, Z, ZBAR
from deltoid.operator import boundary_poly


def scan_points(n, seed=0, margin=0.4):
    # random strictly interior points of the (theta, phi) scan triangle
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        b = sorted([rng.random(), rng.random()])
        b0, b1, b2 = b[0], b[1] - b[0], 1.0 - b[1]
        th = b1 * 2 * math.pi + b2 * (-2 * math.pi)
        ph = b2 * 2 * math.pi
        if min(ph, th + ph, 2 * math.pi - th - 2 * ph) > margin:
            pts.append((th, ph))
    return pts


def test_cdparams_conversions():
    p = CDParams.from_logp(4, "1/6", "9/4")
    assert p.rho == Rat(9, 4)
    assert p.n == Rat(8)
    q = CDParams.from_cd(4, "9/4", 8)
    assert q.a1 == Rat(1, 6)
    assert q.b1 == Rat(9, 4)
    # the flagship identity at general lambda
    for lv in ("3/2", 2, 7):
        r = CDParams.from_logp(lv, "1/6", "9/4")
        lam = r.lam
        assert r.rho == 3 * (lam - 1) / 4
        assert r.n == 2 * lam
    with pytest.raises(ValueError):
        CDParams.from_logp(1, "1/6", "9/4")
    with pytest.raises(ValueError):
        CDParams.from_cd(4, 1, 2)


def test_tensor_residual_origin_values():
    r = tensor_residual("1/3", "1/2")
    assert r.r12.eval(0j).real == (3 - 0.5) / 2
    r2 = tensor_residual("1/6", "9/4")
    assert r2.r12.eval(0j).real == 0.375
    # b1 = 3, a1 = 1/6 kills the off-diagonal entirely
    r3 = tensor_residual("1/6", 3)
    assert r3.r12.is_zero()


def test_tensor_residual_closed_form():
    r = tensor_residual("1/6", "9/4")
    want11 = ZBAR.scale(Rat(3, 2) - Rat(9, 4)) + (Z * Z).scale(
        Rat(9, 4) - Rat(9, 6)
    )
    assert r.r11 == want11
    assert r.r22 == want11.conj_swap()


def test_m2_is_scaled_boundary_poly_at_optimum():
    r = tensor_residual("1/6", "9/4")
    m2 = r.r12 * r.r12 - r.r11 * r.r22
    assert m2 == boundary_poly().scale(Rat(9, 16))


def test_psd_optimal_pair_everywhere():
    r = tensor_residual("1/6", "9/4")
    rep = psd_check(r, deltoid_grid(200))
    assert rep.passed
    assert rep.min_margin1 >= -1e-12
    assert rep.min_margin2 >= -1e-12
    assert rep.count > 19000


def test_psd_perturbed_fails():
    r = tensor_residual("1/6", Rat(9, 4) + Rat(1, 100))
    rep = psd_check(r, deltoid_grid(200))
    assert not rep.passed
    assert rep.min_margin2 < -1e-3
    # the strongest violation sits at the arc midpoints (|Z| = 1/3):
    # m2 on the theta = pi ray factors as
    # (1+rho)^2 ((3-b1)(1-rho)/2 - (b1-3/2) rho) (...)
    # and the middle factor crosses zero at rho = 1/3 when b1 = 9/4
    assert abs(abs(rep.worst_point) - 1.0 / 3.0) < 0.05
    # a thin sliver along the cusp rays fails as well, at ~1e-5 depth
    _, m2_cusp = r.psd_margins(0.975 + 0j)
    assert -1e-3 < m2_cusp < -1e-6


def test_psd_zero_pair_trivial():
    r = tensor_residual(0, 0)
    rep = psd_check(r, deltoid_grid(40))
    assert rep.passed


def test_factorization_optimal():
    res = factorization_check("1/6", "9/4")
    assert res.reduced_form_checked
    assert res.k_const == (Rat(9, 4) - Rat(3, 2)) * (Rat(3, 2) - Rat(9, 4))
    # ray polynomial is (9/64)(1 + 3 rho)(1 - rho)^3
    ray = res.ray
    vals = {Rat(0): Rat(9, 64), Rat(1): Rat(0), Rat(1, 2): None}
    acc = Rat(0)
    for k, c in enumerate(ray):
        acc += c * Rat(1, 2) ** k
    want_half = Rat(9, 64) * (1 + Rat(3, 2)) * Rat(1, 2) ** 3
    assert acc == want_half
    assert ray[0] == Rat(9, 64)


def test_factorization_sweep_and_trivial():
    out = factorization_sweep()
    assert len(out) == 25
    res = factorization_check(0, 0)
    assert res.k_const == Rat(0)  # (b1 - 9 a1)(3/2 - b1) with both zero
    assert res.ray[0] == Rat(9, 4)  # (1/4) * 3 * 3 at rho = 0


def test_b1_bound_nine_fourths():
    ok, worst, _ = ray_nonneg_on_unit("1/6", "9/4")
    assert ok and worst == 0
    ok_lo, _, _ = ray_nonneg_on_unit("1/6", Rat(9, 4) - Rat(1, 8))
    assert ok_lo
    bad, worst_bad, rho_bad = ray_nonneg_on_unit("1/6", Rat(9, 4) + Rat(1, 100))
    assert not bad
    assert worst_bad < 0
    assert rho_bad > Rat(9, 10)
    bad2, _, _ = ray_nonneg_on_unit("1/6", Rat(9, 4) + Rat(1, 1000))
    assert not bad2


def test_triangle_b_center():
    # the centre of the scan triangle gives b = 3/2 at every a
    for a in (0.0, 0.25, 1.0 / 3.0, 0.8):
        sp = triangle_b(a, 0.0, 2 * math.pi / 3)
        assert abs(sp.b_of_a - 1.5) < 1e-12


def test_triangle_b_cross_check_sweep():
    for th, ph in scan_points(200, seed=1):
        triangle_b(1.0 / 3.0, th, ph)  # raises on any form disagreement
        triangle_b(0.1, th, ph)


def test_triangle_b_degenerate():
    with pytest.raises(DegenerateDenominator):
        triangle_b(0.3, 1.0, 0.0)


def test_triangle_b_monotone_in_a():
    for th, ph in scan_points(30, seed=2):
        prev = None
        for a in (0.0, 0.2, 1.0 / 3.0, 0.5):
            b = triangle_b(a, th, ph).b_of_a
            if prev is not None:
                assert b <= prev + 1e-12
            prev = b


def test_fd_oracle_agreement():
    pts = [p for p in scan_points(40, seed=3, margin=0.55)]
    for a in (0.0, 1.0 / 3.0):
        for th, ph in pts[:20]:
            b = triangle_b(a, th, ph).b_of_a
            ref = fd_oracle_b(a, th, ph)
            assert abs(b - ref) < 1e-5, (a, th, ph)


def test_b13_forms_agree():
    n = 0
    for th, ph in scan_points(1000, seed=4, margin=0.2):
        try:
            t, zu, xw, tt = b_one_third_forms(th, ph)
        except DegenerateDenominator:
            continue
        n += 1
        scale = max(1.0, abs(t))
        assert abs(t - zu) < 1e-9 * scale
        assert abs(t - xw) < 1e-9 * scale
        assert abs(t - tt) < 1e-9 * scale
    assert n > 900


def test_b13_t_form_values():
    assert abs(b_one_third_of_t(2.0) - 1.25) < 1e-15
    assert abs(b_one_third_of_t(math.sqrt(3.0)) - 1.5) < 1e-12
    # infimum 9/8 approached from above as t grows
    prev = b_one_third_of_t(2.0)
    for t in (5.0, 20.0, 100.0, 1e4):
        cur = b_one_third_of_t(t)
        assert 9.0 / 8.0 < cur < prev
        prev = cur
    assert b_one_third_of_t(1e6) - 9.0 / 8.0 < 1e-10


def test_scan_inf_b_one_third():
    rep = scan_inf_b(1.0 / 3.0, grid=60, refine_near_cusps=True)
    assert 9.0 / 8.0 - 1e-6 <= rep.inf_estimate <= 9.0 / 8.0 + 1e-2
    for i in range(1, len(rep.trace)):
        assert rep.trace[i] <= rep.trace[i - 1] + 1e-15
    # argmin sits near one of the three corners
    th, ph = rep.argmin
    d = min(
        math.hypot(th - c[0], ph - c[1])
        for c in ((0.0, 0.0), (2 * math.pi, 0.0), (-2 * math.pi, 2 * math.pi))
    )
    assert d < 0.2


def test_scan_inf_b_zero():
    rep = scan_inf_b(0.0, grid=60, refine_near_cusps=True)
    assert rep.inf_estimate >= 9.0 / 8.0 - 1e-6
    rep13 = scan_inf_b(1.0 / 3.0, grid=60, refine_near_cusps=True)
    assert rep13.inf_estimate <= rep.inf_estimate + 1e-12


def test_divergence_probe_quad():
    rep = divergence_probe(0.4, curve="quad", c=1.0)
    assert rep.limit_estimate < 0
    assert rep.sign_matches
    assert min(rep.b_values) < -1e3
    for name, (got, want, ok) in rep.ratio_checks.items():
        assert ok, (name, got, want)


def test_divergence_probe_degenerate():
    rep = divergence_probe(1.0 / 3.0, curve="quad", c=1.0)
    assert rep.sign_matches
    assert abs(rep.limit_estimate) < 1e-3
    for name, (got, want, ok) in rep.ratio_checks.items():
        assert ok, (name, got, want)


def test_divergence_probe_linear():
    rep = divergence_probe(0.6, curve="lin", c=1.0)
    assert min(rep.b_values) < -1e3
    assert rep.ratio_checks == {}
    with pytest.raises(ValueError):
        divergence_probe(0.5, curve="cubic")


def test_gamma2_cd94_8_passes():
    rep = gamma2_sample_check(4, 2.25, 8.0, trials=100, points=100, seed=5)
    assert rep.pairs >= 10**4
    assert rep.min_margin >= -1e-10
    assert rep.passed


def test_gamma2_n7_violated():
    rep = gamma2_sample_check(4, 2.25, 7.0, trials=20, points=30, seed=6)
    assert not rep.passed
    assert rep.min_margin < -0.5
    assert abs(rep.worst_point) > 0.9


def test_route_agreement():
    # tensor route and sampling route agree on pass/fail at lambda = 4
    opt = CDParams.from_cd(4, "9/4", 8)
    r_ok = psd_check(tensor_residual(opt.a1, opt.b1), deltoid_grid(120))
    s_ok = gamma2_sample_check(4, 2.25, 8.0, trials=40, points=60, seed=7)
    assert r_ok.passed and s_ok.passed
    bad = CDParams.from_cd(4, "9/4", 7)
    r_bad = psd_check(tensor_residual(bad.a1, bad.b1), deltoid_grid(200))
    s_bad = gamma2_sample_check(4, 2.25, 7.0, trials=20, points=30, seed=8)
    assert (not r_bad.passed) and (not s_bad.passed)
