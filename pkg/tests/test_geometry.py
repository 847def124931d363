import cmath
import csv
import math
import random

import pytest

from deltoid.geometry import (
    CENTER,
    DeltoidPoint,
    TrianglePoint,
    V0,
    V1,
    V2,
    boundary_points,
    interior_lattice,
    period_lattice,
    pushforward_gamma,
    sample_interior,
    triangle_to_deltoid,
    w_density,
    write_csv,
    zk,
)
from deltoid.operator import GammaMatrix


def rand_points(n, seed=0):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        b = sorted([rng.random(), rng.random()])
        b0, b1, b2 = b[0], b[1] - b[0], 1.0 - b[1]
        p = TrianglePoint(
            b0 * V0[0] + b1 * V1[0] + b2 * V2[0],
            b0 * V0[1] + b1 * V1[1] + b2 * V2[1],
        )
        if w_density(p) > 1e-6:
            pts.append(p)
    return pts


def test_zk_origin():
    assert zk(TrianglePoint(0.0, 0.0)) == (1.0, 1.0, 1.0)


def test_zk_unit_product():
    for p in rand_points(50, seed=1):
        z1, z2, z3 = zk(p)
        for z in (z1, z2, z3):
            assert abs(abs(z) - 1.0) < 1e-12
        assert abs(z1 * z2 * z3 - 1.0) < 1e-12


def test_period_lattice():
    v1, v2 = period_lattice()
    for p in rand_points(20, seed=2):
        base = zk(p)
        for v in (v1, v2, (v1[0] + v2[0], v1[1] + v2[1])):
            shifted = zk(p.translate(v))
            for a, b in zip(base, shifted):
                assert abs(a - b) < 1e-9


def test_w_density_values():
    assert abs(w_density(TrianglePoint(*CENTER)) - 27.0) < 1e-12
    for p in boundary_points(25):
        assert abs(w_density(p)) < 1e-18
    for p in rand_points(50, seed=3):
        assert w_density(p) > 0


def test_w_equals_108_P():
    for p in rand_points(100, seed=4):
        w = w_density(p)
        d = triangle_to_deltoid(p)
        ref = 108.0 * d.membership_residual()
        assert abs(w - ref) <= 1e-10 * max(1.0, abs(ref))


def test_map_special_points():
    assert abs(triangle_to_deltoid(TrianglePoint(0.0, 0.0)).Z - 1.0) < 1e-15
    assert abs(triangle_to_deltoid(TrianglePoint(*CENTER)).Z) < 1e-14
    # the other two vertices land on the other two cusps
    w = cmath.exp(2j * math.pi / 3)
    zs = sorted(
        (
            triangle_to_deltoid(TrianglePoint(*V1)).Z,
            triangle_to_deltoid(TrianglePoint(*V2)).Z,
        ),
        key=lambda z: z.imag,
    )
    assert abs(zs[0] - w.conjugate()) < 1e-12
    assert abs(zs[1] - w) < 1e-12


def test_membership_polar_formula():
    # residual agrees with the polar inequality form
    for p in rand_points(30, seed=5):
        d = triangle_to_deltoid(p)
        r, t = d.rho, d.theta
        polar = 0.25 * (1 - r * r) ** 2 - (
            r * r + r ** 4 - 2 * r ** 3 * math.cos(3 * t)
        )
        assert abs(d.membership_residual() - polar) < 1e-12


def test_interior_maps_interior():
    for p in rand_points(50, seed=6):
        assert triangle_to_deltoid(p).is_interior()


def test_boundary_maps_to_curve():
    for p in boundary_points(40):
        d = triangle_to_deltoid(p)
        assert abs(d.membership_residual()) < 1e-9
        assert d.is_boundary()


def test_pushforward_matches_gamma():
    g = GammaMatrix.deltoid()
    for p in rand_points(60, seed=7):
        g11, g12, g22 = pushforward_gamma(p)
        zpt = triangle_to_deltoid(p).Z
        assert abs(g11 - g.g11.eval(zpt)) < 1e-8
        assert abs(g12 - g.g12.eval(zpt).real) < 1e-8
        assert abs(g22 - g.g22.eval(zpt)) < 1e-8


def test_pushforward_matches_finite_differences():
    h = 1e-6

    def Zmap(x, y):
        return triangle_to_deltoid(TrianglePoint(x, y)).Z

    for p in rand_points(5, seed=8):
        zx = (Zmap(p.x + h, p.y) - Zmap(p.x - h, p.y)) / (2 * h)
        zy = (Zmap(p.x, p.y + h) - Zmap(p.x, p.y - h)) / (2 * h)
        g11, g12, _ = pushforward_gamma(p)
        assert abs(zx * zx + zy * zy - g11) < 1e-8
        assert abs(abs(zx) ** 2 + abs(zy) ** 2 - g12) < 1e-8


def test_sample_interior_basics():
    assert sample_interior(1) == [TrianglePoint(*CENTER)]
    g = sample_interior(49, mode="grid")
    assert len(g) == 49
    for p in g:
        assert w_density(p) > 1e-12
    a = sample_interior(200, seed=11)
    b = sample_interior(200, seed=11)
    assert a == b
    c = sample_interior(200, seed=12)
    assert a != c
    for p in a:
        assert w_density(p) > 1e-12
    with pytest.raises(ValueError):
        sample_interior(0)
    with pytest.raises(ValueError):
        sample_interior(5, mode="hexagonal")


def test_interior_lattice():
    pts = interior_lattice(20)
    assert len(pts) == (20 - 1) * (20 - 2) // 2
    for p in pts:
        assert w_density(p) > 0
    # medians present: some points map onto the real-axis cusp ray
    on_ray = [p for p in pts if abs(triangle_to_deltoid(p).Z.imag) < 1e-9]
    assert len(on_ray) >= 3


def test_csv_roundtrip(tmp_path):
    pts = sample_interior(16, mode="grid")
    path = tmp_path / "pts.csv"
    write_csv(pts, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "y", "ReZ", "ImZ", "W"]
    assert len(rows) == 17
    x, y, rez, imz, w = (float(v) for v in rows[1])
    p = pts[0]
    assert x == p.x and y == p.y
    assert abs(complex(rez, imz) - triangle_to_deltoid(p).Z) < 1e-15
    assert w == w_density(p)


def test_deltoid_point_interior_flags():
    assert DeltoidPoint(0j).is_interior()
    assert not DeltoidPoint(1.2 + 0j).is_interior()
    assert DeltoidPoint(1.0 + 0j).is_boundary()
