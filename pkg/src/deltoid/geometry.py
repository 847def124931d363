"""Triangle side of the picture: coordinates, density, and the cubic map.

Three unit complex numbers z_k(x, y) = exp(i E_k.(x, y)) with direction
vectors summing to zero, so z1 z2 z3 = 1 identically.  Their mean Z is the
map onto the curved domain; the squared Vandermonde

    W = -(z1 - z2)^2 (z2 - z3)^2 (z3 - z1)^2

is real and nonnegative (the Vandermonde is purely imaginary on this
configuration) and vanishes exactly on a line arrangement.  The open cell
containing the centroid is the fundamental triangle; its vertices are the
pre-images of the three cusps.  W and the domain polynomial P are linked by
W = 108 P(Z, Zbar), which is how boundary statements transfer between the
two pictures.
"""

import cmath
import csv
import math
from dataclasses import dataclass

from .exact import BivarPoly, Rat, Z, ZBAR
from .operator import boundary_poly

ROOT3 = math.sqrt(3.0)

# direction vectors; rows sum to zero
E = (
    (1.0, 0.0),
    (-0.5, ROOT3 / 2.0),
    (-0.5, -ROOT3 / 2.0),
)

# fundamental triangle: the cell of {W > 0} whose centroid maps to Z = 0
V0 = (0.0, 0.0)
V1 = (4.0 * math.pi / 3.0, 0.0)
V2 = (2.0 * math.pi / 3.0, 2.0 * math.pi / ROOT3)
CENTER = (
    (V0[0] + V1[0] + V2[0]) / 3.0,
    (V0[1] + V1[1] + V2[1]) / 3.0,
)

_P = boundary_poly()


@dataclass(frozen=True)
class TrianglePoint:
    x: float
    y: float

    def is_interior(self, tol: float = 1e-12) -> bool:
        """All pairwise z_k separations nonzero, i.e. W above tol."""
        z1, z2, z3 = zk(self)
        m = min(abs(z1 - z2), abs(z2 - z3), abs(z3 - z1))
        return m * m > tol

    def translate(self, v) -> "TrianglePoint":
        return TrianglePoint(self.x + v[0], self.y + v[1])


@dataclass(frozen=True)
class DeltoidPoint:
    Z: complex

    @property
    def rho(self) -> float:
        return abs(self.Z)

    @property
    def theta(self) -> float:
        return cmath.phase(self.Z) if self.Z != 0 else 0.0

    def membership_residual(self) -> float:
        """P(Z, Zbar): positive inside, zero on the curve, negative outside.

        Equals 1/4 (1 - rho^2)^2 - (rho^2 + rho^4 - 2 rho^3 cos 3 theta).
        """
        return _P.eval(self.Z).real

    def is_interior(self, tol: float = 0.0) -> bool:
        return self.membership_residual() > tol

    def is_boundary(self, tol: float = 1e-9) -> bool:
        return abs(self.membership_residual()) <= tol


def zk(point: TrianglePoint):
    """The three unit complex coordinates at a plane point."""
    x, y = point.x, point.y
    return tuple(cmath.exp(1j * (ex * x + ey * y)) for ex, ey in E)


def w_density(point: TrianglePoint) -> float:
    """-(z1-z2)^2 (z2-z3)^2 (z3-z1)^2, real and >= 0 up to rounding."""
    z1, z2, z3 = zk(point)
    v = (z1 - z2) * (z2 - z3) * (z3 - z1)
    w = -v * v
    if abs(w.imag) > 1e-12 * max(1.0, abs(w.real)):
        raise ArithmeticError(f"density not real: {w}")
    return w.real


def triangle_to_deltoid(point: TrianglePoint) -> DeltoidPoint:
    z1, z2, z3 = zk(point)
    d = DeltoidPoint((z1 + z2 + z3) / 3.0)
    if d.membership_residual() < -1e-10:
        raise ArithmeticError(f"image left the closed domain: {d}")
    return d


def pushforward_gamma(point: TrianglePoint):
    """(g11, g12, g22) of the mapped Euclidean gradient form at a point.

    Exact derivatives of the map: dZ/dx = (i/3) sum E_k1 z_k and likewise
    in y.  g11 = Zx^2 + Zy^2, g12 = |Zx|^2 + |Zy|^2, g22 = conj(g11);
    these must agree with the polynomial carre du champ entries at Z.
    """
    z = zk(point)
    zx = 1j / 3.0 * sum(E[k][0] * z[k] for k in range(3))
    zy = 1j / 3.0 * sum(E[k][1] * z[k] for k in range(3))
    g11 = zx * zx + zy * zy
    g12 = (zx * zx.conjugate() + zy * zy.conjugate()).real
    return g11, g12, g11.conjugate()


def period_lattice():
    """Generators of the exact translation lattice of (z1, z2, z3)."""
    return (
        (2.0 * math.pi, 2.0 * math.pi / ROOT3),
        (2.0 * math.pi, -2.0 * math.pi / ROOT3),
    )


def _bary_to_plane(b0, b1, b2) -> TrianglePoint:
    return TrianglePoint(
        b0 * V0[0] + b1 * V1[0] + b2 * V2[0],
        b0 * V0[1] + b1 * V1[1] + b2 * V2[1],
    )


def _square_to_triangle(u: float, v: float) -> TrianglePoint:
    # area-preserving map of the open unit square onto the open triangle
    r = math.sqrt(u)
    return _bary_to_plane(1.0 - r, r * (1.0 - v), r * v)


# plastic-constant Kronecker directions, a decent 2D low-discrepancy pair
_ALPHA1 = 0.7548776662466927
_ALPHA2 = 0.5698402909980532

_W_FLOOR = 1e-12


def sample_interior(n: int, mode: str = "low-discrepancy", seed: int = 0):
    """Deterministic strictly-interior plane points, n of them.

    grid mode places ceil(sqrt(n))^2 stratified points and truncates;
    low-discrepancy mode walks a seeded Kronecker sequence.  Points with
    density under the floor get pulled toward the centroid.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [TrianglePoint(*CENTER)]
    pts = []
    if mode == "grid":
        k = math.isqrt(n)
        if k * k < n:
            k += 1
        for i in range(k):
            for j in range(k):
                u = (i + 0.5) / k
                v = (j + 0.5) / k
                pts.append(_square_to_triangle(u, v))
        pts = pts[:n]
    elif mode == "low-discrepancy":
        import random as _random

        rng = _random.Random(seed)
        s1, s2 = rng.random(), rng.random()
        for i in range(n):
            u = (s1 + (i + 1) * _ALPHA1) % 1.0
            v = (s2 + (i + 1) * _ALPHA2) % 1.0
            pts.append(_square_to_triangle(u, v))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = []
    for p in pts:
        guard = 0
        while w_density(p) < _W_FLOOR:
            p = TrianglePoint(
                CENTER[0] + 0.9 * (p.x - CENTER[0]),
                CENTER[1] + 0.9 * (p.y - CENTER[1]),
            )
            guard += 1
            if guard > 200:
                raise ArithmeticError("could not pull sample off the boundary")
        out.append(p)
    return out


def interior_lattice(m: int):
    """Strictly interior barycentric lattice (i+j+k = m, all >= 1).

    Contains the median lines, which map onto the cusp rays; scans that
    need to see near-cusp behaviour should use this rather than a square
    grid.
    """
    if m < 3:
        raise ValueError("need m >= 3")
    pts = []
    for i in range(1, m - 1):
        for j in range(1, m - i):
            k = m - i - j
            if k < 1:
                continue
            pts.append(_bary_to_plane(i / m, j / m, k / m))
    return pts


def boundary_points(n: int):
    """n points per edge, strictly between vertices."""
    out = []
    for a, b in ((V0, V1), (V1, V2), (V2, V0)):
        for i in range(1, n + 1):
            t = i / (n + 1)
            out.append(TrianglePoint(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


def write_csv(points, path):
    """Emit x, y, ReZ, ImZ, W rows for a list of TrianglePoint."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "ReZ", "ImZ", "W"])
        for p in points:
            d = triangle_to_deltoid(p)
            w.writerow(
                [
                    repr(p.x),
                    repr(p.y),
                    repr(d.Z.real),
                    repr(d.Z.imag),
                    repr(w_density(p)),
                ]
            )
