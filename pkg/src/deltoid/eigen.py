"""Eigenpolynomials, exact moments, inner products, and degree spaces.

The generator maps the monomial Z^i Zbar^j to -mu_{i,j} times itself plus
three lower-degree monomials:

    L(Z^i Zbar^j) = -mu_{i,j} Z^i Zbar^j
                    + i(i-1) Z^(i-2) Zbar^(j+1)
                    + i j    Z^(i-1) Zbar^(j-1)
                    + j(j-1) Z^(i+1) Zbar^(j-2)

with mu_{i,j} = (lam-1)(i+j) + i^2 + ij + j^2.  Everything here follows
from that one display: the eigen solver back-substitutes it, the moment
recursion integrates it against the invariant measure, and inner products
expand into moments.

Each lowering move drops i^2+ij+j^2 by at least 3 while dropping total
degree by at most 2, so mu strictly decreases along moves for every
lam > 0.  The EigenvalueCollision guard in the solver is therefore
believed unreachable; it stays as a defensive check on the divide.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import BivarPoly, CRat, Rat
from .operator import Lambda, _lam


class EigenvalueCollision(Exception):
    """Raised if back-substitution would divide by a zero eigenvalue gap."""


class MomentRangeExceeded(Exception):
    """Moment lookup outside the table's computed degree range."""


def eigenvalue(p: int, q: int, lam) -> "Rat":
    if p < 0 or q < 0:
        raise ValueError("need p, q >= 0")
    lv = _lam(lam)
    return (lv - 1) * (p + q) + Rat(p * p + p * q + q * q)


def _moves(i: int, j: int):
    # (target monomial, integer weight) triples with zero weights dropped
    if i >= 2:
        yield (i - 2, j + 1), i * (i - 1)
    if i >= 1 and j >= 1:
        yield (i - 1, j - 1), i * j
    if j >= 2:
        yield (i + 1, j - 2), j * (j - 1)


@dataclass(frozen=True)
class EigenPolynomial:
    p: int
    q: int
    lam: Lambda
    poly: BivarPoly
    mu: "Rat"
    norm2: "Rat"


class MomentTable:
    """Exact values of integral(Z^i Zbar^j) against the invariant measure.

    Only nonzero moments are stored (they vanish unless i = j mod 3, a
    consequence of the recursion, not an input assumption).  Lookups
    outside max_degree raise MomentRangeExceeded instead of returning a
    silent zero.
    """

    def __init__(self, lam: Lambda, max_degree: int):
        self.lam = lam if isinstance(lam, Lambda) else Lambda(lam)
        self.max_degree = -1
        self._m = {}
        self.extend_to(max_degree)

    def extend_to(self, max_degree: int) -> "MomentTable":
        if max_degree <= self.max_degree:
            return self
        lv = self.lam.value
        start = self.max_degree + 1
        if start == 0:
            self._m[(0, 0)] = Rat(1)
            start = 1
        for deg in range(start, max_degree + 1):
            for i in range(deg + 1):
                j = deg - i
                acc = Rat(0)
                if i >= 2:
                    acc += i * (i - 1) * self._m.get((i - 2, j + 1), Rat(0))
                if i >= 1 and j >= 1:
                    acc += i * j * self._m.get((i - 1, j - 1), Rat(0))
                if j >= 2:
                    acc += j * (j - 1) * self._m.get((i + 1, j - 2), Rat(0))
                if acc:
                    self._m[(i, j)] = acc / eigenvalue(i, j, self.lam)
        self.max_degree = max_degree
        return self

    def get(self, i: int, j: int) -> "Rat":
        if i < 0 or j < 0 or i + j > self.max_degree:
            raise MomentRangeExceeded(f"moment ({i},{j}) beyond degree {self.max_degree}")
        return self._m.get((i, j), Rat(0))

    def items(self):
        return self._m.items()


def moments(lam, max_degree: int) -> MomentTable:
    return MomentTable(lam if isinstance(lam, Lambda) else Lambda(lam), max_degree)


# moment tables are expensive only through their largest degree, so keep
# one growable table per lambda for the solver's internal needs
_table_cache: dict = {}


def _cached_table(lam: Lambda, degree: int) -> MomentTable:
    key = (lam.value.numerator, lam.value.denominator)
    tab = _table_cache.get(key)
    if tab is None:
        tab = MomentTable(lam, degree)
        _table_cache[key] = tab
    else:
        tab.extend_to(degree)
    return tab


def solve_eigenpoly(p: int, q: int, lam) -> EigenPolynomial:
    """Unique eigenpolynomial with monic leading monomial Z^p Zbar^q.

    Processes monomials in decreasing (degree, i) order; every lowering
    move lands strictly below the current degree, so each coefficient is
    fully accumulated before it is resolved.
    """
    lam = lam if isinstance(lam, Lambda) else Lambda(lam)
    mu_target = eigenvalue(p, q, lam)
    coeffs = {(p, q): Rat(1)}
    incoming: dict = {}
    degrees: dict = {p + q: [(p, q)]}
    for deg in range(p + q, -1, -1):
        keys = degrees.pop(deg, None)
        if not keys:
            continue
        for key in sorted(keys, reverse=True):
            if key in coeffs:
                c = coeffs[key]
            else:
                gap = eigenvalue(key[0], key[1], lam) - mu_target
                if not gap:
                    raise EigenvalueCollision(
                        f"mu({key}) = mu({(p, q)}) at lambda = {lam.value}"
                    )
                c = incoming.pop(key) / gap
                if not c:
                    continue
                coeffs[key] = c
            for tgt, w in _moves(*key):
                if tgt in incoming:
                    incoming[tgt] += w * c
                else:
                    incoming[tgt] = w * c
                    degrees.setdefault(tgt[0] + tgt[1], []).append(tgt)
    poly = BivarPoly({k: CRat(v) for k, v in coeffs.items()})
    table = _cached_table(lam, 2 * (p + q))
    # <P, P> reduces to <P, leading monomial>: the tail of P expands in
    # eigenpolynomials of strictly smaller mu, all orthogonal to P
    norm2 = Rat(0)
    for (i, j), c in coeffs.items():
        norm2 += c * table.get(i + q, j + p)
    if norm2 <= 0:
        raise AssertionError(f"nonpositive norm for P_{p},{q}")
    return EigenPolynomial(p=p, q=q, lam=lam, poly=poly, mu=mu_target, norm2=norm2)


def inner_product(f: BivarPoly, g: BivarPoly, table: MomentTable) -> CRat:
    """Exact integral of f * conj(g) against the invariant measure.

    conj(g) contributes conj(g_kl) Zbar^k Z^l on the real locus, so the
    expansion is sum over f_(i,j), g_(k,l) of f conj(g) m_(i+l, j+k).
    """
    if f.degree() + g.degree() > table.max_degree:
        raise MomentRangeExceeded(
            f"degree {f.degree()}+{g.degree()} exceeds table degree {table.max_degree}"
        )
    acc = CRat()
    for (i, j), cf in f.terms.items():
        for (k, l), cg in g.terms.items():
            m = table.get(i + l, j + k)
            if m:
                acc = acc + cf * cg.conj() * CRat(m)
    return acc


@dataclass(frozen=True)
class HkSpace:
    k: int
    basis: tuple          # EigenPolynomial, p from k down to 0
    sym: tuple            # BivarPoly, (P_pq + P_qp)/2 for p >= q
    antisym: tuple        # BivarPoly, (P_pq - P_qp)/(2i) for p > q
    distinct_eigenvalues: tuple

    @property
    def r_k(self) -> int:
        return len(self.distinct_eigenvalues)


def hk_space(k: int, lam, table: MomentTable = None) -> HkSpace:
    """All eigenpolynomials of total degree k plus their real forms."""
    if k < 0:
        raise ValueError("need k >= 0")
    lam = lam if isinstance(lam, Lambda) else Lambda(lam)
    basis = [solve_eigenpoly(p, k - p, lam) for p in range(k, -1, -1)]
    half = CRat(Rat(1, 2))
    neg_half_i = CRat(Rat(0), -Rat(1, 2))
    sym = []
    antisym = []
    for ep in basis:
        p, q = ep.p, ep.q
        if p < q:
            continue
        partner = next(e.poly for e in basis if e.p == q and e.q == p)
        sym.append((ep.poly + partner).scale(half))
        if p > q:
            antisym.append((ep.poly - partner).scale(neg_half_i))
    mus = sorted({(int(e.mu.numerator), int(e.mu.denominator)) for e in basis})
    distinct = tuple(Rat(n, d) for n, d in mus)
    expected = k // 2 + 1 if k else 1
    assert len(distinct) == expected, (k, distinct)
    return HkSpace(
        k=k,
        basis=tuple(basis),
        sym=tuple(sym),
        antisym=tuple(antisym),
        distinct_eigenvalues=distinct,
    )
