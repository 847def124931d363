"""Exact sparse polynomial arithmetic in two conjugate variables.

A polynomial in the commuting indeterminates Z and Zbar is stored as a
dictionary mapping exponent pairs (i, j) to Gaussian-rational coefficients,
i meaning the power of Z and j the power of Zbar.  Zero coefficients are
never stored; the zero polynomial has an empty map.  All arithmetic is
exact, which makes polynomial identity checks fully reliable: two
expressions are equal iff their difference has an empty term map.

The rational backend is gmpy2.mpq when available (much faster once the
moment recursion pushes numerators past a few hundred digits) and
fractions.Fraction otherwise.  Both expose .numerator/.denominator, so the
rest of the package only ever sees the alias `Rat`.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

    HAVE_GMPY2 = False

_RAT_TYPE = type(Rat(0))


def as_rat(x) -> "Rat":
    """Coerce ints, strings like '7/2', Fractions, or Rat to Rat."""
    if isinstance(x, _RAT_TYPE):
        return x
    if isinstance(x, str):
        if "/" in x:
            n, d = x.split("/", 1)
            return Rat(int(n), int(d))
        return Rat(int(x))
    if isinstance(x, float):
        raise TypeError("refusing float -> Rat; pass an int, string, or Rat")
    return Rat(x)


class CRat:
    """Gaussian rational a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, _RAT_TYPE) else as_rat(re)
        self.im = im if isinstance(im, _RAT_TYPE) else as_rat(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, CRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, _RAT_TYPE)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _crat(other)
        return CRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __sub__(self, other):
        other = _crat(other)
        return CRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _crat(other) - self

    def __mul__(self, other):
        other = _crat(other)
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _crat(other)
        den = other.re * other.re + other.im * other.im
        if not den:
            raise ZeroDivisionError("division by zero CRat")
        return CRat(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def conj(self) -> "CRat":
        return CRat(self.re, -self.im)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im > 0 else ''}{self.im}i)"


def _crat(x) -> CRat:
    if isinstance(x, CRat):
        return x
    if isinstance(x, complex):
        raise TypeError("refusing complex float -> CRat")
    return CRat(x)


def _order(key):
    # graded-lex: total degree first, then Z-degree; used by divexact and
    # anywhere a deterministic leading term is needed
    return (key[0] + key[1], key[0])


class BivarPoly:
    """Polynomial in Z, Zbar with CRat coefficients, sparse dict storage.

    Treat instances as immutable: every operation returns a fresh object
    and nothing in the package mutates `terms` after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                c = _crat(c)
                if c:
                    clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> "BivarPoly":
        return BivarPoly()

    @staticmethod
    def const(c) -> "BivarPoly":
        return BivarPoly({(0, 0): _crat(c)})

    @staticmethod
    def monomial(i: int, j: int, c=1) -> "BivarPoly":
        if i < 0 or j < 0:
            raise ValueError("negative exponent")
        return BivarPoly({(i, j): _crat(c)})

    # -- basic queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def coeff(self, i: int, j: int) -> CRat:
        return self.terms.get((i, j), CRat())

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        p = BivarPoly.__new__(BivarPoly)
        p.terms = out
        return p

    def __neg__(self):
        p = BivarPoly.__new__(BivarPoly)
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, CRat, _RAT_TYPE)):
            return self.scale(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                prod = c1 * c2
                s = out.get(key)
                s = prod if s is None else s + prod
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        p = BivarPoly.__new__(BivarPoly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def scale(self, c) -> "BivarPoly":
        c = _crat(c)
        if not c:
            return BivarPoly()
        p = BivarPoly.__new__(BivarPoly)
        p.terms = {k: v * c for k, v in self.terms.items()}
        return p

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = BivarPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus -------------------------------------------------------

    def partial(self, var: str) -> "BivarPoly":
        """Formal partial derivative; var is 'Z' or 'Zbar'."""
        if var == "Z":
            out = {
                (i - 1, j): c * i for (i, j), c in self.terms.items() if i
            }
        elif var == "Zbar":
            out = {
                (i, j - 1): c * j for (i, j), c in self.terms.items() if j
            }
        else:
            raise ValueError(f"unknown variable {var!r}")
        p = BivarPoly.__new__(BivarPoly)
        p.terms = out
        return p

    def euler(self) -> "BivarPoly":
        """Degree-weighting operator: the (i, j) term picks up factor i+j."""
        p = BivarPoly.__new__(BivarPoly)
        p.terms = {
            k: c * (k[0] + k[1]) for k, c in self.terms.items() if k != (0, 0)
        }
        return p

    def conj_swap(self) -> "BivarPoly":
        """Swap the roles of Z and Zbar and conjugate the coefficients.

        On the real locus Zbar = conj(Z) this is complex conjugation of the
        polynomial's values.
        """
        p = BivarPoly.__new__(BivarPoly)
        p.terms = {(j, i): c.conj() for (i, j), c in self.terms.items()}
        return p

    # -- evaluation -----------------------------------------------------

    def eval(self, z: complex) -> complex:
        """Evaluate with Z := z and Zbar := conj(z)."""
        return self.eval2(z, complex(z).conjugate())

    def eval2(self, z: complex, w: complex) -> complex:
        """Evaluate with Z := z, Zbar := w substituted independently.

        Horner in w inside each fixed Z-power group, then Horner in z over
        the groups; sparse exponent gaps handled by repeated squaring.
        """
        if not self.terms:
            return 0j
        groups: dict[int, list] = {}
        for (i, j), c in self.terms.items():
            groups.setdefault(i, []).append((j, c))
        acc = 0j
        prev_i = None
        for i in sorted(groups, reverse=True):
            inner = 0j
            prev_j = None
            for j, c in sorted(groups[i], reverse=True):
                if prev_j is None:
                    inner = c.to_complex()
                else:
                    inner = inner * w ** (prev_j - j) + c.to_complex()
                prev_j = j
            if prev_j:
                inner *= w**prev_j
            if prev_i is None:
                acc = inner
            else:
                acc = acc * z ** (prev_i - i) + inner
            prev_i = i
        if prev_i:
            acc *= z**prev_i
        return acc

    # -- exact division -------------------------------------------------

    def divexact(self, d: "BivarPoly") -> "BivarPoly":
        """Exact quotient self/d; raises ValueError if d does not divide.

        Single-divisor multivariate division under graded-lex order.  If at
        any step the leading term of the running remainder is not divisible
        by the leading term of d, that term can never be cancelled later
        (later steps only touch strictly smaller terms), so the remainder
        is nonzero and we abort immediately.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        d_lm = max(d.terms, key=_order)
        d_lc = d.terms[d_lm]
        rem = dict(self.terms)
        quot = {}
        while rem:
            lm = max(rem, key=_order)
            qi, qj = lm[0] - d_lm[0], lm[1] - d_lm[1]
            if qi < 0 or qj < 0:
                raise ValueError("not divisible: leading-term obstruction")
            qc = rem[lm] / d_lc
            quot[(qi, qj)] = qc
            for (i, j), c in d.terms.items():
                key = (i + qi, j + qj)
                s = rem.get(key, CRat()) - qc * c
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        p = BivarPoly.__new__(BivarPoly)
        p.terms = quot
        return p

    # -- serialization --------------------------------------------------

    def to_records(self) -> list:
        """JSON-ready list of {i, j, re_num, re_den, im_num, im_den}."""
        out = []
        for (i, j) in sorted(self.terms):
            c = self.terms[(i, j)]
            out.append(
                {
                    "i": i,
                    "j": j,
                    "re_num": int(c.re.numerator),
                    "re_den": int(c.re.denominator),
                    "im_num": int(c.im.numerator),
                    "im_den": int(c.im.denominator),
                }
            )
        return out

    @staticmethod
    def from_records(records) -> "BivarPoly":
        terms = {}
        for r in records:
            terms[(r["i"], r["j"])] = CRat(
                Rat(r["re_num"], r["re_den"]), Rat(r["im_num"], r["im_den"])
            )
        return BivarPoly(terms)

    def __repr__(self):
        if not self.terms:
            return "BivarPoly(0)"
        bits = []
        for (i, j) in sorted(self.terms, key=_order, reverse=True)[:8]:
            mono = "".join(
                s for s, e in (("Z", i), ("Zb", j)) for s in ([f"{s}^{e}"] if e > 1 else [s] if e == 1 else [])
            )
            bits.append(f"{self.terms[(i,j)]!r}*{mono}" if mono else f"{self.terms[(i,j)]!r}")
        tail = " + ..." if len(self.terms) > 8 else ""
        return "BivarPoly(" + " + ".join(bits) + tail + ")"


ZERO = BivarPoly.zero()
ONE = BivarPoly.const(1)
Z = BivarPoly.monomial(1, 0)
ZBAR = BivarPoly.monomial(0, 1)


# spec-facing functional aliases
def add(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    return p + q


def mul(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    return p * q


def partial(p: BivarPoly, var: str) -> BivarPoly:
    return p.partial(var)


def euler(p: BivarPoly) -> BivarPoly:
    return p.euler()


def evaluate(p: BivarPoly, z: complex) -> complex:
    return p.eval(z)


def conj_swap(p: BivarPoly) -> BivarPoly:
    return p.conj_swap()
