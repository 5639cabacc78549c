"""A small umbral interpreter over the commuting symbols x, q and J.

Expressions are finite sums of monomials c * x^a * q^b * J^e.  The two
vacuum symbols carry no value until :func:`evaluate` maps q^b to the family
coefficient phi_b(y) and J^e to the gamma weight C_e(R); exponents obey
J^p * J^q = J^(p+q).  Everything before evaluation is exact integer/rational
arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from . import families, matfun, modes
from .errors import DegreeCapExceeded

DEGREE_CAP = 64


class UmbralExpr:
    """Canonical finite sum of terms; immutable value type.

    ``terms`` maps exponent triples (xExp, qExp, jExp) to nonzero rational
    coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c:
                    a, b, e = key
                    clean[(int(a), int(b), int(e))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("UmbralExpr is immutable")

    @classmethod
    def constant(cls, c):
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, coeff, a=0, b=0, e=0):
        return cls({(a, b, e): coeff})

    @property
    def degree(self):
        return max((a + b + e for a, b, e in self.terms), default=0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, UmbralExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, UmbralExpr):
            other = UmbralExpr.constant(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return UmbralExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return UmbralExpr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UmbralExpr):
            other = UmbralExpr.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UmbralExpr):
            return umul(self, other)
        return UmbralExpr({k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n):
        return upow(self, n)

    def dump(self) -> str:
        """One 'coeff x^a q^b J^e' line per term, sorted by (a, b, e)."""
        lines = []
        for (a, b, e) in sorted(self.terms):
            c = self.terms[(a, b, e)]
            lines.append(f"{Fraction(c)} x^{a} q^{b} J^{e}")
        return "\n".join(lines)

    def __repr__(self):
        return f"UmbralExpr({self.terms!r})"


X = UmbralExpr.monomial(1, a=1)
QHAT = UmbralExpr.monomial(1, b=1)
JHAT = UmbralExpr.monomial(1, e=1)

# the multiplicative-operator state x + q - J
M_STATE = X + QHAT - JHAT


def umul(a: UmbralExpr, b: UmbralExpr) -> UmbralExpr:
    """Distributive product; exponents add componentwise."""
    out = {}
    for (a1, b1, e1), c1 in a.terms.items():
        for (a2, b2, e2), c2 in b.terms.items():
            k = (a1 + a2, b1 + b2, e1 + e2)
            out[k] = out.get(k, 0) + c1 * c2
    return UmbralExpr(out)


def upow(base: UmbralExpr, n: int, cap: int = DEGREE_CAP) -> UmbralExpr:
    if n < 0:
        raise ValueError("negative powers are not part of the algebra")
    if n > cap or base.degree * max(n, 1) > cap:
        raise DegreeCapExceeded(f"power {n} of a degree-{base.degree} expression exceeds cap {cap}")
    acc = UmbralExpr.constant(1)
    for _ in range(n):
        acc = umul(acc, base)
    return acc


def apply_multiplicative(e: UmbralExpr, cap: int = DEGREE_CAP) -> UmbralExpr:
    """Multiply by the raising operator x + q - J."""
    if e.degree + 1 > cap:
        raise DegreeCapExceeded(f"raising a degree-{e.degree} expression exceeds cap {cap}")
    return umul(e, M_STATE)


def apply_derivative_x(e: UmbralExpr) -> UmbralExpr:
    """Formal d/dx; terms without x vanish."""
    out = {}
    for (a, b, j), c in e.terms.items():
        if a > 0:
            out[(a - 1, b, j)] = out.get((a - 1, b, j), 0) + c * a
    return UmbralExpr(out)


def evaluate(e: UmbralExpr, R, fam, x, y, mode=None, formal=False):
    """Send each term c x^a q^b J^e to c * x^a * phi_b(y) * C_e(R) and sum.

    Returns a scalar for scalar R and a CMatrix for matrix R.
    """
    weights = matfun.weight_provider(R, mode, formal)
    xpow = {0: 1}
    phival = {}

    def xp(a):
        if a not in xpow:
            xpow[a] = xp(a - 1) * x
        return xpow[a]

    def ph(b):
        if b not in phival:
            phival[b] = families.phi_n(fam, b, y)
        return phival[b]

    if weights.is_matrix:
        acc = matfun.CMatrix.zero(weights.R.dim)
    else:
        acc = Fraction(0) if weights.mode.exact else 0
    for (a, b, j) in sorted(e.terms):
        c = e.terms[(a, b, j)]
        scalar = c * xp(a) * ph(b)
        if scalar:
            acc = acc + scalar * weights[j]
    return acc
