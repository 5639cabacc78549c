"""Constructions of the lambda-matrix polynomial families.

The central object is the two-variable general polynomial convolved with the
gamma weights C_j(R).  Four independent routes build it:

* the explicit series over the family polynomials,
* the convolution of the one-variable values with the phi sequence,
* evaluation of the umbral power state (x + q - J)^n,
* a determinant over the reciprocal-sequence triangle.

Exact cross-agreement of the four (rational mode) is the package's main
correctness instrument; see :mod:`lmpoly.identities`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import families, matfun, modes, umbral
from .errors import CostGuard, ModeError

COST_GUARD_DEGREE = 20


def _zero_like(w):
    if isinstance(w, matfun.CMatrix):
        return matfun.CMatrix.zero(w.dim)
    return w * 0


def _norm(v) -> float:
    if isinstance(v, matfun.CMatrix):
        return v.fro_norm()
    return abs(complex(v))


def cos_R(x, R, tol=1e-16, mode=None, terms=None, formal=False):
    """Associated cosine: sum_j (-1)^j C_j(R) x^(2j) / j!.

    Converges for every x (the weights decay super-factorially).  Adaptive
    truncation stops after three consecutive terms fall below ``tol`` times
    the largest partial-sum norm; exact mode needs an explicit term count.
    """
    w = matfun.weight_provider(R, mode, formal)
    if w.mode.exact:
        if terms is None:
            raise ModeError("exact cos_R needs an explicit term count")
        acc = Fraction(0)
        for j in range(terms):
            acc += Fraction((-1) ** j, math.factorial(j)) * x ** (2 * j) * w[j]
        return acc
    acc = _zero_like(w[0])
    running_max = 0.0
    small = 0
    x2 = x * x
    xp = 1
    j = 0
    while True:
        term = (Fraction((-1) ** j, math.factorial(j)) * xp) * w[j]
        acc = acc + term
        running_max = max(running_max, _norm(acc))
        if _norm(term) < tol * max(running_max, 1e-300):
            small += 1
            if small >= 3:
                return acc
        else:
            small = 0
        j += 1
        xp = xp * x2
        if terms is not None and j >= terms:
            return acc
        if j > 4096:
            return acc


def e0_R(z, R, tol=1e-18, mode=None, terms=None, formal=False):
    """sum_j (-1)^j C_j(R) z^j, the ordinary-generating-function companion of cos_R."""
    w = matfun.weight_provider(R, mode, formal)
    if w.mode.exact:
        if terms is None:
            raise ModeError("exact e0_R needs an explicit term count")
        return sum(((-1) ** j) * z ** j * w[j] for j in range(terms))
    acc = _zero_like(w[0])
    small = 0
    zp = 1
    j = 0
    running_max = 0.0
    while True:
        term = ((-1) ** j * zp) * w[j]
        acc = acc + term
        running_max = max(running_max, _norm(acc))
        if _norm(term) < tol * max(running_max, 1e-300):
            small += 1
            if small >= 3:
                return acc
        else:
            small = 0
        j += 1
        zp = zp * z
        if (terms is not None and j >= terms) or j > 4096:
            return acc


def scalar_lambda(n, x, y):
    """The matrix-free limit family: n! sum_j (-1)^j x^j y^(n-j) / ((2j)! (n-j)!)."""
    acc = 0
    for j in range(n + 1):
        c = Fraction((-1) ** j * math.factorial(n),
                     math.factorial(2 * j) * math.factorial(n - j))
        acc += c * x ** j * y ** (n - j)
    return acc


def lambda1v(n, x, R, mode=None, formal=False):
    """One-variable value: sum_j C(n, j) (-1)^j C_j(R) x^(n-j)."""
    w = matfun.weight_provider(R, mode, formal)
    acc = _zero_like(w[0])
    for j in range(n + 1):
        acc = acc + (math.comb(n, j) * (-1) ** j * x ** (n - j)) * w[j]
    return acc


def lambda_matrix_2var(n, x, y, R, mode=None, formal=False):
    """Two-variable value: sum_j C(n, j) (-1)^j C_j(R) x^j y^(n-j).

    The one-variable family is the x = 1 slice: lambda1v(n, x, R) equals
    lambda_matrix_2var(n, 1, x, R).
    """
    w = matfun.weight_provider(R, mode, formal)
    acc = _zero_like(w[0])
    for j in range(n + 1):
        acc = acc + (math.comb(n, j) * (-1) ** j * x ** j * y ** (n - j)) * w[j]
    return acc


# ---------------------------------------------------------------------------
# the four routes
# ---------------------------------------------------------------------------

def lambda2v_series(n, x, y, R, fam, mode=None, formal=False):
    """Explicit series: sum_j C(n, j) (-1)^j p_{n-j}(x, y) C_j(R)."""
    w = matfun.weight_provider(R, mode, formal)
    acc = _zero_like(w[0])
    for j in range(n + 1):
        p = families.general_poly(fam, n - j, x, y)
        acc = acc + (math.comb(n, j) * (-1) ** j * p) * w[j]
    return acc


def lambda2v_convolution(n, x, y, R, fam, mode=None, formal=False):
    """Convolution route: sum_j C(n, j) lambda1v_j(x) phi_{n-j}(y)."""
    w = matfun.weight_provider(R, mode, formal)
    acc = _zero_like(w[0])
    for j in range(n + 1):
        p = families.phi_n(fam, n - j, y)
        if p:
            acc = acc + (math.comb(n, j) * p) * lambda1v(j, x, R, mode, formal)
    return acc


@lru_cache(maxsize=None)
def _power_state(n: int) -> umbral.UmbralExpr:
    return umbral.upow(umbral.M_STATE, n)


def lambda2v_umbral(n, x, y, R, fam, mode=None, formal=False):
    """Umbral route: evaluate the expanded power state (x + q - J)^n."""
    return umbral.evaluate(_power_state(n), R, fam, x, y, mode=mode, formal=formal)


# ---------------------------------------------------------------------------
# coefficient form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XPoly:
    """Polynomial in x with fixed (y, R, family); coeffs[k] multiplies x^k."""

    n: int
    y: object
    R: object
    family: object
    coeffs: tuple

    def __call__(self, x):
        acc = _zero_like(self.coeffs[-1])
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "XPoly":
        if self.n == 0:
            return XPoly(0, self.y, self.R, self.family, (_zero_like(self.coeffs[0]),))
        cs = tuple(k * self.coeffs[k] for k in range(1, self.n + 1))
        return XPoly(self.n - 1, self.y, self.R, self.family, cs)

    def antiderivative(self) -> "XPoly":
        one = Fraction(1)
        cs = (_zero_like(self.coeffs[0]),) + tuple(
            self.coeffs[k] * (one / (k + 1)) for k in range(self.n + 1))
        return XPoly(self.n + 1, self.y, self.R, self.family, cs)

    def scalar_coeffs(self):
        out = []
        for c in self.coeffs:
            out.append(c.item() if isinstance(c, matfun.CMatrix) else c)
        return out


def to_xpoly(n, y, R, fam, mode=None, formal=False) -> XPoly:
    """Collect the series route by powers of x.

    c_{n-j-s} accumulates C(n, j) (-1)^j C_j(R) * C(n-j, s) phi_s(y); the
    leading coefficient is always phi_0(y) C_0(R).
    """
    w = matfun.weight_provider(R, mode, formal)
    coeffs = [_zero_like(w[0]) for _ in range(n + 1)]
    for j in range(n + 1):
        sign = (-1) ** j
        wj = w[j]
        for s in range(n - j + 1):
            p = families.phi_n(fam, s, y)
            if p:
                coeffs[n - j - s] = coeffs[n - j - s] + (math.comb(n, j) * sign * math.comb(n - j, s) * p) * wj
    return XPoly(n, y, R, fam, tuple(coeffs))


# ---------------------------------------------------------------------------
# determinant route
# ---------------------------------------------------------------------------

def _hessenberg_det(h):
    """Determinant of an upper Hessenberg matrix (list of rows), O(m^2).

    Expansion along last columns: with D_k the leading k x k minor,
    D_k = h[k-1][k-1] D_{k-1}
          + sum_i (-1)^(k-1-i) h[i][k-1] (prod_{j=i+1..k-1} h[j][j-1]) D_i.
    Division-free, so it stays exact over Fractions.
    """
    m = len(h)
    if m == 0:
        return Fraction(1)
    dets = [Fraction(1)]
    for k in range(1, m + 1):
        acc = h[k - 1][k - 1] * dets[k - 1]
        sub = 1
        sign = -1
        for i in range(k - 2, -1, -1):
            sub = sub * h[i + 1][i]
            acc = acc + sign * h[i][k - 1] * sub * dets[i]
            sign = -sign
        dets.append(acc)
    return dets[m]


def determinant_form(n, x, y, R, fam, mode=None, formal=False):
    """Evaluate the determinant representation.

    The (n+1) x (n+1) matrix has the gamma-ratio constant and the
    one-variable values in its first row and the binomially weighted
    reciprocal-sequence triangle below; only the first row is matrix-valued,
    so Laplace expansion along it leaves scalar cofactors.  Each cofactor
    factors as gamma_0^c times an upper Hessenberg determinant.
    """
    if n > COST_GUARD_DEGREE:
        raise CostGuard(f"determinant route capped at degree {COST_GUARD_DEGREE}, asked for {n}")
    gam = families.gamma_seq(fam, n, y)
    w = matfun.weight_provider(R, mode, formal)
    lead = Fraction(1) if isinstance(gam[0], (int, Fraction)) else 1.0
    if n == 0:
        return w[0] * (lead / gam[0])
    row0 = [w[0]] + [lambda1v(c, x, R, mode, formal) for c in range(1, n + 1)]
    acc = _zero_like(w[0])
    for c in range(n + 1):
        block = [[math.comb(c + 1 + b, c + a) * gam[b - a + 1] if 0 <= b - a + 1 else 0
                  for b in range(n - c)] for a in range(n - c)]
        minor = gam[0] ** c * _hessenberg_det(block)
        acc = acc + ((-1) ** c * minor) * row0[c]
    return acc * ((-1) ** n * lead / gam[0] ** (n + 1))
