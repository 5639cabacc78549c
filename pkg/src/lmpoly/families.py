"""Coefficient sequences phi_n(y) of the two-variable polynomial families.

Every built-in family has phi_n(y) = a_n * y^(e_n) with exact rational a_n
and phi_0 = 1:

    gould-hopper m  a_n = n!/(n/m)!        e_n = n/m   (0 unless m | n)
    hermite         gould-hopper with m = 2
    laguerre        a_n = (-1)^n / n!      e_n = n
    gen-laguerre m  a_n = n!/((n/m)!)^2    e_n = n/m   (0 unless m | n)
    trunc-exp       a_n = n!               e_n = n

plus finite custom tables.  The generating kernels are exp(y t^m), the
Bessel-Tricomi function C0(y t) (resp. C0(-y t^m)) and 1/(1 - y t).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DivergenceRegion, ZeroPhi0


@dataclass(frozen=True)
class PhiFamily:
    kind: str            # "gh" | "lag" | "glag" | "te" | "custom"
    m: int = 1
    table: tuple = ()    # custom only: tuple of (Fraction a_n, int e_n)
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("gh", "lag", "glag", "te", "custom"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind in ("gh", "glag") and self.m < 1:
            raise ValueError("family order m must be >= 1")
        if not self.label:
            object.__setattr__(self, "label", _default_label(self))

    def __str__(self):
        return self.label


def _default_label(fam):
    if fam.kind == "gh":
        return "hermite" if fam.m == 2 else f"gh:{fam.m}"
    if fam.kind == "glag":
        return f"glag:{fam.m}"
    if fam.kind == "lag":
        return "lag"
    if fam.kind == "te":
        return "te"
    return f"custom[{len(fam.table)}]"


def gould_hopper(m: int) -> PhiFamily:
    return PhiFamily("gh", m=m)


def hermite() -> PhiFamily:
    return PhiFamily("gh", m=2, label="hermite")


def laguerre() -> PhiFamily:
    return PhiFamily("lag")


def generalized_laguerre(m: int) -> PhiFamily:
    return PhiFamily("glag", m=m)


def truncated_exp() -> PhiFamily:
    return PhiFamily("te")


def custom(coeffs) -> PhiFamily:
    """Finite table [(a_0, e_0), ...]; requesting phi_n beyond it raises IndexError."""
    table = tuple((Fraction(a), int(e)) for a, e in coeffs)
    return PhiFamily("custom", table=table)


BUILTINS = ("gh:4", "hermite", "lag", "glag:2", "te")


def parse_family(text: str) -> PhiFamily:
    """CLI syntax: gh:m | hermite | lag | glag:m | te | custom:<path.json>."""
    text = text.strip()
    if text == "hermite":
        return hermite()
    if text == "lag":
        return laguerre()
    if text == "te":
        return truncated_exp()
    if text.startswith("gh:"):
        return gould_hopper(int(text[3:]))
    if text.startswith("glag:"):
        return generalized_laguerre(int(text[5:]))
    if text.startswith("custom:"):
        with open(text[7:], "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        return custom((Fraction(item["a"]), item["e"]) for item in obj["coeffs"])
    raise ValueError(f"unknown family spec {text!r}")


def phi_term(fam: PhiFamily, n: int):
    """(a_n, e_n) with phi_n(y) = a_n * y^(e_n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if fam.kind == "te":
        return Fraction(math.factorial(n)), n
    if fam.kind == "lag":
        return Fraction((-1) ** n, math.factorial(n)), n
    if fam.kind == "gh":
        if n % fam.m:
            return Fraction(0), 0
        k = n // fam.m
        return Fraction(math.factorial(n), math.factorial(k)), k
    if fam.kind == "glag":
        if n % fam.m:
            return Fraction(0), 0
        k = n // fam.m
        return Fraction(math.factorial(n), math.factorial(k) ** 2), k
    if n >= len(fam.table):
        raise IndexError(f"custom family table ends at n = {len(fam.table) - 1}, asked for {n}")
    return fam.table[n]


def phi_n(fam: PhiFamily, n: int, y):
    a, e = phi_term(fam, n)
    if not a:
        return a
    return a * y ** e


def _exp(v):
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return mpmath.exp(v)
    if isinstance(v, complex):
        return cmath.exp(v)
    return math.exp(v)


def _eps_for(v):
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return mpmath.mpf(2) ** (8 - mpmath.mp.prec)
    return 1e-17


def tricomi_c0(z, eps=None):
    """Bessel-Tricomi C0(z) = sum_r (-1)^r z^r / (r!)^2, entire."""
    if eps is None:
        eps = _eps_for(z)
    term = 1 + 0 * z
    acc = term
    r = 0
    while True:
        r += 1
        term = term * (-z) / (r * r)
        acc += term
        if abs(term) < eps * max(1, abs(acc)):
            return acc
        if r > 10_000:
            raise DivergenceRegion("tricomi_c0 did not converge")


def phi_gf(fam: PhiFamily, y, t, terms=None, closed=False):
    """phi(y, t): truncated series by default, the closed kernel with closed=True.

    The truncated-exponential kernel 1/(1 - y t) is geometric, so |y t| < 1
    is required in either path.
    """
    if fam.kind == "te" and abs(y * t) >= 1:
        raise DivergenceRegion(f"|y*t| = {abs(y * t)} >= 1 for the truncated-exponential kernel")
    if closed:
        if fam.kind == "te":
            return 1 / (1 - y * t)
        if fam.kind == "gh":
            return _exp(y * t ** fam.m)
        if fam.kind == "lag":
            return tricomi_c0(y * t)
        if fam.kind == "glag":
            return tricomi_c0(-(y * t ** fam.m))
        raise ValueError("custom families have no closed kernel")
    if terms is None:
        raise ValueError("series evaluation needs an explicit term count")
    acc = 0
    for n in range(terms):
        p = phi_n(fam, n, y)
        if p:
            acc += p * t ** n / math.factorial(n)
    return acc


def general_poly(fam: PhiFamily, n: int, x, y):
    """p_n(x, y) = sum_j C(n, j) phi_j(y) x^(n-j); p_0 = 1."""
    acc = 0
    for j in range(n + 1):
        p = phi_n(fam, j, y)
        if p:
            acc += math.comb(n, j) * p * x ** (n - j)
    return acc


def gamma_seq(fam: PhiFamily, N: int, y):
    """Reciprocal-series coefficients gamma_0(y) .. gamma_N(y).

    gamma_0 = 1/phi_0 and
    gamma_n = -(1/phi_0) * sum_{j=1..n} C(n, j) phi_j(y) gamma_{n-j}(y),
    so that sum_j C(n, j) phi_j gamma_{n-j} = [n == 0].
    """
    phi0 = phi_n(fam, 0, y)
    if not phi0:
        raise ZeroPhi0(f"phi_0({y}) = 0 for family {fam}")
    one = Fraction(1) if isinstance(phi0, (int, Fraction)) else 1.0
    gam = [one / phi0]
    for n in range(1, N + 1):
        s = 0
        for j in range(1, n + 1):
            p = phi_n(fam, j, y)
            if p:
                s += math.comb(n, j) * p * gam[n - j]
        gam.append(-s / phi0)
    return gam
