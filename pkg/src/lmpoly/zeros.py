"""Zeros datasets behind the figure pipelines.

Root finding is simultaneous Aberth-Ehrlich iteration in mpmath, seeded by
companion-matrix eigenvalues at hardware precision when the coefficients
survive conversion and by Bini-style annulus points (upper convex hull of
(k, log|c_k|)) otherwise.  Coefficients of the high-degree instances span
roughly forty orders of magnitude, so they are built as exact rationals
whenever the parameter is an integer and converted to the working precision
exactly once, before iterating.

Default precision is 128 bits (256 beyond degree 30) with automatic
doubling whenever the relative residual bound 1e-8 is not met.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import families, matfun, modes, polynomials, qlambda
from .errors import (DegenerateLeadingCoefficient, LmpError, PrecisionInsufficient)

RESIDUAL_BOUND = 1e-8
REAL_ZERO_TOL = 1e-8
CLUSTER_TOL = 1e-6
MAX_BITS = 4096


@dataclass(frozen=True)
class ZeroSet:
    """All roots of one polynomial instance, sorted by (Re, Im)."""

    n: int
    family: str
    R: object
    y: object
    roots: tuple          # complex, with multiplicity
    residuals: tuple      # per-root |p(z)| / (max|c| * max(1, |z|)^n)
    precision_bits: int

    def real_roots(self):
        return [z.real for z in self.roots
                if abs(z.imag) <= REAL_ZERO_TOL * max(1.0, abs(z.real))]


def default_bits(n: int) -> int:
    return 256 if n > 30 else 128


def _to_mp_coeff(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
    if isinstance(c, complex):
        return mpmath.mpc(c)
    return mpmath.mpf(c)


def _companion_seeds(cs):
    """Hardware-precision companion-matrix eigenvalues, or None if unusable."""
    if len(cs) - 1 > 60:
        return None
    try:
        scale = max(abs(c) for c in cs)
        arr = np.array([float(mpmath.nstr(c.real / scale, 17)) +
                        1j * float(mpmath.nstr(c.imag / scale, 17))
                        if isinstance(c, mpmath.mpc)
                        else float(c / scale) for c in cs], dtype=complex)
    except (OverflowError, ValueError):
        return None
    if not np.all(np.isfinite(arr)) or arr[-1] == 0:
        return None
    seeds = np.roots(arr[::-1])
    if not np.all(np.isfinite(seeds)):
        return None
    out = [mpmath.mpc(z) for z in seeds]
    # Aberth needs pairwise-distinct starting points
    for i in range(len(out)):
        for j in range(i):
            if abs(out[i] - out[j]) < mpmath.mpf("1e-12"):
                out[i] += mpmath.mpc(0, 1e-6 * (i + 1))
    return out


def _annulus_seeds(cs):
    """Bini starting points from the upper convex hull of (k, log|c_k|)."""
    n = len(cs) - 1
    pts = []
    for k, c in enumerate(cs):
        a = abs(c)
        pts.append((k, mpmath.log(a) if a != 0 else mpmath.mpf("-1e9")))

    hull = []  # upper convex hull, left to right
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    seeds = []
    two_pi = 2 * mpmath.pi
    for (k1, v1), (k2, v2) in zip(hull, hull[1:]):
        m = k2 - k1
        r = mpmath.exp((v1 - v2) / m)
        for i in range(m):
            theta = two_pi * i / m + two_pi * k1 / max(n, 1) + mpmath.mpf("0.7")
            seeds.append(r * mpmath.mpc(mpmath.cos(theta), mpmath.sin(theta)))
    return seeds


def _horner_pair(cs, z):
    """(p(z), p'(z)) in one pass."""
    p = cs[-1]
    dp = mpmath.mpf(0)
    for c in cs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(cs, seeds, bits, max_iter=500):
    eps = mpmath.mpf(2) ** (8 - bits)
    z = list(seeds)
    n = len(z)
    for _ in range(max_iter):
        worst = mpmath.mpf(0)
        for i in range(n):
            p, dp = _horner_pair(cs, z[i])
            if p == 0:
                continue
            if dp == 0:
                z[i] += eps + abs(z[i]) * eps
                worst = mpmath.inf
                continue
            newton = p / dp
            s = mpmath.mpf(0)
            for j in range(n):
                if j != i:
                    d = z[i] - z[j]
                    if d == 0:
                        d = eps
                    s += 1 / d
            denom = 1 - newton * s
            step = newton if denom == 0 else newton / denom
            z[i] -= step
            rel = abs(step) / (1 + abs(z[i]))
            if rel > worst:
                worst = rel
        if worst <= eps:
            break
    return z


def _cluster(zs, scale):
    """Replace mutually close roots by their centroid (reported with multiplicity)."""
    tol = CLUSTER_TOL * max(1.0, scale)
    m = len(zs)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(zs[i] - zs[j]) < tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(zs[i])
    out = []
    for members in groups.values():
        c = sum(members) / len(members)
        out.extend([c] * len(members))
    return out


def roots(poly, precision_bits=128) -> ZeroSet:
    """All roots of a scalar-coefficient polynomial with residual certificates.

    ``poly`` is an XPoly with 1x1/scalar coefficients or a plain coefficient
    sequence (index k multiplies x^k).  Raises PrecisionInsufficient when
    the relative residual bound is not met at the requested precision.
    """
    if isinstance(poly, polynomials.XPoly):
        cs = poly.scalar_coeffs()
        meta = (poly.n, str(poly.family), poly.R, poly.y)
    else:
        cs = list(poly)
        meta = (len(cs) - 1, "", None, None)
    if len(cs) == 0 or not cs[-1]:
        raise DegenerateLeadingCoefficient("leading coefficient is zero")
    n = len(cs) - 1
    if n == 0:
        return ZeroSet(0, meta[1], meta[2], meta[3], (), (), precision_bits)

    zero_mult = 0
    while not cs[zero_mult]:
        zero_mult += 1
    work = cs[zero_mult:]

    with mpmath.workprec(precision_bits + 32):
        mpc_coeffs = [_to_mp_coeff(c) for c in work]
        found = []
        if len(work) > 1:
            seeds = _companion_seeds(mpc_coeffs)
            if seeds is None:
                seeds = _annulus_seeds(mpc_coeffs)
            found = _aberth(mpc_coeffs, seeds, precision_bits)
        all_roots = [mpmath.mpc(0)] * zero_mult + list(found)
        scale = max((float(abs(z)) for z in all_roots), default=0.0)
        all_roots = _cluster(all_roots, scale)
        maxc = max(abs(c) for c in mpc_coeffs)
        residuals = []
        for z in all_roots:
            pz = _horner_pair([_to_mp_coeff(c) for c in cs], z)[0]
            residuals.append(float(abs(pz) / (maxc * max(1, abs(z)) ** n)))
    order = sorted(range(n), key=lambda i: (float(all_roots[i].real), float(all_roots[i].imag)))
    zs = tuple(complex(all_roots[i]) for i in order)
    rs = tuple(residuals[i] for i in order)
    if rs and max(rs) > RESIDUAL_BOUND:
        raise PrecisionInsufficient(max(rs), precision_bits)
    return ZeroSet(n, meta[1], meta[2], meta[3], zs, rs, precision_bits)


def _escalate(build_poly, precision_bits):
    bits = precision_bits
    while True:
        try:
            return roots(build_poly, bits)
        except PrecisionInsufficient:
            if bits >= MAX_BITS:
                raise
            bits = min(2 * bits, MAX_BITS)


def zeros_of_lambda(fam, n, R, y, precision_bits=None) -> ZeroSet:
    """Roots of the degree-n instance for scalar R > 0.

    Integer R keeps the coefficient construction exact; precision escalates
    automatically when the residual bound fails.
    """
    if isinstance(R, matfun.CMatrix):
        raise LmpError("zeros need a scalar parameter")
    matfun.check_positive_stable(R)
    bits = precision_bits or default_bits(n)
    exactish = modes.is_rational(R) and Fraction(R).denominator == 1
    mode = modes.EXACT if exactish and modes.is_rational(y) else modes.F64
    xp = polynomials.to_xpoly(n, y if mode.exact else float(y), R, fam, mode)
    zs = _escalate(xp, bits)
    return ZeroSet(zs.n, str(fam), R, y, zs.roots, zs.residuals, zs.precision_bits)


def zeros_of_q_hermite_lambda(n, R, y, ctx: qlambda.QContext, precision_bits=None) -> ZeroSet:
    """Roots of the q-Hermite lambda instance (scalar R)."""
    bits = precision_bits or default_bits(n)
    cs = qlambda.q_hermite_lambda_coeffs(n, y, R, ctx)
    zs = _escalate(cs, bits)
    return ZeroSet(zs.n, f"q-hermite[{ctx}]", R, y, zs.roots, zs.residuals, zs.precision_bits)


def real_zeros_table(fam, R, y, n_range, precision_bits=None):
    """Rows (n, x) for every real root, n sweeping the inclusive range."""
    rows = []
    for n in n_range:
        zs = zeros_of_lambda(fam, n, R, y, precision_bits)
        rows.extend((n, x) for x in zs.real_roots())
    return rows


def zero_stacks(fam, R, y, n_range, precision_bits=None):
    """Rows (n, re, im) of all roots, stacked over the inclusive n range."""
    rows = []
    for n in n_range:
        zs = zeros_of_lambda(fam, n, R, y, precision_bits)
        rows.extend((n, z.real, z.imag) for z in zs.roots)
    return rows


def surface_grid(fam, n, R, x_range, y_range, resolution):
    """Row-major (x, y, value) samples of the series route on a rectangle.

    Values are real for real scalar parameters; ``resolution`` counts the
    points per axis, endpoints included.
    """
    if isinstance(R, matfun.CMatrix):
        raise LmpError("surface grids need a scalar parameter")
    x0, x1 = (float(x_range[0]), float(x_range[1]))
    y0, y1 = (float(y_range[0]), float(y_range[1]))
    step = max(resolution - 1, 1)
    rows = []
    for i in range(resolution):
        x = x0 + (x1 - x0) * i / step
        for j in range(resolution):
            y = y0 + (y1 - y0) * j / step
            v = polynomials.lambda2v_series(n, x, y, R, fam, modes.F64)
            rows.append((x, y, float(v.real) if isinstance(v, complex) else float(v)))
    return rows


def q_surface_grid(n, R, ctx: qlambda.QContext, x_range, y_range, resolution):
    """Row-major (x, y, value) samples of the q-Hermite lambda polynomial."""
    x0, x1 = (float(x_range[0]), float(x_range[1]))
    y0, y1 = (float(y_range[0]), float(y_range[1]))
    step = max(resolution - 1, 1)
    rows = []
    for i in range(resolution):
        x = x0 + (x1 - x0) * i / step
        for j in range(resolution):
            y = y0 + (y1 - y0) * j / step
            v = qlambda.q_hermite_lambda(n, x, y, R, ctx)
            rows.append((x, y, float(v.real) if isinstance(v, complex) else float(v)))
    return rows
