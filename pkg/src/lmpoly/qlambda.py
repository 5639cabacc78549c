"""q-deformed arithmetic and the q-Hermite lambda-matrix polynomials.

The deformation parameter lives in a :class:`QContext` with 0 < q <= 1;
q = 1 is the classical limit and reproduces ordinary brackets, factorials,
binomials and the gamma function.  With rational q the integer-argument
path is exact; non-integer arguments go through the standard infinite
product for the q-gamma function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import matfun, modes
from .errors import LmpError, NonpositiveArgument


@dataclass(frozen=True)
class QContext:
    q: object  # Fraction for the exact path, float otherwise; 1 = classical limit

    def __post_init__(self):
        qv = self.q
        if isinstance(qv, float) and not (0.0 < qv <= 1.0):
            raise ValueError("q must satisfy 0 < q <= 1")
        if isinstance(qv, (int, Fraction)) and not (0 < Fraction(qv) <= 1):
            raise ValueError("q must satisfy 0 < q <= 1")

    @property
    def classical(self) -> bool:
        return self.q == 1

    @property
    def exact(self) -> bool:
        return modes.is_rational(self.q)

    def __str__(self):
        return f"q={self.q}"


def q_bracket(x, ctx: QContext):
    """[x]_q = (1 - q^x)/(1 - q); [x]_1 = x by continuity."""
    if ctx.classical:
        return x
    q = ctx.q
    if isinstance(x, int) or (modes.is_rational(x) and Fraction(x).denominator == 1):
        return (1 - q ** int(x)) / (1 - q)
    qf = float(q)
    return (1 - math.exp(float(x) * math.log(qf))) / (1 - qf)


@lru_cache(maxsize=4096)
def _q_factorial_cached(q, n):
    acc = Fraction(1) if modes.is_rational(q) else 1.0
    for k in range(1, n + 1):
        acc *= (1 - q ** k) / (1 - q)
    return acc


def q_factorial(n: int, ctx: QContext):
    """[n]_q! = [1]_q [2]_q ... [n]_q."""
    if n < 0:
        raise ValueError("q-factorial needs n >= 0")
    if ctx.classical:
        return math.factorial(n)
    return _q_factorial_cached(ctx.q, n)


def q_gamma(x, ctx: QContext):
    """q-gamma with Gamma_q(1) = 1 and Gamma_q(x+1) = [x]_q Gamma_q(x).

    Positive integers use the exact q-factorial recursion; other arguments
    use the product (1-q)^(1-x) prod_k (1-q^(k+1))/(1-q^(k+x)), truncated
    once the factors are within 1e-16 of one.
    """
    is_real = not isinstance(x, complex)
    if is_real and not float(x) > 0:
        raise NonpositiveArgument(f"q-gamma needs a positive argument, got {x}")
    if ctx.classical:
        return math.gamma(float(x)) if is_real else _complex_gamma(x)
    if modes.is_rational(x) and Fraction(x).denominator == 1:
        return q_factorial(int(x) - 1, ctx)
    return _q_gamma_product(complex(x), float(ctx.q), is_real)


def _complex_gamma(z):
    return cmath.exp(matfun.complex_log_gamma(z))


def _q_gamma_product(x, q, is_real):
    lead = cmath.exp((1 - x) * math.log(1 - q))
    acc = 1.0 + 0.0j
    logq = math.log(q)
    k = 0
    while True:
        factor = (1 - q ** (k + 1)) / (1 - cmath.exp((k + x) * logq))
        acc *= factor
        if abs(factor - 1) < 1e-16 and k > 4:
            break
        k += 1
        if k > 500_000:
            raise LmpError("q-gamma product did not converge (q too close to 1?)")
    val = lead * acc
    return val.real if is_real else val


@lru_cache(maxsize=16384)
def _q_binomial_cached(q, n, k):
    if q == 1:
        return math.comb(n, k)
    num = _q_factorial_cached(q, n)
    return num / (_q_factorial_cached(q, k) * _q_factorial_cached(q, n - k))


def q_binomial(n: int, k: int, ctx: QContext):
    """Gaussian binomial [n]_q! / ([k]_q! [n-k]_q!)."""
    if not 0 <= k <= n:
        raise IndexError(f"q-binomial needs 0 <= k <= n, got ({n}, {k})")
    return _q_binomial_cached(ctx.q, n, k)


def nwa_expand(symbols, n: int, ctx: QContext):
    """q-addition expansion of (s0 (+) s1 [(+) s2])^n.

    Returns {exponent tuple: coefficient}.  Two symbols give the Gaussian
    binomial law; three are grouped as (s0 (+) (s1 (+) s2)), matching the
    nested expansion used for the q-Hermite lambda polynomials.
    """
    if len(symbols) == 2:
        return {(r, n - r): q_binomial(n, r, ctx) for r in range(n + 1)}
    if len(symbols) == 3:
        out = {}
        for j in range(n + 1):
            outer = q_binomial(n, j, ctx)
            for r in range(n - j + 1):
                out[(j, r, n - j - r)] = outer * q_binomial(n - j, r, ctx)
        return out
    raise ValueError("nwa_expand takes 2 or 3 symbols")


def _hermite_vacuum(r: int, ctx: QContext, y):
    """theta_{q,r}: y^k [2k]_q!/[k]_q! for even r = 2k, zero for odd r."""
    if r % 2:
        return 0
    k = r // 2
    return q_factorial(2 * k, ctx) / q_factorial(k, ctx) * y ** k


def q_hermite(n: int, x, y, ctx: QContext):
    """H_{n,q}(x, y) = sum_k C(n, 2k)_q ([2k]_q!/[k]_q!) y^k x^(n-2k)."""
    acc = 0
    for k in range(n // 2 + 1):
        acc += q_binomial(n, 2 * k, ctx) * _hermite_vacuum(2 * k, ctx, y) * x ** (n - 2 * k)
    return acc


def q_gamma_weight(r, j: int, ctx: QContext):
    """Gamma_q(r+j+1)/Gamma_q(2r+2j+1) for scalar r; exact when r is a positive integer."""
    if modes.is_rational(r) and Fraction(r).denominator == 1:
        ri = int(r)
        if ri < 1:
            raise NonpositiveArgument("integer parameter must be >= 1")
        return q_factorial(ri + j, ctx) / q_factorial(2 * ri + 2 * j, ctx)
    num = q_gamma(complex(r) + j + 1 if isinstance(r, complex) else float(r) + j + 1, ctx)
    den = q_gamma(complex(2 * r) + 2 * j + 1 if isinstance(r, complex) else 2 * float(r) + 2 * j + 1, ctx)
    return num / den


def _q_weight_matrix(R: matfun.CMatrix, j: int, ctx: QContext) -> matfun.CMatrix:
    eig = matfun.eig_decompose(R)
    d = np.array([complex(q_gamma(a + j + 1, ctx)) / complex(q_gamma(2 * a + 2 * j + 1, ctx))
                  for a in eig.eigenvalues])
    p = eig.P.to_numpy()
    return matfun.CMatrix.from_numpy((p * d) @ eig.Pinv.to_numpy())


def q_hermite_lambda(n: int, x, y, R, ctx: QContext):
    """sum_j C(n, j)_q (-1)^j H_{n-j,q}(x, y) Gamma_q(R+(j+1)I) Gamma_q(2R+(2j+1)I)^(-1).

    Scalar integer R with rational q stays exact; matrix R goes through the
    eigendecomposition with the scalar q-gamma on each eigenvalue.
    """
    matfun.check_positive_stable(R)
    if isinstance(R, matfun.CMatrix):
        acc = matfun.CMatrix.zero(R.dim)
        for j in range(n + 1):
            h = q_hermite(n - j, x, y, ctx)
            acc = acc + (q_binomial(n, j, ctx) * (-1) ** j * h) * _q_weight_matrix(R, j, ctx)
        return acc
    acc = 0
    for j in range(n + 1):
        h = q_hermite(n - j, x, y, ctx)
        acc += q_binomial(n, j, ctx) * (-1) ** j * h * q_gamma_weight(R, j, ctx)
    return acc


def q_hermite_lambda_coeffs(n: int, y, R, ctx: QContext):
    """Coefficients (in x) of the scalar q-Hermite lambda polynomial.

    coeffs[a] multiplies x^a; exact Fractions for rational q, integer R.
    """
    if isinstance(R, matfun.CMatrix):
        raise ValueError("coefficient extraction needs scalar R")
    matfun.check_positive_stable(R)
    zero = Fraction(0) if ctx.exact and modes.is_rational(y) else 0.0
    coeffs = [zero] * (n + 1)
    for j in range(n + 1):
        base = q_binomial(n, j, ctx) * (-1) ** j * q_gamma_weight(R, j, ctx)
        m = n - j
        for k in range(m // 2 + 1):
            c = q_binomial(m, 2 * k, ctx) * _hermite_vacuum(2 * k, ctx, y)
            coeffs[m - 2 * k] = coeffs[m - 2 * k] + base * c
    return coeffs
