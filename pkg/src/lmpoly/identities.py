"""Executable identity checks for the lambda-matrix polynomial family.

Each verifier evaluates both sides of one identity at concrete parameters
and returns a :class:`VerifyReport`.  In exact mode a report passes only on
literal equality; the approximate modes compare relative residuals against
the mode tolerance.

The finite-difference summation formula is implemented with summation upper
bound n+1.  The bound stated with the original identity (n) already fails
at n = 0, where the difference of the degree-one values is plainly nonzero
while the sum is empty; verifiers evaluate both bounds and record which one
holds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import families, matfun, modes, polynomials, qlambda, umbral
from .errors import LmpError


@dataclass
class VerifyReport:
    identity: str
    params: dict
    max_abs_residual: float
    max_rel_residual: float
    passed: bool
    note: str = ""

    def as_json_obj(self):
        return {
            "identity": self.identity,
            "params": {k: str(v) for k, v in self.params.items()},
            "max_abs_residual": self.max_abs_residual,
            "max_rel_residual": self.max_rel_residual,
            "passed": self.passed,
            "note": self.note,
        }


def _norm(v) -> float:
    if isinstance(v, matfun.CMatrix):
        return v.fro_norm()
    return abs(complex(v))


class _Residuals:
    """Accumulates lhs/rhs pairs and turns them into a report."""

    def __init__(self):
        self.max_abs = 0.0
        self.max_rel = 0.0

    def add(self, lhs, rhs):
        if isinstance(lhs, matfun.CMatrix) or isinstance(rhs, matfun.CMatrix):
            diff = _norm(lhs - rhs)
        else:
            diff = abs(complex(lhs) - complex(rhs))
        scale = max(_norm(lhs), _norm(rhs), 1.0)
        self.max_abs = max(self.max_abs, diff)
        self.max_rel = max(self.max_rel, diff / scale)

    def report(self, identity, params, mode, note=""):
        tol = mode.tolerance()
        return VerifyReport(identity, params, self.max_abs, self.max_rel,
                            self.max_rel <= tol, note)


def _mode_of(R, *vals):
    if isinstance(R, matfun.CMatrix):
        return modes.F64
    return modes.infer(R, *vals)


# ---------------------------------------------------------------------------
# structural identities (exact in rational mode)
# ---------------------------------------------------------------------------

def verify_series_equality(n, x, y, R, fam, mode=None) -> VerifyReport:
    """Four-way agreement of series, convolution, umbral and determinant routes."""
    mode = mode or _mode_of(R, x, y)
    res = _Residuals()
    a = polynomials.lambda2v_series(n, x, y, R, fam, mode)
    res.add(a, polynomials.lambda2v_convolution(n, x, y, R, fam, mode))
    res.add(a, polynomials.lambda2v_umbral(n, x, y, R, fam, mode))
    if n <= polynomials.COST_GUARD_DEGREE:
        res.add(a, polynomials.determinant_form(n, x, y, R, fam, mode))
    return res.report("series-eq", {"family": fam, "n": n, "R": R, "x": x, "y": y}, mode)


def verify_derivative(n, y, R, fam, mode=None) -> VerifyReport:
    """d^j/dx^j of the coefficient form equals (n!/(n-j)!) times the lower index."""
    mode = mode or _mode_of(R, y)
    res = _Residuals()
    p = polynomials.to_xpoly(n, y, R, fam, mode)
    for j in range(1, n + 1):
        p = p.derivative()
        q = polynomials.to_xpoly(n - j, y, R, fam, mode)
        factor = math.factorial(n) // math.factorial(n - j)
        for ck, qk in zip(p.coeffs, q.coeffs):
            res.add(ck, factor * qk)
    return res.report("derivative", {"family": fam, "n": n, "R": R, "y": y}, mode)


def verify_shift(n, z, y, R, fam, x=None, mode=None) -> VerifyReport:
    """Taylor shift: value at x+z equals the binomial sum over lower indices."""
    mode = mode or _mode_of(R, z, y)
    xs = [x] if x is not None else [Fraction(1, 3), Fraction(-5, 7), Fraction(2)]
    res = _Residuals()
    for xv in xs:
        lhs = polynomials.lambda2v_series(n, xv + z, y, R, fam, mode)
        rhs = None
        for j in range(n + 1):
            term = (math.comb(n, j) * z ** j) * polynomials.lambda2v_series(n - j, xv, y, R, fam, mode)
            rhs = term if rhs is None else rhs + term
        res.add(lhs, rhs)
    return res.report("shift", {"family": fam, "n": n, "R": R, "y": y, "z": z}, mode)


def verify_double_shift(r, s, z, y, R, fam, x=None, mode=None) -> VerifyReport:
    """Double-index substitution formula with expansion point x and target z."""
    mode = mode or _mode_of(R, z, y)
    xs = [x] if x is not None else [Fraction(1, 2), Fraction(-3, 5)]
    res = _Residuals()
    for xv in xs:
        lhs = polynomials.lambda2v_series(r + s, z, y, R, fam, mode)
        rhs = None
        for nn in range(r + 1):
            for j in range(s + 1):
                term = (math.comb(r, nn) * math.comb(s, j) * (z - xv) ** (nn + j)) * \
                    polynomials.lambda2v_series(r + s - nn - j, xv, y, R, fam, mode)
                rhs = term if rhs is None else rhs + term
        res.add(lhs, rhs)
    return res.report("double-shift", {"family": fam, "r": r, "s": s, "R": R, "y": y, "z": z}, mode)


def _difference_sum(n, z, x, y, R, fam, mode, upper):
    rhs = None
    for j in range(1, upper + 1):
        term = (math.comb(n + 1, j) * z ** j) * polynomials.lambda2v_series(n + 1 - j, x, y, R, fam, mode)
        rhs = term if rhs is None else rhs + term
    if rhs is None:
        w = matfun.weight_provider(R, mode)
        rhs = polynomials._zero_like(w[0])
    return rhs


def verify_difference(n, z, y, R, fam, x=None, mode=None) -> VerifyReport:
    """Finite difference of the (n+1)-index value against the binomial sum.

    Passes with the corrected upper bound n+1; the note records whether the
    originally stated bound n also holds (it does not, for any n with
    z != 0).
    """
    mode = mode or _mode_of(R, z, y)
    xv = x if x is not None else Fraction(2, 3)
    lhs = polynomials.lambda2v_series(n + 1, xv + z, y, R, fam, mode) - \
        polynomials.lambda2v_series(n + 1, xv, y, R, fam, mode)
    corrected = _difference_sum(n, z, xv, y, R, fam, mode, n + 1)
    stated = _difference_sum(n, z, xv, y, R, fam, mode, n)
    res = _Residuals()
    res.add(lhs, corrected)
    stated_gap = _norm(lhs - stated) if isinstance(lhs, matfun.CMatrix) else abs(complex(lhs) - complex(stated))
    note = (f"corrected bound n+1 holds; stated bound n leaves gap {stated_gap:.3g} "
            f"(the omitted top term)")
    return res.report("difference", {"family": fam, "n": n, "R": R, "y": y, "z": z, "x": xv},
                      mode, note)


def verify_integral(n, z, y, R, fam, x=None, mode=None) -> VerifyReport:
    """Exact antiderivative over [x, x+z] against the corrected binomial sum / (n+1)."""
    mode = mode or _mode_of(R, z, y)
    xv = x if x is not None else Fraction(2, 3)
    anti = polynomials.to_xpoly(n, y, R, fam, mode).antiderivative()
    lhs = anti(xv + z) - anti(xv)
    rhs = _difference_sum(n, z, xv, y, R, fam, mode, n + 1)
    one = Fraction(1) if mode.exact else 1.0
    res = _Residuals()
    res.add(lhs, rhs * (one / (n + 1)))
    return res.report("integral", {"family": fam, "n": n, "R": R, "y": y, "z": z, "x": xv}, mode)


def verify_difference_and_integral(n, z, y, R, fam, x=None, mode=None):
    """Both finite-difference and integral checks; returns (difference, integral)."""
    return (verify_difference(n, z, y, R, fam, x, mode),
            verify_integral(n, z, y, R, fam, x, mode))


def verify_triangular_system(n, x, y, R, fam, mode=None) -> VerifyReport:
    """sum_j C(k, j) value_{k-j} gamma_j = one-variable value, for every k <= n."""
    mode = mode or _mode_of(R, x, y)
    gam = families.gamma_seq(fam, n, y)
    res = _Residuals()
    for k in range(n + 1):
        lhs = None
        for j in range(k + 1):
            if gam[j]:
                term = (math.comb(k, j) * gam[j]) * polynomials.lambda2v_series(k - j, x, y, R, fam, mode)
                lhs = term if lhs is None else lhs + term
        res.add(lhs, polynomials.lambda1v(k, x, R, mode))
    return res.report("triangular", {"family": fam, "n": n, "R": R, "x": x, "y": y}, mode)


def verify_determinant(n, x, y, R, fam, mode=None) -> VerifyReport:
    mode = mode or _mode_of(R, x, y)
    res = _Residuals()
    res.add(polynomials.determinant_form(n, x, y, R, fam, mode),
            polynomials.lambda2v_series(n, x, y, R, fam, mode))
    return res.report("determinant", {"family": fam, "n": n, "R": R, "x": x, "y": y}, mode)


def verify_monomiality(n_max, x, y, R, fam, mode=None) -> VerifyReport:
    """Raising, lowering and the composite number-operator identity on power states."""
    mode = mode or _mode_of(R, x, y)
    res = _Residuals()
    for n in range(n_max + 1):
        sn = polynomials._power_state(n)
        raised = umbral.evaluate(umbral.apply_multiplicative(sn), R, fam, x, y, mode=mode)
        res.add(raised, umbral.evaluate(polynomials._power_state(n + 1), R, fam, x, y, mode=mode))
        if n >= 1:
            lowered = umbral.evaluate(umbral.apply_derivative_x(sn), R, fam, x, y, mode=mode)
            res.add(lowered, n * umbral.evaluate(polynomials._power_state(n - 1), R, fam, x, y, mode=mode))
        composite = umbral.evaluate(umbral.apply_multiplicative(umbral.apply_derivative_x(sn)),
                                    R, fam, x, y, mode=mode)
        res.add(composite, n * umbral.evaluate(sn, R, fam, x, y, mode=mode))
    return res.report("monomiality", {"family": fam, "n_max": n_max, "R": R, "x": x, "y": y}, mode)


# ---------------------------------------------------------------------------
# generating-function truncation order
# ---------------------------------------------------------------------------

def _egf_residual(n_max, x, y, R, fam, t, bits):
    """|sum_{n<=n_max} value_n t^n/n! - exp(xt) phi(y,t) cos_R(sqrt t)|.

    Scalar parameters run in mpmath (the order fit at small t needs more
    headroom than f64 gives); matrix parameters run in f64, which is all the
    double-precision eigendecomposition supports anyway.
    """
    if isinstance(R, matfun.CMatrix):
        tf, xf, yf = float(t), float(x), float(y)
        lhs = None
        for n in range(n_max + 1):
            term = (tf ** n / math.factorial(n)) * \
                polynomials.lambda2v_series(n, xf, yf, R, fam, modes.F64)
            lhs = term if lhs is None else lhs + term
        w = matfun.weight_provider(R, modes.F64)
        cos_part = polynomials._zero_like(w[0])
        for j in range(0, 80):
            cos_part = cos_part + (((-1) ** j) * tf ** j / math.factorial(j)) * w[j]
        rhs = (math.exp(xf * tf) * families.phi_gf(fam, yf, tf, closed=True)) * cos_part
        return _norm(lhs - rhs), max(_norm(lhs), _norm(rhs), 1.0)
    with mpmath.workprec(bits):
        tm = modes.to_mp(t)
        xm = modes.to_mp(x)
        ym = modes.to_mp(y)
        exact = modes.is_rational(R) and modes.is_rational(x) and modes.is_rational(y) \
            and Fraction(R).denominator == 1
        lhs = mpmath.mpf(0)
        for n in range(n_max + 1):
            if exact:
                val = polynomials.lambda2v_series(n, x, y, int(R), fam, modes.EXACT)
                val = modes.to_mp(val)
            else:
                val = modes.to_mp(polynomials.lambda2v_series(n, float(x), float(y), R, fam, modes.F64))
            lhs += val * tm ** n / mpmath.factorial(n)
        w = matfun.weight_provider(R, modes.mp(bits) if not exact else modes.EXACT)
        cos_part = mpmath.mpf(0)
        j = 0
        while True:
            cj = modes.to_mp(w[j]) if exact else modes.to_mp(w[j])
            term = (-1) ** j * cj * tm ** j / mpmath.factorial(j)
            cos_part += term
            if abs(term) < mpmath.mpf(2) ** (-bits) * max(1, abs(cos_part)) and j > 2:
                break
            j += 1
            if j > 2000:
                break
        rhs = mpmath.exp(xm * tm) * families.phi_gf(fam, ym, tm, closed=True) * cos_part
        return float(abs(lhs - rhs)), float(max(abs(lhs), abs(rhs), 1))


def verify_egf(n_max, x, y, R, fam, t_samples=(0.1, 0.05), bits=192) -> VerifyReport:
    """Truncation order of the exponential generating relation.

    The residual of the degree-n_max partial sum against the closed kernel
    must shrink like t^(n_max+1): the fitted order log2(r(t)/r(t/2)) has to
    land within 0.5 of n_max+1 for every probe t.
    """
    expected = n_max + 1
    orders = []
    ok = True
    worst = 0.0
    for t in t_samples:
        r1, s1 = _egf_residual(n_max, x, y, R, fam, Fraction(t).limit_denominator(10 ** 6), bits)
        r2, _ = _egf_residual(n_max, x, y, R, fam, Fraction(t).limit_denominator(10 ** 6) / 2, bits)
        worst = max(worst, r1 / s1)
        if r1 == 0 and r2 == 0:
            orders.append(float("inf"))
            continue
        p = math.log2(r1 / r2) if r2 > 0 else float("inf")
        orders.append(p)
        if not (p == float("inf") or abs(p - expected) <= 0.5):
            ok = False
    note = "fitted orders " + ", ".join(f"{p:.3f}" for p in orders) + f" (expected {expected})"
    return VerifyReport("gf", {"family": fam, "n_max": n_max, "R": R, "x": x, "y": y,
                               "t_samples": t_samples},
                        worst, worst, ok, note)


def _ogf_residual(n_max, x, y, R, t, bits):
    with mpmath.workprec(bits):
        tm = modes.to_mp(t)
        exact = modes.is_rational(R) and Fraction(R).denominator == 1
        lhs = mpmath.mpf(0)
        for n in range(n_max + 1):
            val = polynomials.lambda_matrix_2var(n, x, y, int(R) if exact else R,
                                                 modes.EXACT if exact else modes.F64)
            lhs += modes.to_mp(val) * tm ** n
        geo = 1 / (1 - modes.to_mp(y) * tm)
        z = modes.to_mp(x) * tm * geo
        w = matfun.weight_provider(R, modes.EXACT if exact else modes.mp(bits))
        e0 = mpmath.mpf(0)
        j = 0
        while True:
            term = (-1) ** j * modes.to_mp(w[j]) * z ** j
            e0 += term
            if abs(term) < mpmath.mpf(2) ** (-bits) * max(1, abs(e0)) and j > 2:
                break
            j += 1
            if j > 2000:
                break
        rhs = geo * e0
        return float(abs(lhs - rhs)), float(max(abs(lhs), abs(rhs), 1))


def verify_ogf(n_max, x, y, R, t_samples=(0.05,), bits=192) -> VerifyReport:
    """Truncation order of the ordinary generating relation of the 2-variable values.

    Uses the geometric resummation with the e0 companion series; requires
    |y t| < 1.
    """
    expected = n_max + 1
    orders = []
    ok = True
    worst = 0.0
    for t in t_samples:
        tq = Fraction(t).limit_denominator(10 ** 6)
        if abs(y * tq) >= 1:
            raise LmpError(f"|y*t| >= 1 at t = {t}")
        r1, s1 = _ogf_residual(n_max, x, y, R, tq, bits)
        r2, _ = _ogf_residual(n_max, x, y, R, tq / 2, bits)
        worst = max(worst, r1 / s1)
        if r1 == 0 and r2 == 0:
            orders.append(float("inf"))
            continue
        p = math.log2(r1 / r2) if r2 > 0 else float("inf")
        orders.append(p)
        if not (p == float("inf") or abs(p - expected) <= 0.75):
            ok = False
    note = "fitted orders " + ", ".join(f"{p:.3f}" for p in orders) + f" (expected {expected})"
    return VerifyReport("gf-ordinary", {"n_max": n_max, "R": R, "x": x, "y": y,
                                        "t_samples": t_samples},
                        worst, worst, ok, note)


def verify_q_limit(n_max, x, y, R, eps=1e-6, rel_tol=1e-4) -> VerifyReport:
    """q-Hermite lambda values at q = 1 - eps against the classical Hermite family."""
    fam = families.hermite()
    res = _Residuals()
    worst_rel = 0.0
    ctx1 = qlambda.QContext(1 - eps)
    ctx2 = qlambda.QContext(1 - eps / 2)
    orders = []
    for n in range(n_max + 1):
        classical = polynomials.lambda2v_series(n, float(x), float(y), R, fam, modes.F64)
        v1 = qlambda.q_hermite_lambda(n, float(x), float(y), R, ctx1)
        v2 = qlambda.q_hermite_lambda(n, float(x), float(y), R, ctx2)
        scale = max(_norm(classical), 1.0)
        e1 = _norm(v1 - classical) / scale if isinstance(classical, matfun.CMatrix) \
            else abs(complex(v1) - complex(classical)) / scale
        e2 = _norm(v2 - classical) / scale if isinstance(classical, matfun.CMatrix) \
            else abs(complex(v2) - complex(classical)) / scale
        worst_rel = max(worst_rel, e1)
        if e1 > 1e-14 and e2 > 1e-14:
            orders.append(math.log2(e1 / e2))
    order_ok = all(p >= 0.75 for p in orders) if orders else True
    passed = worst_rel <= rel_tol and order_ok
    note = f"max rel err {worst_rel:.3g} at q = 1-{eps:g}"
    if orders:
        note += "; convergence orders in (1-q): " + ", ".join(f"{p:.2f}" for p in orders)
    return VerifyReport("q-limit", {"n_max": n_max, "R": R, "x": x, "y": y, "eps": eps},
                        worst_rel, worst_rel, passed, note)


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------

SUITE_NAMES = ("gf", "series-eq", "derivative", "shift", "double-shift", "difference",
               "integral", "determinant", "triangular", "monomiality", "q-limit")


def run_suite(name, fam, n_max, R, mode=None, seed=2024):
    """Run one named suite over a deterministic parameter sample."""
    rng = random.Random(seed)

    def q(lo=-9, hi=9):
        n = rng.randint(lo, hi)
        d = rng.randint(1, 9)
        return Fraction(n, d)

    reports = []
    if name == "gf":
        x, y = q(), q(1, 4)
        reports.append(verify_egf(min(n_max, 8), x, Fraction(1, 2), R, fam))
        reports.append(verify_ogf(min(n_max, 8), x, Fraction(1, 2), R))
    elif name == "series-eq":
        for n in range(n_max + 1):
            reports.append(verify_series_equality(n, q(), q(), R, fam, mode))
    elif name == "derivative":
        reports.append(verify_derivative(n_max, q(), R, fam, mode))
    elif name == "shift":
        for n in range(0, n_max + 1, max(1, n_max // 3)):
            reports.append(verify_shift(n, q(), q(), R, fam, mode=mode))
    elif name == "double-shift":
        r = n_max // 2
        s = n_max - r
        reports.append(verify_double_shift(r, s, q(), q(), R, fam, mode=mode))
    elif name == "difference":
        for n in (0, max(1, n_max // 2), n_max):
            reports.append(verify_difference(n, q(), q(), R, fam, mode=mode))
    elif name == "integral":
        for n in (0, max(1, n_max // 2), n_max):
            reports.append(verify_integral(n, q(), q(), R, fam, mode=mode))
    elif name == "determinant":
        for n in range(min(n_max, polynomials.COST_GUARD_DEGREE) + 1):
            reports.append(verify_determinant(n, q(), q(), R, fam, mode))
    elif name == "triangular":
        reports.append(verify_triangular_system(n_max, q(), q(), R, fam, mode))
    elif name == "monomiality":
        reports.append(verify_monomiality(n_max, q(), q(), R, fam, mode))
    elif name == "q-limit":
        reports.append(verify_q_limit(min(n_max, 8), q(), q(1, 4), R))
    else:
        raise LmpError(f"unknown suite {name!r} (choose from {', '.join(SUITE_NAMES)})")
    return reports


def run_suites(names, fam, n_max, R, mode=None, seed=2024):
    out = []
    for name in names:
        out.extend(run_suite(name, fam, n_max, R, mode, seed))
    return out
