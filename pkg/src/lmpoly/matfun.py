"""Dense complex matrices and the gamma-ratio weights C_j(R).

C_j(R) = Gamma(R + (j+1)I) * [Gamma(2R + (2j+1)I)]^(-1) is the matrix
coefficient that carries the lambda structure of every construction in this
package.  Two rules are enforced throughout:

* matrix functions are evaluated through diagonalization only; a parameter
  whose eigenvector matrix is worse conditioned than ``DEFECTIVE_THRESHOLD``
  is rejected as (numerically) defective;
* the ratio is always computed as ``exp(loggamma(a) - loggamma(b))``, never
  as a quotient of gammas: the denominator alone overflows hardware floats
  near j ~ 80 while the ratio itself is tiny.

For scalar integer parameters r >= 1 the exact value is the factorial ratio
(r+j)!/(2r+2j)!; r = 0 is accepted only as the "formal" limit used by the
scalar-polynomial oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from . import modes
from .errors import Defective, ModeError, NotPositiveStable, PoleError

DEFECTIVE_THRESHOLD = 1e8


def _is_number(v):
    return isinstance(v, (int, float, complex, Fraction, mpmath.mpf, mpmath.mpc))


class CMatrix:
    """Immutable dense square matrix; entries are scalar-tower elements."""

    __slots__ = ("dim", "entries")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("CMatrix needs a nonempty square array of entries")
        for row in rows:
            for e in row:
                if not _is_number(e):
                    raise ValueError(f"bad matrix entry {e!r}")
                if isinstance(e, (float, complex)) and not cmath.isfinite(complex(e)):
                    raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *a):
        raise AttributeError("CMatrix is immutable")

    @classmethod
    def identity(cls, n, one=1):
        return cls(tuple(tuple(one if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n):
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_numpy(cls, arr):
        a = np.asarray(arr)
        return cls(tuple(tuple(complex(a[i, j]) for j in range(a.shape[1])) for i in range(a.shape[0])))

    def to_numpy(self):
        return np.array([[complex(e) for e in row] for row in self.entries], dtype=complex)

    def map(self, fn):
        return CMatrix(tuple(tuple(fn(e) for e in row) for row in self.entries))

    def __add__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return CMatrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                             for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self.map(lambda e: -e)

    def __mul__(self, scalar):
        if isinstance(scalar, CMatrix):
            return NotImplemented
        return self.map(lambda e: e * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self.map(lambda e: e / scalar)

    def __matmul__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        n = self.dim
        return CMatrix(tuple(tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(n))
                                   for j in range(n)) for i in range(n)))

    def __eq__(self, other):
        return isinstance(other, CMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"CMatrix({[list(r) for r in self.entries]!r})"

    def item(self):
        if self.dim != 1:
            raise ValueError("item() is only defined for 1x1 matrices")
        return self.entries[0][0]

    def fro_norm(self) -> float:
        return math.sqrt(float(sum(abs(complex(e)) ** 2 for row in self.entries for e in row)))

    def max_abs(self) -> float:
        return max(abs(complex(e)) for row in self.entries for e in row)


def _entry_to_json(e, exact):
    def side(v):
        if exact and isinstance(v, (int, Fraction)):
            return str(Fraction(v))
        return float(v)
    c = complex(e) if not isinstance(e, (int, Fraction)) else None
    if isinstance(e, (int, Fraction)):
        return [side(e), side(0)]
    return [c.real, c.imag]


def cmatrix_to_json(m: CMatrix, exact=False):
    """{"dim": N, "entries": [[[re, im], ...], ...]}, rationals as "p/q" strings in exact mode."""
    return {"dim": m.dim,
            "entries": [[_entry_to_json(e, exact) for e in row] for row in m.entries]}


def _parse_component(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def cmatrix_from_json(obj) -> CMatrix:
    dim = int(obj["dim"])
    entries = obj["entries"]
    if len(entries) != dim or any(len(r) != dim for r in entries):
        raise ValueError("entries do not match dim")
    rows = []
    for r in entries:
        row = []
        for pair in r:
            re, im = (_parse_component(pair[0]), _parse_component(pair[1]))
            if im == 0:
                row.append(re)
            else:
                row.append(complex(re, im))
        rows.append(row)
    return CMatrix(rows)


# ---------------------------------------------------------------------------
# eigendecomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigSystem:
    """Diagonalization R = P diag(eigenvalues) P^(-1), eigenvalues sorted by (Re, Im)."""

    eigenvalues: tuple
    P: CMatrix
    Pinv: CMatrix
    condition: float


def check_positive_stable(R):
    """Return sorted eigenvalues when every one has Re > 0, else raise.

    The boundary Re(w) = 0 is rejected: positive stability is strict.
    Accepts a CMatrix or a plain scalar.
    """
    if isinstance(R, CMatrix):
        w = np.linalg.eigvals(R.to_numpy())
        eigs = sorted((complex(v) for v in w), key=lambda z: (z.real, z.imag))
    else:
        eigs = [complex(R)]
    for w in eigs:
        if not w.real > 0.0:
            raise NotPositiveStable(w)
    return eigs


def eig_decompose(R: CMatrix, tol=None) -> EigSystem:
    """Diagonalize R, deterministically ordered; raise Defective when unsupported.

    The eigenvector matrix is column-normalized (unit 2-norm, largest entry
    rotated onto the positive real axis) so repeated runs give identical
    output.  ``tol`` bounds the reconstruction error ||P Pinv - I||_F and
    defaults to 64 * eps * dim * cond(P).
    """
    a = R.to_numpy()
    w, v = np.linalg.eig(a)
    order = sorted(range(len(w)), key=lambda i: (w[i].real, w[i].imag))
    w = w[order]
    v = v[:, order]
    for i in range(v.shape[1]):
        col = v[:, i]
        nrm = np.linalg.norm(col)
        if nrm > 0:
            col = col / nrm
        k = int(np.argmax(np.abs(col)))
        phase = col[k] / abs(col[k]) if col[k] != 0 else 1.0
        v[:, i] = col / phase
    cond = float(np.linalg.cond(v))
    if not math.isfinite(cond) or cond > DEFECTIVE_THRESHOLD:
        raise Defective(cond)
    vinv = np.linalg.inv(v)
    if tol is None:
        tol = 64 * np.finfo(float).eps * R.dim * cond
    recon = np.linalg.norm(v @ vinv - np.eye(R.dim), "fro")
    if recon > tol:
        raise Defective(cond, f"P*Pinv reconstruction error {recon:.3g} > {tol:.3g}")
    return EigSystem(tuple(complex(x) for x in w), CMatrix.from_numpy(v),
                     CMatrix.from_numpy(vinv), cond)


# ---------------------------------------------------------------------------
# complex log-gamma (Lanczos, g = 7, nine coefficients)
# ---------------------------------------------------------------------------

_LANCZOS_G = 7
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2 * math.pi)


def complex_log_gamma(z):
    """Principal-branch log Gamma(z) for complex z (hardware floats).

    Relative accuracy is ~1e-14 for Re(z) in [0.5, 200]; the reflection
    formula extends the domain to Re(z) < 0.5 away from the poles.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"log-gamma pole at z = {z.real:g}")
    if z.real < 0.5:
        # log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        return math.log(math.pi) - cmath.log(cmath.sin(cmath.pi * z)) - complex_log_gamma(1.0 - z)
    w = z - 1.0
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (w + k)
    t = w + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (w + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_weight_exact(r, j) -> Fraction:
    """C_j(r) = (r+j)!/(2r+2j)! for scalar integer r (r = 0 is the formal limit)."""
    r = int(r)
    j = int(j)
    if r < 0 or j < 0:
        raise ValueError("gamma_weight_exact needs r >= 0 and j >= 0")
    return Fraction(math.factorial(r + j), math.factorial(2 * r + 2 * j))


def _scalar_weight_f64(r, j):
    d = cmath.exp(complex_log_gamma(r + j + 1) - complex_log_gamma(2 * r + 2 * j + 1))
    if isinstance(r, complex) and r.imag != 0:
        return d
    return d.real


def _scalar_weight_mp(r, j):
    rm = modes.to_mp(r)
    return mpmath.exp(mpmath.loggamma(rm + j + 1) - mpmath.loggamma(2 * rm + 2 * j + 1))


def _weight_from_eig(eig: EigSystem, j) -> CMatrix:
    d = np.array([cmath.exp(complex_log_gamma(a + j + 1) - complex_log_gamma(2 * a + 2 * j + 1))
                  for a in eig.eigenvalues])
    p = eig.P.to_numpy()
    return CMatrix.from_numpy((p * d) @ eig.Pinv.to_numpy())


class GammaWeights:
    """Cached j -> C_j(R) access for one parameter R in one mode.

    Indexing returns a Fraction in exact mode, a float/complex for scalar R,
    and a CMatrix for matrix R.  Instances are produced by
    :func:`weight_provider` and shared; the memo dict relies on the GIL's
    atomic insert (concurrent readers, idempotent writers).
    """

    def __init__(self, R, mode=None, formal=False):
        self.R = R
        self.formal = bool(formal)
        self.is_matrix = isinstance(R, CMatrix)
        if mode is None:
            mode = modes.infer(R) if not self.is_matrix else modes.F64
        self.mode = mode
        self._memo = {}
        self._eig = None
        if self.is_matrix:
            if mode.exact:
                raise ModeError("exact mode requires a scalar integer parameter")
            if not formal:
                check_positive_stable(R)
            self._eig = eig_decompose(R)
        elif mode.exact:
            if not modes.is_rational(R) or Fraction(R).denominator != 1:
                raise ModeError("exact mode requires a scalar integer parameter")
            r = int(Fraction(R))
            if r <= 0 and not formal:
                raise NotPositiveStable(complex(r))
            if r < 0:
                raise ModeError("formal mode still needs r >= 0")
            self.R = r
        else:
            if not formal:
                check_positive_stable(R)

    def __getitem__(self, j):
        # mp values depend on the ambient precision, so key them by it
        key = (int(j), mpmath.mp.prec) if self.mode.kind == "mp" else int(j)
        got = self._memo.get(key)
        if got is None:
            got = self._memo.setdefault(key, self._compute(int(j)))
        return got

    def _compute(self, j):
        if self.is_matrix:
            return _weight_from_eig(self._eig, j)
        if self.mode.exact:
            return gamma_weight_exact(self.R, j)
        if modes.is_rational(self.R) and Fraction(self.R).denominator == 1 and int(self.R) >= 0:
            exact = gamma_weight_exact(int(self.R), j)
            return modes.coerce(exact, self.mode)
        if self.mode.kind == "mp":
            return _scalar_weight_mp(self.R, j)
        return _scalar_weight_f64(self.R, j)


@lru_cache(maxsize=256)
def _provider_cache(R, mode, formal):
    return GammaWeights(R, mode, formal)


def weight_provider(R, mode=None, formal=False) -> GammaWeights:
    """Shared, cached GammaWeights for (R, mode, formal)."""
    if mode is None:
        mode = modes.infer(R) if not isinstance(R, CMatrix) else modes.F64
    return _provider_cache(R, mode, bool(formal))


def gamma_weight(R, j):
    """C_j(R) for a positive stable parameter; CMatrix in, CMatrix out."""
    return weight_provider(R)[j]
