"""Numeric working modes: exact rationals, hardware floats, mpmath multiprecision.

Every construction in the package runs unchanged in three arithmetics:

* ``exact``  - ``fractions.Fraction``; restricted to scalar integer parameters
  and rational inputs, residuals are compared against literal zero.
* ``f64``    - hardware ``float`` / ``complex``.
* ``mp:<bits>`` - mpmath reals/complexes at a configurable precision.

A :class:`Mode` value decides how scalars are coerced and which relative
tolerance a verification report uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import ModeError


@dataclass(frozen=True)
class Mode:
    kind: str  # "exact" | "f64" | "mp"
    bits: int = 53

    def __post_init__(self):
        if self.kind not in ("exact", "f64", "mp"):
            raise ModeError(f"unknown mode kind {self.kind!r}")
        if self.kind == "mp" and self.bits < 24:
            raise ModeError("mp mode needs at least 24 bits")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def tolerance(self):
        """Relative tolerance for identity checks in this mode (0 in exact mode)."""
        if self.kind == "exact":
            return 0
        if self.kind == "f64":
            return 1e-10
        return float(mpmath.ldexp(1, -(self.bits // 2)))

    def __str__(self):
        return f"mp:{self.bits}" if self.kind == "mp" else self.kind


EXACT = Mode("exact")
F64 = Mode("f64")


def mp(bits: int) -> Mode:
    return Mode("mp", int(bits))


def parse_mode(text: str) -> Mode:
    """Parse 'exact', 'f64' or 'mp:<bits>'."""
    text = text.strip().lower()
    if text == "exact":
        return EXACT
    if text == "f64":
        return F64
    if text.startswith("mp:"):
        try:
            return mp(int(text[3:]))
        except ValueError:
            raise ModeError(f"bad precision in mode {text!r}") from None
    raise ModeError(f"unknown mode {text!r} (expected exact, f64 or mp:<bits>)")


def parse_scalar(text: str) -> Fraction:
    """Parse a CLI scalar: 'p/q' or a decimal literal, always exactly rational."""
    return Fraction(text.strip())


def is_rational(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def infer(*values) -> Mode:
    """EXACT when every value is an int/Fraction (matrices count as inexact)."""
    return EXACT if all(is_rational(v) for v in values) else F64


def coerce(value, mode: Mode):
    """Coerce one scalar into the mode's arithmetic.

    In mp mode the conversion happens at the *caller's* current mpmath
    precision, so wrap uses in ``mpmath.workprec``.
    """
    if mode.exact:
        if isinstance(value, float):
            raise ModeError("exact mode takes rational inputs, got a float")
        if not is_rational(value):
            raise ModeError(f"exact mode cannot hold {type(value).__name__}")
        return Fraction(value)
    if mode.kind == "f64":
        if isinstance(value, complex):
            return value
        return float(value)
    return to_mp(value)


def to_mp(value):
    """Exact-as-possible conversion to mpf/mpc at the current mpmath precision."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)
    if isinstance(value, complex):
        return mpmath.mpc(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return value
    return mpmath.mpf(value)
