"""Directed-rounding interval arithmetic on MPFR endpoints.

Every value that depends on the irrational base beta is carried as a closed
interval [lo, hi] whose endpoints are MPFR floats rounded outward (lo toward
-inf, hi toward +inf).  Results are therefore certified enclosures: the true
real value always lies inside.  Precision is a per-interval bit count; mixed
operations use the larger operand precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

from .errors import PrecisionError

DEFAULT_BITS = 128
MAX_ESCALATIONS = 6

_CONTEXTS: dict[int, tuple] = {}


def _ctx(bits: int):
    """Cached (round-down, round-up) context pair at the given precision."""
    pair = _CONTEXTS.get(bits)
    if pair is None:
        down = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
        up = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
        pair = (down, up)
        _CONTEXTS[bits] = pair
    return pair


class Interval:
    """Closed real interval with outward-rounded MPFR endpoints."""

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo, hi, bits: int = DEFAULT_BITS):
        self.lo = lo
        self.hi = hi
        self.bits = bits

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, n: int, bits: int = DEFAULT_BITS) -> "Interval":
        down, up = _ctx(bits)
        return cls(down.add(n, 0), up.add(n, 0), bits)

    @classmethod
    def from_fraction(cls, f: Fraction, bits: int = DEFAULT_BITS) -> "Interval":
        down, up = _ctx(bits)
        return cls(down.div(f.numerator, f.denominator),
                   up.div(f.numerator, f.denominator), bits)

    @classmethod
    def from_fractions(cls, lo: Fraction, hi: Fraction, bits: int = DEFAULT_BITS) -> "Interval":
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        down, up = _ctx(bits)
        return cls(down.div(lo.numerator, lo.denominator),
                   up.div(hi.numerator, hi.denominator), bits)

    @classmethod
    def zero(cls, bits: int = DEFAULT_BITS) -> "Interval":
        return cls.from_int(0, bits)

    # ---- arithmetic ----------------------------------------------------

    def _coerce(self, other, bits):
        if isinstance(other, Interval):
            return other
        if isinstance(other, int):
            return Interval.from_int(other, bits)
        if isinstance(other, Fraction):
            return Interval.from_fraction(other, bits)
        return NotImplemented

    def __add__(self, other):
        bits = max(self.bits, getattr(other, "bits", self.bits))
        o = self._coerce(other, bits)
        if o is NotImplemented:
            return NotImplemented
        down, up = _ctx(bits)
        return Interval(down.add(self.lo, o.lo), up.add(self.hi, o.hi), bits)

    __radd__ = __add__

    def __sub__(self, other):
        bits = max(self.bits, getattr(other, "bits", self.bits))
        o = self._coerce(other, bits)
        if o is NotImplemented:
            return NotImplemented
        down, up = _ctx(bits)
        return Interval(down.sub(self.lo, o.hi), up.sub(self.hi, o.lo), bits)

    def __rsub__(self, other):
        o = self._coerce(other, self.bits)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.bits)

    def __mul__(self, other):
        bits = max(self.bits, getattr(other, "bits", self.bits))
        o = self._coerce(other, bits)
        if o is NotImplemented:
            return NotImplemented
        down, up = _ctx(bits)
        if self.lo >= 0 and o.lo >= 0:
            return Interval(down.mul(self.lo, o.lo), up.mul(self.hi, o.hi), bits)
        cands_lo = (down.mul(self.lo, o.lo), down.mul(self.lo, o.hi),
                    down.mul(self.hi, o.lo), down.mul(self.hi, o.hi))
        cands_hi = (up.mul(self.lo, o.lo), up.mul(self.lo, o.hi),
                    up.mul(self.hi, o.lo), up.mul(self.hi, o.hi))
        return Interval(min(cands_lo), max(cands_hi), bits)

    __rmul__ = __mul__

    def __truediv__(self, other):
        bits = max(self.bits, getattr(other, "bits", self.bits))
        o = self._coerce(other, bits)
        if o is NotImplemented:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        down, up = _ctx(bits)
        if self.lo >= 0 and o.lo > 0:
            return Interval(down.div(self.lo, o.hi), up.div(self.hi, o.lo), bits)
        cands_lo = (down.div(self.lo, o.lo), down.div(self.lo, o.hi),
                    down.div(self.hi, o.lo), down.div(self.hi, o.hi))
        cands_hi = (up.div(self.lo, o.lo), up.div(self.lo, o.hi),
                    up.div(self.hi, o.lo), up.div(self.hi, o.hi))
        return Interval(min(cands_lo), max(cands_hi), bits)

    def pow_int(self, n: int) -> "Interval":
        """n-th power for integer n >= 0; assumes a nonnegative interval for n >= 2."""
        if n < 0:
            raise ValueError("negative exponent not supported")
        if n == 0:
            return Interval.from_int(1, self.bits)
        if n >= 2 and self.lo < 0:
            raise ValueError("pow_int expects a nonnegative interval")
        down, up = _ctx(self.bits)
        return Interval(down.pow(self.lo, n), up.pow(self.hi, n), self.bits)

    # ---- queries ---------------------------------------------------------

    def width(self) -> float:
        _, up = _ctx(self.bits)
        return float(up.sub(self.hi, self.lo))

    def mid(self) -> float:
        return (float(self.lo) + float(self.hi)) / 2.0

    def lo_float(self) -> float:
        return float(self.lo)

    def hi_float(self) -> float:
        return float(self.hi)

    def contains(self, value) -> bool:
        """Exact containment test for int / Fraction arguments."""
        if isinstance(value, Interval):
            return self.lo <= value.lo and value.hi <= self.hi
        f = Fraction(value)
        lo = Fraction(*self.lo.as_integer_ratio())
        hi = Fraction(*self.hi.as_integer_ratio())
        return lo <= f <= hi

    def intersects(self, other: "Interval") -> bool:
        return max(self.lo, other.lo) <= min(self.hi, other.hi)

    def certainly_lt(self, other) -> bool:
        bound = other.lo if isinstance(other, Interval) else other
        return self.hi < bound

    def certainly_gt(self, other) -> bool:
        bound = other.hi if isinstance(other, Interval) else other
        return self.lo > bound

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r}, bits={self.bits})"


def bits_for_tolerance(tol: float, minimum: int = DEFAULT_BITS) -> int:
    """Working precision that comfortably resolves the requested width."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return max(minimum, int(math.ceil(-math.log2(tol))) + 32)


def refine(compute, tol: float, start_bits: int | None = None,
           max_escalations: int = MAX_ESCALATIONS) -> Interval:
    """Run compute(bits) at doubling precision until the result width meets tol.

    compute must be a pure function of the bit count.  Raises PrecisionError
    when the width target is still missed after the retry budget.
    """
    bits = start_bits if start_bits is not None else bits_for_tolerance(tol)
    for _ in range(max_escalations + 1):
        result = compute(bits)
        if result.width() <= tol:
            return result
        bits *= 2
    raise PrecisionError(
        f"interval width {result.width():.3e} above tolerance {tol:.3e} "
        f"after {max_escalations} precision doublings")
