"""Characteristic polynomial, dominant (Pisot) root, conjugates, growth constants.

The dominant root beta is isolated by bisection with exact rational arithmetic
and carried as a certified bracket of Fractions; downstream interval
computations convert the bracket with outward rounding.  Conjugate roots are
best-effort complex approximations with a residual certificate, used only for
diagnostics and the explicit-representation constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import RootFindingError
from .intervals import DEFAULT_BITS, Interval, bits_for_tolerance
from .numeration import NumerationSystem


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial X^d - a0*X^{d-1} - ... - a_{d-1} (big-endian coeffs)."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self) -> tuple[int, ...]:
        d = self.degree
        return tuple((d - i) * c for i, c in enumerate(self.coeffs[:-1]))

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self):
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            power = d - i
            term = "X" if power == 1 else f"X^{power}" if power else ""
            mag = abs(c)
            coef = "" if (mag == 1 and power) else str(mag)
            sep = "" if coef == "" or not term else "*"
            body = f"{coef}{sep}{term}" or str(mag)
            parts.append(("- " if c < 0 else "+ ") + body if parts else
                         ("-" if c < 0 else "") + body)
        return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class PisotResult:
    """Tri-state Pisot verdict with the evidence that produced it."""

    status: str                    # "pisot" | "not-pisot" | "unknown"
    method: str                    # "structural" | "numeric"
    irreducible: bool | None       # None = inconclusive
    conjugate_moduli: tuple[float, ...]


@dataclass(frozen=True)
class RootData:
    """Dominant-root bracket plus conjugate/growth-constant approximations."""

    beta_lo: Fraction
    beta_hi: Fraction
    conjugates: tuple            # mpmath mpc values, dominant root first
    b: tuple                     # growth constants of G_n = sum_j b_j beta_j^n
    precision_bits: int


def char_poly(system: NumerationSystem) -> CharPoly:
    return CharPoly((1,) + tuple(-c for c in system.a))


def _beta_bracket(system: NumerationSystem, width: Fraction) -> tuple[Fraction, Fraction]:
    """Certified dyadic bracket around the dominant root, refined on demand."""
    a0 = system.a[0]
    if system.d == 1:
        return Fraction(a0), Fraction(a0)
    cached = system._derived.get("beta_bracket")
    if cached is None:
        poly = char_poly(system)
        lo, hi = Fraction(a0), Fraction(a0 + 1)
        if not (poly.eval_fraction(lo) < 0 < poly.eval_fraction(hi)):
            raise RootFindingError(
                f"no sign change of {poly} on [{a0}, {a0 + 1}]; "
                "dominant-root bracketing expects non-increasing coefficients")
        cached = [lo, hi]
        system._derived["beta_bracket"] = cached
    poly = char_poly(system)
    lo, hi = cached
    while hi - lo > width:
        mid = (lo + hi) / 2
        if poly.eval_fraction(mid) < 0:
            lo = mid
        else:
            hi = mid
    cached[0], cached[1] = lo, hi
    return lo, hi


def dominant_root(system: NumerationSystem, tol) -> tuple[Fraction, Fraction]:
    """Bracket of width <= tol around the unique real root in [a0, a0 + 1]."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return _beta_bracket(system, tol)


def beta_interval(system: NumerationSystem, bits: int = DEFAULT_BITS) -> Interval:
    """Dominant root as a directed-rounding interval at the given precision."""
    lo, hi = _beta_bracket(system, Fraction(1, 2 ** (bits + 8)))
    return Interval.from_fractions(lo, hi, bits)


def _residual_bound(system: NumerationSystem, bits: int) -> float:
    return system.d * float(system.a[0] + 1) ** system.d * 2.0 ** (-bits / 2)


def conjugate_roots(system: NumerationSystem, tol: float = 1e-15):
    """All d roots of the characteristic polynomial, dominant real root first.

    Returns mpmath complex numbers computed at a tolerance-derived working
    precision; each root satisfies |P(root)| <= d*(a0+1)^d * 2^(-bits/2).
    """
    bits = bits_for_tolerance(tol)
    poly = char_poly(system)
    if system.d == 1:
        return [mpmath.mpc(system.a[0])]
    with mpmath.workprec(bits + 64):
        try:
            roots = mpmath.polyroots(list(poly.coeffs), maxsteps=200, extraprec=bits)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            raise RootFindingError(
                f"conjugate root iteration did not converge for {poly}: {exc}") from exc
        roots = [mpmath.mpc(r) for r in roots]
        residuals = [abs(mpmath.polyval(list(poly.coeffs), r)) for r in roots]
    bound = _residual_bound(system, bits)
    worst = max(float(r) for r in residuals)
    if worst > bound:
        raise RootFindingError(
            f"root residual {worst:.3e} exceeds certificate bound {bound:.3e} for {poly}")
    # positive coefficients make the companion matrix primitive, so the
    # largest-modulus root is real, simple and strictly dominant
    dominant = max(range(len(roots)), key=lambda i: abs(roots[i]))
    top = roots.pop(dominant)
    if abs(top.imag) > 2.0 ** (-bits // 2) or top.real <= 0:
        raise RootFindingError(
            f"dominant root of {poly} is not a positive real: {top}")
    roots.insert(0, mpmath.mpc(top.real))
    return roots


def _rational_roots(poly: CharPoly) -> list[int]:
    """Integer roots of a monic integer polynomial (candidates divide the constant term)."""
    const = poly.coeffs[-1]
    if const == 0:
        return [0]
    hits = []
    for p in range(1, abs(const) + 1):
        if abs(const) % p:
            continue
        for cand in (p, -p):
            acc = 0
            for c in poly.coeffs:
                acc = acc * cand + c
            if acc == 0:
                hits.append(cand)
    return hits


def _divides_poly(poly: tuple[int, ...], factor: tuple[int, ...]) -> bool:
    """Exact division test for monic integer polynomials (big-endian)."""
    rem = list(poly)
    k = len(factor) - 1
    while len(rem) > k:
        lead = rem[0]
        for i, f in enumerate(factor):
            rem[i] -= lead * f
        assert rem[0] == 0
        rem.pop(0)
    return all(c == 0 for c in rem)


def _irreducible(poly: CharPoly) -> bool | None:
    """Best-effort irreducibility over Q; None when the bounded search is inconclusive."""
    d = poly.degree
    if d == 1:
        return True
    if _rational_roots(poly):
        return False
    if d <= 3:
        # degree 2 or 3 with no rational root has no proper factorization
        return True
    # bounded search for monic integer factors of degree 2..d//2
    bound = 2 ** d * (1 + max(abs(c) for c in poly.coeffs))
    const = abs(poly.coeffs[-1])
    const_divisors = [p for p in range(1, const + 1) if const % p == 0]
    for deg in range(2, d // 2 + 1):
        if deg == 2:
            for v_abs in const_divisors:
                for v in (v_abs, -v_abs):
                    for u in range(-bound, bound + 1):
                        if _divides_poly(poly.coeffs, (1, u, v)):
                            return False
        else:
            # search space grows too fast beyond quadratic factors
            return None
    return True


def is_pisot(system: NumerationSystem, tol: float = 1e-15) -> PisotResult:
    """Dominant-root Pisot check: structural for non-increasing coefficients,
    otherwise a margin-based numeric test paired with an irreducibility probe."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if system.d == 1:
        return PisotResult("pisot", "structural", True, ())
    if system.nonincreasing:
        moduli = tuple(float(abs(r)) for r in conjugate_roots(system, tol)[1:])
        return PisotResult("pisot", "structural", None, moduli)
    roots = conjugate_roots(system, tol)
    moduli = tuple(float(abs(r)) for r in roots[1:])
    margin = max(tol, 1e-12) ** 0.5
    irreducible = _irreducible(char_poly(system))
    if all(m <= 1 - margin for m in moduli):
        if irreducible is True:
            return PisotResult("pisot", "numeric", True, moduli)
        return PisotResult("unknown", "numeric", irreducible, moduli)
    if any(m >= 1 + margin for m in moduli):
        return PisotResult("not-pisot", "numeric", irreducible, moduli)
    return PisotResult("unknown", "numeric", irreducible, moduli)


def b_coefficients(system: NumerationSystem, tol: float = 1e-15):
    """Growth constants b_j with G_n = sum_j b_j * beta_j^n.

    Each b_j = (beta_j^d - 1) / ((beta_j - 1) * P'(beta_j)); well defined since
    P(1) = 1 - sum(a) < 0 rules out a root at 1.
    """
    bits = bits_for_tolerance(tol)
    roots = conjugate_roots(system, tol)
    poly = char_poly(system)
    dcoeffs = list(poly.derivative())
    d = system.d
    out = []
    with mpmath.workprec(bits + 64):
        for r in roots:
            if d == 1:
                out.append(mpmath.mpc(1))
                continue
            num = r ** d - 1
            den = (r - 1) * mpmath.polyval(dcoeffs, r)
            out.append(num / den)
    return out


def reconstruct_g(system: NumerationSystem, n: int, tol: float = 1e-15) -> float:
    """Relative residual |G_n - sum_j b_j beta_j^n| / G_n at working precision."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    bits = bits_for_tolerance(tol)
    roots = conjugate_roots(system, tol)
    bs = b_coefficients(system, tol)
    gn = system.g(n)
    with mpmath.workprec(bits + 64):
        approx = mpmath.fsum(b * r ** n for b, r in zip(bs, roots))
        return float(abs(gn - approx) / gn)


def analyze_roots(system: NumerationSystem, tol: float = 1e-15) -> RootData:
    """Bundle bracket, conjugates and growth constants for reporting."""
    bits = bits_for_tolerance(tol)
    lo, hi = dominant_root(system, Fraction(tol))
    return RootData(lo, hi, tuple(conjugate_roots(system, tol)),
                    tuple(b_coefficients(system, tol)), bits)
