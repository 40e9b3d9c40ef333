"""Cylinder measures and the (extended) Monna maps into [0, 1).

A cylinder Z(eps_0, ..., eps_{K-1}) collects all regular digit sequences with
the given prefix.  Its invariant measure is

    mu(Z) = [c_0 beta^{d-1} + c_1 beta^{d-2} + ... + c_{d-1}] / (beta^K * Q(beta))

with Q(beta) = beta^{d-1} + ... + 1 and integer coefficients
c_j = F_{K,j} - a_0 F_{K,j-1} - ... - a_{j-1} F_{K,0}, where F_{K,r} counts the
integers below G_{K+r} whose expansion starts with the prefix.  The classical
Monna map phi reverses digits into beta-adic weights; the extended map psi
replaces the weight of digit eps_k by the total measure of the cylinders with
a smaller digit in position k, which transports the invariant measure to
Lebesgue measure even when the coefficients merely decrease.

All beta-dependent values are accumulated symbolically as integer polynomials
over the common denominator beta^M * Q(beta) and evaluated once with directed
rounding, so interval widths stay near the working precision and borderline
comparisons can fall back to exact integer arithmetic modulo the
characteristic polynomial.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import gmpy2

from .errors import IrregularDigitsError, PrecisionError
from .intervals import Interval, _ctx, bits_for_tolerance, refine
from .numeration import (DigitString, NumerationSystem, _digits_of,
                         greedy_expand, is_regular, max_word)
from .roots import _beta_bracket, beta_interval

DEFAULT_TOL = 1e-15


@dataclass(frozen=True)
class MeasureValue:
    """Certified cylinder measure with the cylinder length it belongs to."""

    value: Interval
    length: int


def _as_word(system: NumerationSystem, n) -> DigitString:
    return n if isinstance(n, DigitString) else greedy_expand(system, n)


# ---------------------------------------------------------------------------
# exact tail counting


def _tail_thresholds(system: NumerationSystem, K: int) -> list[list[int]]:
    """Sorted threshold tables for cylinders of length K.

    A tail (t_0, ..., t_{r-1}) with digits in [0, a0] extends a prefix of
    value w to a regular word iff w < theta(t) where
    theta(t) = min_m (G_{K+m} - sum_{j<m} t_j G_{K+j}), so F_{K,r}(w) is the
    number of thresholds above w.  Tables depend only on (K, r) and are cached
    on the system.
    """
    key = ("tails", K)
    cached = system._derived.get(key)
    if cached is not None:
        return cached
    d, a0 = system.d, system.a[0]
    system.ensure_g(K + d)
    g = system._g
    tables: list[list[int]] = [[]]  # r = 0 needs no table
    for r in range(1, d):
        thresholds = []
        for tail in product(range(a0 + 1), repeat=r):
            partial = 0
            theta = None
            for m in range(1, r + 1):
                partial += tail[m - 1] * g[K + m - 1]
                cap = g[K + m] - partial
                if theta is None or cap < theta:
                    theta = cap
            thresholds.append(theta)
        thresholds.sort()
        tables.append(thresholds)
    with system._lock:
        system._derived[key] = tables
    return tables


def _f_counts(system: NumerationSystem, K: int, w: int) -> list[int]:
    """F_{K,0..d-1} for the (regular) prefix of value w and length K."""
    tables = _tail_thresholds(system, K)
    counts = [1]
    for r in range(1, system.d):
        tbl = tables[r]
        counts.append(len(tbl) - bisect_right(tbl, w))
    return counts


def _measure_coeffs(system: NumerationSystem, K: int, w: int) -> list[int]:
    """Integer numerator coefficients (c_0, ..., c_{d-1}) of mu for a prefix."""
    a = system.a
    f = _f_counts(system, K, w)
    return [f[j] - sum(a[i] * f[j - 1 - i] for i in range(j))
            for j in range(system.d)]


def cylinder_count(system: NumerationSystem, prefix, r: int) -> int:
    """Exact number of integers n < G_{K+r} whose expansion starts with prefix.

    Computed by literal enumeration of all digit tails in [0, a0]^r with an
    exact-integer regularity test of prefix + tail.
    """
    digits = _digits_of(prefix)
    if not digits:
        raise ValueError("cylinder prefix must have length >= 1")
    if not is_regular(system, digits):
        raise IrregularDigitsError(f"cylinder prefix must be regular, got {digits}")
    if not 0 <= r <= system.d - 1:
        raise ValueError(f"tail length r must lie in [0, {system.d - 1}], got {r}")
    K = len(digits)
    system.ensure_g(K + r)
    g = system._g
    w = sum(e * g[k] for k, e in enumerate(digits))
    count = 0
    for tail in product(range(system.a[0] + 1), repeat=r):
        partial = w
        ok = True
        for m, t in enumerate(tail):
            partial += t * g[K + m]
            if partial >= g[K + m + 1]:
                ok = False
                break
        if ok:
            count += 1
    return count


# ---------------------------------------------------------------------------
# symbolic accumulation and directed evaluation


def _eval_ratio(system: NumerationSystem, num: list[int], mpow: int,
                bits: int, with_q: bool = True) -> Interval:
    """Evaluate num(beta) / (beta^mpow * Q(beta)) with directed rounding.

    num is little-endian.  Horner runs once per endpoint with a sign test on
    the partial sum, so occasional negative coefficients stay safe (beta > 0).
    """
    if not any(num):
        return Interval.zero(bits)
    beta = beta_interval(system, bits)
    down, up = _ctx(bits)
    bl, bh = beta.lo, beta.hi
    zero = gmpy2.mpfr(0)
    s_lo = zero
    s_hi = zero
    for c in reversed(num):
        s_lo = down.fma(s_lo, bl if s_lo >= 0 else bh, c)
        s_hi = up.fma(s_hi, bh if s_hi >= 0 else bl, c)
    den_lo = down.pow(bl, mpow) if mpow else gmpy2.mpfr(1)
    den_hi = up.pow(bh, mpow) if mpow else gmpy2.mpfr(1)
    if with_q and system.d > 1:
        q_lo = zero
        q_hi = zero
        for _ in range(system.d):
            q_lo = down.fma(q_lo, bl, 1)
            q_hi = up.fma(q_hi, bh, 1)
        den_lo = down.mul(den_lo, q_lo)
        den_hi = up.mul(den_hi, q_hi)
    lo = down.div(s_lo, den_lo if s_lo < 0 else den_hi)
    hi = up.div(s_hi, den_hi if s_hi < 0 else den_lo)
    return Interval(lo, hi, bits)


def psi_numerator(system: NumerationSystem, n) -> tuple[list[int], int]:
    """Exact representation psi(n) = num(beta) / (beta^M * Q(beta)), num little-endian."""
    digits = _as_word(system, n).digits
    if not digits:
        return [], 0
    M = len(digits)
    d = system.d
    g = system._g
    num = [0] * (M + d - 1)
    partial = 0
    for k, eps in enumerate(digits):
        gk = g[k]
        if eps:
            offset = M - 1 - k  # beta^{M-1-k} shift of this position's term
            for i in range(eps):
                coeffs = _measure_coeffs(system, k + 1, partial + i * gk)
                for j, c in enumerate(coeffs):
                    if c:
                        num[offset + d - 1 - j] += c
        partial += eps * gk
    return num, M


def phi(system: NumerationSystem, n, tol: float = DEFAULT_TOL) -> Interval:
    """Classical Monna map: digit-reversal sum of eps_j * beta^(-j-1)."""
    digits = _as_word(system, n).digits
    if not digits:
        return Interval.zero(bits_for_tolerance(tol))
    M = len(digits)
    num = [0] * M
    for k, eps in enumerate(digits):
        num[M - 1 - k] = eps
    return refine(lambda bits: _eval_ratio(system, num, M, bits, with_q=False), tol)


def psi(system: NumerationSystem, n, tol: float = DEFAULT_TOL) -> Interval:
    """Extended Monna map: cumulative cylinder measures below each digit."""
    if not system.nonincreasing:
        raise ValueError("extended Monna map requires non-increasing coefficients")
    num, M = psi_numerator(system, n)
    if not num:
        return Interval.zero(bits_for_tolerance(tol))
    return refine(lambda bits: _eval_ratio(system, num, M, bits), tol)


def cylinder_measure(system: NumerationSystem, prefix, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Invariant measure of the cylinder with the given regular prefix."""
    if not system.nonincreasing:
        raise ValueError("cylinder measure requires non-increasing coefficients")
    digits = _digits_of(prefix)
    if not digits:
        raise ValueError("cylinder prefix must have length >= 1")
    if not is_regular(system, digits):
        raise IrregularDigitsError(f"cylinder prefix must be regular, got {digits}")
    K = len(digits)
    system.ensure_g(K)
    w = sum(e * system._g[k] for k, e in enumerate(digits))
    coeffs = _measure_coeffs(system, K, w)
    num = list(reversed(coeffs))  # little-endian: c_{d-1} + ... + c_0 beta^{d-1}
    value = refine(lambda bits: _eval_ratio(system, num, K, bits), tol)
    return MeasureValue(value, K)


# ---------------------------------------------------------------------------
# d = 3 closed form


def psi_d3_numerator(system: NumerationSystem, n) -> tuple[list[int], int]:
    """Exact numerator of the four-branch closed form for d = 3, a0 > a1 > a2 >= 1.

    Branch values share the denominator beta^{k+1} * Q(beta) with
    Q = beta^2 + beta + 1; selection looks at the digit against a2 and a1, at
    whether the position is the least significant one, and otherwise at
    whether the previous digit lies below a2.
    """
    a0, a1, a2 = system.a
    digits = _as_word(system, n).digits
    if not digits:
        return [], 0
    M = len(digits)
    num = [0] * (M + 2)
    for k, eps in enumerate(digits):
        if eps == 0:
            continue
        if eps < a2:
            c2 = c1 = c0 = eps          # eps/beta^{k+1} over Q: numerator eps*Q
        else:
            prev_small = k == 0 or digits[k - 1] < a2
            if eps < a1 or (eps <= a1 and prev_small):
                c2 = c1 = eps           # a2*Q + (eps - a2)(beta^2 + beta)
                c0 = a2
            elif eps > a1 and prev_small:
                c2 = eps                # + (a1 + 1 - a2)(beta^2 + beta) + (eps-a1-1)beta^2
                c1 = a1 + 1
                c0 = a2
            else:
                c2 = eps                # + (a1 - a2)(beta^2 + beta) + (eps-a1)beta^2
                c1 = a1
                c0 = a2
        offset = M - 1 - k
        num[offset + 2] += c2
        num[offset + 1] += c1
        num[offset] += c0
    return num, M


def psi_d3(system: NumerationSystem, n, tol: float = DEFAULT_TOL) -> Interval:
    """Closed-form extended Monna map for d = 3 systems with a0 > a1 > a2 >= 1.

    Independent of the measure-accumulation route in psi; the two must agree
    within combined interval widths.
    """
    if system.d != 3 or not (system.a[0] > system.a[1] > system.a[2] >= 1):
        raise ValueError(
            f"closed form requires d = 3 with strictly decreasing coefficients, got {system.a}")
    num, M = psi_d3_numerator(system, n)
    if not num:
        return Interval.zero(bits_for_tolerance(tol))
    return refine(lambda bits: _eval_ratio(system, num, M, bits), tol)


# ---------------------------------------------------------------------------
# exact sign arithmetic in Z[beta]


def _reduce_mod_charpoly(system: NumerationSystem, coeffs: list[int]) -> list[int]:
    """Reduce an integer polynomial in beta modulo the characteristic polynomial.

    beta^d = a_0 beta^{d-1} + ... + a_{d-1}, so reduction keeps integer
    coefficients.  Input and output are little-endian.
    """
    a, d = system.a, system.d
    work = list(coeffs)
    for i in range(len(work) - 1, d - 1, -1):
        c = work[i]
        if c:
            work[i] = 0
            for j in range(d):
                work[i - 1 - j] += c * a[j]
    del work[d:]
    return work


def sign_in_beta(system: NumerationSystem, coeffs: list[int]) -> int:
    """Exact sign of an integer polynomial evaluated at the dominant root.

    Reduces modulo the characteristic polynomial, then narrows the exact
    rational root bracket until the low-degree remainder has a definite sign.
    Returns 0 when the remainder is identically zero.
    """
    rem = _reduce_mod_charpoly(system, coeffs)
    if not any(rem):
        return 0
    width = Fraction(1, 2 ** 64)
    for _ in range(8):
        lo, hi = _beta_bracket(system, width)
        total_lo = Fraction(0)
        total_hi = Fraction(0)
        plo, phi_ = Fraction(1), Fraction(1)
        for c in rem:
            if c >= 0:
                total_lo += c * plo
                total_hi += c * phi_
            else:
                total_lo += c * phi_
                total_hi += c * plo
            plo *= lo
            phi_ *= hi
        if total_lo > 0:
            return 1
        if total_hi < 0:
            return -1
        if lo == hi:  # rational root (d = 1): the remainder value is exact
            return 0
        width /= 2 ** 64
    raise PrecisionError("could not certify the sign of a polynomial at the dominant root")


# ---------------------------------------------------------------------------
# extremal values


def extreme_threshold(system: NumerationSystem, m: int, tol: float = DEFAULT_TOL) -> Interval:
    """Measure floor beta^{d-1} / (beta^m * Q(beta)) for cylinders of length m.

    psi(N) at or below the floor forces the first m digits of N to vanish;
    1 - psi(N) at or below it forces them to match the maximal word.
    """
    if m < 0:
        raise ValueError("threshold index must be nonnegative")
    num = [0] * (system.d - 1) + [1]
    return refine(lambda bits: _eval_ratio(system, num, m, bits), tol)


def _premise_certainly_false(system: NumerationSystem, num: list[int], M: int,
                             m: int, side: str) -> bool:
    """Exact test psi(n) > threshold(m) (side "small") or 1 - psi(n) > threshold(m).

    Cross-multiplied against the shared denominator beta^max * Q(beta), the
    comparison reduces to the sign of an integer polynomial at beta.
    """
    d = system.d
    # value numerator V(beta) over beta^M Q(beta); threshold is beta^{d-1} over beta^m Q(beta)
    if side == "small":
        value_num = list(num)
    else:
        # 1 - psi: numerator beta^M Q(beta) - V(beta)
        value_num = [-c for c in num]
        while len(value_num) < M + d:
            value_num.append(0)
        for t in range(d):
            value_num[M + t] += 1
    # compare value_num / beta^M vs beta^{d-1} / beta^m  (common positive factor Q)
    shift_v = m
    shift_t = M
    diff = [0] * max(len(value_num) + shift_v, d + shift_t)
    for i, c in enumerate(value_num):
        diff[i + shift_v] += c
    diff[d - 1 + shift_t] -= 1
    return sign_in_beta(system, diff) > 0


def extreme_violations(system: NumerationSystem, n_start: int, n_stop: int,
                       m_max: int, tol: float = DEFAULT_TOL):
    """Yield (n, m, side) where an extremal-value implication fails.

    side "small": psi(n) <= threshold(m) but the first m digits of n are not
    all zero.  side "large": 1 - psi(n) <= threshold(m) but the first m digits
    do not match the maximal word.  Scans n in [n_start, n_stop], m in
    [1, m_max].  Thresholds decrease in m, so for each n only the largest
    unexcused m needs a certified comparison; borderline interval comparisons
    fall back to exact sign arithmetic, so every reported violation is real.
    """
    if not system.nonincreasing:
        raise ValueError("extremal checks require non-increasing coefficients")
    if m_max < 1:
        return
    bits = bits_for_tolerance(tol)
    thresholds = [None]
    for m in range(1, m_max + 1):
        thresholds.append(extreme_threshold(system, m, tol))
    pattern = max_word(system, m_max).digits
    for n in range(n_start, n_stop + 1):
        word = greedy_expand(system, n)
        digits = word.digits
        padded = digits + (0,) * max(0, m_max - len(digits))
        zeros = 0
        while zeros < m_max and padded[zeros] == 0:
            zeros += 1
        match = 0
        while match < m_max and padded[match] == pattern[match]:
            match += 1
        num, M = psi_numerator(system, word)
        value = _eval_ratio(system, num, M, bits)
        if zeros < m_max:
            m = zeros + 1
            if not value.certainly_gt(thresholds[m]):
                if not _premise_certainly_false(system, num, M, m, "small"):
                    yield (n, m, "small")
        if match < m_max:
            m = match + 1
            if not (1 - value).certainly_gt(thresholds[m]):
                if not _premise_certainly_false(system, num, M, m, "large"):
                    yield (n, m, "large")


def check_extreme_implications(system: NumerationSystem, n, m_max: int,
                               tol: float = DEFAULT_TOL) -> bool:
    """Both extremal-value implications for a single n and all 1 <= m <= m_max."""
    n = int(n)
    return not list(extreme_violations(system, n, n, m_max, tol))
