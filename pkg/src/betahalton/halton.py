"""s-dimensional beta-adic Halton points and admissibility diagnostics.

Coordinate i of the n-th point is the extended Monna map of n under the i-th
numeration system.  Uniform distribution of the joint sequence needs number
theoretic compatibility between the systems; the checks below combine one
exact test (pairwise gcd of the concatenated coefficient vectors) with two
bounded heuristics that are clearly labelled as such in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .intervals import Interval
from .monna import DEFAULT_TOL, psi
from .numeration import NumerationSystem, build_system
from .roots import _beta_bracket

POWER_RATIO_MAX_EXPONENT = 12
POWER_RATIO_MAX_DENOMINATOR = 10 ** 4


@dataclass(frozen=True)
class PairCheck:
    """Admissibility verdicts for one pair of coordinate systems."""

    i: int
    j: int
    gcd_status: str              # "pass" | "fail"
    gcd_value: int
    power_ratio_status: str      # "heuristic-pass" | "fail"
    power_ratio_witness: tuple | None   # (k, l, Fraction) when a rational ratio was found
    field_status: str            # "pass" | "fail" | "heuristic-pass" | "unknown"
    field_detail: str


@dataclass(frozen=True)
class AdmissibilityReport:
    pairs: tuple[PairCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(p.gcd_status == "pass"
                   and p.power_ratio_status == "heuristic-pass"
                   and p.field_status in ("pass", "heuristic-pass")
                   for p in self.pairs)

    def failures(self) -> list[str]:
        out = []
        for p in self.pairs:
            if p.gcd_status == "fail":
                out.append(f"pair ({p.i},{p.j}): coefficient gcd {p.gcd_value} > 1")
            if p.power_ratio_status == "fail":
                k, l, q = p.power_ratio_witness
                out.append(f"pair ({p.i},{p.j}): beta_i^{k}/beta_j^{l} is rational ({q})")
            if p.field_status == "fail":
                out.append(f"pair ({p.i},{p.j}): {p.field_detail}")
        return out


@dataclass(frozen=True)
class HaltonConfig:
    """Ordered coordinate systems plus their admissibility report."""

    systems: tuple[NumerationSystem, ...]
    admissibility: AdmissibilityReport

    @property
    def dimension(self) -> int:
        return len(self.systems)


def _simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction with the smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo == hi:
        return lo
    floor_lo = lo.numerator // lo.denominator
    ceil_lo = -((-lo.numerator) // lo.denominator)
    if ceil_lo <= hi:
        return Fraction(ceil_lo)
    # lo and hi share the same integer part; recurse on the fractional inverse
    frac = _simplest_rational(1 / (hi - floor_lo), 1 / (lo - floor_lo))
    return floor_lo + 1 / frac


def _power_ratio_check(si: NumerationSystem, sj: NumerationSystem, tol: float):
    """Search k, l <= 12 for a rational value of beta_i^k / beta_j^l.

    The ratio is enclosed in an exact Fraction interval widened by tol; the
    simplest rational inside is a witness when its denominator is small.
    Bounded in the exponents, hence a heuristic: it can only ever report
    "fail" (witness found) or "heuristic-pass".
    """
    width = Fraction(1, 2 ** 96)
    lo_i, hi_i = _beta_bracket(si, width)
    lo_j, hi_j = _beta_bracket(sj, width)
    tol_f = Fraction(tol)
    for k in range(1, POWER_RATIO_MAX_EXPONENT + 1):
        for l in range(1, POWER_RATIO_MAX_EXPONENT + 1):
            lo = lo_i ** k / hi_j ** l - tol_f
            hi = hi_i ** k / lo_j ** l + tol_f
            q = _simplest_rational(lo, hi)
            if q.denominator <= POWER_RATIO_MAX_DENOMINATOR:
                return "fail", (k, l, q)
    return "heuristic-pass", None


def _discriminant(coeffs: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial via the Sylvester resultant.

    Bareiss fraction-free elimination keeps everything in exact integers.
    """
    n = len(coeffs) - 1
    deriv = [(n - i) * c for i, c in enumerate(coeffs[:-1])]
    m = n + (n - 1)
    rows = []
    for i in range(n - 1):
        rows.append([0] * i + list(coeffs) + [0] * (m - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(deriv) + [0] * (m - n - i))
    # Bareiss determinant
    sign = 1
    prev = 1
    mat = [row[:] for row in rows]
    size = len(mat)
    for k in range(size - 1):
        if mat[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if mat[r][k] != 0), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    resultant = sign * mat[-1][-1]
    s = 1 if (n * (n - 1) // 2) % 2 == 0 else -1
    return s * resultant


def _square_free_part(n: int) -> int:
    n = abs(n)
    if n == 0:
        return 0
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            count = 0
            while n % p == 0:
                n //= p
                count += 1
            if count % 2:
                out *= p
        p += 1 if p == 2 else 2
    return out * n


def _field_check(si: NumerationSystem, sj: NumerationSystem):
    """Heuristic disjointness of the root fields; only degree-1 cases are rigorous."""
    if si.d == 1 or sj.d == 1:
        return "pass", "a degree-1 system generates the rationals, intersection is trivially Q"
    if si.a == sj.a:
        return "fail", "identical coefficient vectors generate the same root field (non-rigorous check)"
    if si.d != sj.d:
        return "heuristic-pass", "distinct degrees (non-rigorous)"
    di = _square_free_part(_discriminant([1] + [-c for c in si.a]))
    dj = _square_free_part(_discriminant([1] + [-c for c in sj.a]))
    if di != dj:
        return "heuristic-pass", f"distinct square-free discriminant parts {di} vs {dj} (non-rigorous)"
    return "unknown", f"equal degree and square-free discriminant part {di}; disjointness undecided"


def check_admissibility(systems: Sequence[NumerationSystem],
                        tol: float = DEFAULT_TOL) -> AdmissibilityReport:
    """Pairwise admissibility diagnostics; vacuously empty for s = 1."""
    pairs = []
    for i in range(len(systems)):
        for j in range(i + 1, len(systems)):
            si, sj = systems[i], systems[j]
            g = math.gcd(*(si.a + sj.a))
            gcd_status = "pass" if g == 1 else "fail"
            pr_status, witness = _power_ratio_check(si, sj, tol)
            f_status, f_detail = _field_check(si, sj)
            pairs.append(PairCheck(i, j, gcd_status, g, pr_status, witness,
                                   f_status, f_detail))
    return AdmissibilityReport(tuple(pairs))


def build_config(systems: Iterable, tol: float = DEFAULT_TOL) -> HaltonConfig:
    """Assemble a config from NumerationSystems or coefficient sequences.

    Admissibility failures are recorded in the report, not raised: the
    generator is also a tool for exploring inadmissible combinations.
    """
    built = []
    for s in systems:
        if isinstance(s, NumerationSystem):
            built.append(s)
        else:
            built.append(build_system(s))
    if not built:
        raise ValueError("config needs at least one system")
    for s in built:
        if not s.nonincreasing:
            raise ValueError(f"system {s.a} has increasing coefficients")
    return HaltonConfig(tuple(built), check_admissibility(built, tol))


def halton_point(config: HaltonConfig, n: int, tol: float = DEFAULT_TOL) -> tuple[Interval, ...]:
    """The n-th point (n >= 1) as a tuple of certified coordinate intervals."""
    if n < 1:
        raise ValueError("point index must be >= 1")
    return tuple(psi(s, n, tol) for s in config.systems)


def iter_halton_points(config: HaltonConfig, n_start: int, count: int,
                       tol: float = DEFAULT_TOL) -> Iterator[tuple[int, tuple[Interval, ...]]]:
    """Lazily yield (n, point) pairs; suited to constant-memory pipelines."""
    if n_start < 1:
        raise ValueError("start index must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    for n in range(n_start, n_start + count):
        yield n, halton_point(config, n, tol)


def halton_stream(config: HaltonConfig, n_start: int, count: int,
                  tol: float = DEFAULT_TOL) -> list[tuple[Interval, ...]]:
    """Points for n = n_start, ..., n_start + count - 1 (identical to repeated halton_point)."""
    return [point for _, point in iter_halton_points(config, n_start, count, tol)]


def points_to_floats(points: Iterable[Sequence[Interval]]) -> list[tuple[float, ...]]:
    """Interval midpoints as plain floats, for discrepancy and QMC consumers."""
    return [tuple(c.mid() for c in p) for p in points]


def write_points_csv(stream, config: HaltonConfig, n_start: int, count: int,
                     tol: float = DEFAULT_TOL, digits: int = 17) -> None:
    """CSV rows n, x1, ..., xs with the configured number of significant digits."""
    header = "n," + ",".join(f"x{i + 1}" for i in range(config.dimension))
    stream.write(header + "\n")
    for n, point in iter_halton_points(config, n_start, count, tol):
        row = [str(n)] + [format(c.mid(), f".{digits}g") for c in point]
        stream.write(",".join(row) + "\n")
