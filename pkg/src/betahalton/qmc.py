"""QMC integration of corner-singular product integrands with known integrals.

The integrand family is f(x) = prod_i |x_i - h_i|^(-A_i) with 0 < A_i < 1 and
a 0/1 corner h: integrable, singular exactly at h, and with the closed-form
integral prod_i 1/(1 - A_i), which makes convergence studies self-checking.
Points are taken in double precision (integration error dominates rounding);
sums use numpy's pairwise reduction so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import SingularEvaluationError
from .halton import HaltonConfig, iter_halton_points
from .monna import DEFAULT_TOL


@dataclass(frozen=True)
class SingularIntegrand:
    """Separable corner-power singularity with its exact integral."""

    A: tuple[float, ...]
    h: tuple[int, ...]
    exact_integral: float

    @property
    def dimension(self) -> int:
        return len(self.A)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dimension:
            raise ValueError(
                f"points have dimension {pts.shape[1]}, integrand expects {self.dimension}")
        dist = np.abs(pts - np.asarray(self.h, dtype=float))
        hits = np.nonzero(np.any(dist == 0.0, axis=1))[0]
        if hits.size:
            raise SingularEvaluationError(
                f"point index {int(hits[0])} coincides with the singular corner {self.h}")
        return np.prod(dist ** (-np.asarray(self.A)), axis=1)


@dataclass(frozen=True)
class IntegrationReport:
    N: int
    estimate: float
    exact: float
    abs_error: float
    rel_error: float
    min_hyperbolic_product_seen: float


def make_integrand(A: Sequence[float], h: Sequence[int]) -> SingularIntegrand:
    A = tuple(float(a) for a in A)
    h = tuple(int(x) for x in h)
    if len(A) != len(h):
        raise ValueError("exponent vector and corner must have the same length")
    if any(not 0.0 < a < 1.0 for a in A):
        raise ValueError(f"exponents must satisfy 0 < A_i < 1 for integrability, got {A}")
    if any(x not in (0, 1) for x in h):
        raise ValueError(f"corner must be a 0/1 vector, got {h}")
    exact = 1.0
    for a in A:
        exact *= 1.0 / (1.0 - a)
    return SingularIntegrand(A, h, exact)


def qmc_integrate(points, integrand: SingularIntegrand) -> IntegrationReport:
    """Equal-weight average of the integrand over the points, with error report."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("empty point set")
    values = integrand(pts)
    n = pts.shape[0]
    estimate = float(np.sum(values) / n)
    exact = integrand.exact_integral
    abs_error = abs(estimate - exact)
    dist = np.abs(pts - np.asarray(integrand.h, dtype=float))
    min_prod = float(np.min(np.prod(dist, axis=1)))
    return IntegrationReport(
        N=n, estimate=estimate, exact=exact, abs_error=abs_error,
        rel_error=abs_error / abs(exact), min_hyperbolic_product_seen=min_prod)


@dataclass(frozen=True)
class StudyRow:
    report: IntegrationReport
    baseline_error: float | None


def convergence_study(config: HaltonConfig, integrand: SingularIntegrand,
                      n_ladder: Sequence[int], tol: float = DEFAULT_TOL,
                      baseline_seed: int | None = None,
                      points: np.ndarray | None = None) -> list[StudyRow]:
    """One integration report per prefix length in a strictly increasing ladder.

    Points are generated once up to max(ladder) and reused across rows.  When
    baseline_seed is given, a pseudorandom point set of the same size from
    numpy's default generator with that seed provides a diagnostic error
    column (no statistical test is attached to it).
    """
    ladder = [int(x) for x in n_ladder]
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError(f"ladder must be strictly increasing, got {ladder}")
    if ladder[0] < 1:
        raise ValueError("ladder entries must be >= 1")
    n_max = ladder[-1]
    if points is None:
        pts = np.empty((n_max, config.dimension), dtype=float)
        for n, point in iter_halton_points(config, 1, n_max, tol):
            pts[n - 1] = [c.mid() for c in point]
    else:
        pts = np.asarray(points, dtype=float)
        if pts.shape[0] < n_max:
            raise ValueError("supplied points are shorter than the ladder maximum")
    baseline = None
    if baseline_seed is not None:
        rng = np.random.default_rng(baseline_seed)
        baseline = rng.random((n_max, config.dimension))
    rows = []
    for n in ladder:
        report = qmc_integrate(pts[:n], integrand)
        b_err = None
        if baseline is not None:
            b_est = float(np.sum(integrand(baseline[:n])) / n)
            b_err = abs(b_est - integrand.exact_integral)
        rows.append(StudyRow(report, b_err))
    return rows


def study_to_csv(stream, rows: Sequence[StudyRow], digits: int = 17) -> None:
    """CSV columns: N, estimate, exact, abs_error, rel_error, min_product, baseline_error."""
    stream.write("N,estimate,exact,abs_error,rel_error,min_product,baseline_error\n")
    fmt = f".{digits}g"
    for row in rows:
        r = row.report
        baseline = format(row.baseline_error, fmt) if row.baseline_error is not None else ""
        stream.write(",".join([
            str(r.N), format(r.estimate, fmt), format(r.exact, fmt),
            format(r.abs_error, fmt), format(r.rel_error, fmt),
            format(r.min_hyperbolic_product_seen, fmt), baseline,
        ]) + "\n")
