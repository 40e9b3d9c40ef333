"""Corner-distance scans, star discrepancy, and origin-avoidance statistics.

A corner of [0,1)^s is a 0/1 vector h; the hyperbolic distance from a point is
the product of coordinate distances |x_i - h_i|.  Scans certify a positive
lower bound on the smallest distance over an index range and summarize it as
the exponent r with min_distance = N^(-r), to be compared against the
avoidance bound exponent H/2 plus slack.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError, PrecisionError
from .halton import HaltonConfig
from .intervals import Interval, bits_for_tolerance
from .monna import DEFAULT_TOL, _eval_ratio, extreme_threshold, psi_numerator

MAX_POINT_ESCALATIONS = 6
DEFAULT_ND_CELL_BUDGET = 40_000_000


def corner_exponent(h: Sequence[int]) -> int:
    """Avoidance-bound exponent: 2 at the origin, s at the opposite corner,
    1 + sum(h) for every mixed corner."""
    h = tuple(int(x) for x in h)
    if not h or any(x not in (0, 1) for x in h):
        raise ValueError(f"corner must be a non-empty 0/1 vector, got {h}")
    s = len(h)
    total = sum(h)
    if total == 0:
        return 2
    if total == s:
        return s
    return 1 + total


def corner_bound_constant(config: HaltonConfig, tol: float = DEFAULT_TOL) -> Interval:
    """Product over coordinates of beta^(d-1) / (beta^(d-1) + ... + 1).

    Effective constant in the distance lower bound derived from the extremal
    digit patterns; equals the length-0 measure floor of each system.
    """
    out = None
    for system in config.systems:
        factor = extreme_threshold(system, 0, tol)
        out = factor if out is None else out * factor
    return out


def hyperbolic_distance(x: Sequence[float], h: Sequence[int]) -> float:
    """Product of coordinate distances to the corner; 0 only on exact hits."""
    h = tuple(int(v) for v in h)
    if len(x) != len(h):
        raise ValueError(f"dimension mismatch: point has {len(x)}, corner has {len(h)}")
    if any(v not in (0, 1) for v in h):
        raise ValueError(f"corner must be a 0/1 vector, got {h}")
    out = 1.0
    for xi, hi in zip(x, h):
        out *= abs(float(xi) - hi)
    return out


@dataclass(frozen=True)
class ScanReport:
    """Certified corner-scan summary over indices 2..N."""

    N: int
    corner: tuple[int, ...]
    min_distance: float          # lower interval endpoint at the argmin
    argmin: int
    empirical_exponent: float    # -log(min_distance) / log(N)
    H: int
    margin: float                # H/2 + slack
    violation: bool
    trajectory: tuple | None = None

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "min_distance": self.min_distance,
            "argmin": self.argmin,
            "empirical_exponent": self.empirical_exponent,
            "H": self.H,
            "violation": self.violation,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _point_intervals(config: HaltonConfig, n: int, bits: int) -> list[Interval]:
    out = []
    for system in config.systems:
        num, mpow = psi_numerator(system, n)
        out.append(_eval_ratio(system, num, mpow, bits))
    return out


def corner_scan_multi(config: HaltonConfig, corners: Sequence[Sequence[int]], N: int,
                      tol: float = DEFAULT_TOL, slack: float = 0.5,
                      record_trajectory: bool = False) -> dict[tuple[int, ...], ScanReport]:
    """Scan n = 2..N once and report every requested corner.

    Distances are interval products of the certified coordinate enclosures;
    the reported minimum is the lower interval endpoint at its argmin, so it
    is a true lower bound.  A point whose distance encloses 0 is retried at
    doubled precision (bounded retries).
    """
    if N < 2:
        raise ValueError("scan length N must be >= 2")
    s = config.dimension
    corners = [tuple(int(x) for x in h) for h in corners]
    for h in corners:
        if len(h) != s or any(x not in (0, 1) for x in h):
            raise ValueError(f"corner {h} does not match dimension {s}")
    bits = bits_for_tolerance(tol)
    best: dict[tuple[int, ...], tuple] = {h: None for h in corners}
    trajectories: dict[tuple[int, ...], list] = {h: [] for h in corners} if record_trajectory else {}
    log_n_final = math.log(N)
    for n in range(2, N + 1):
        attempt_bits = bits
        for attempt in range(MAX_POINT_ESCALATIONS + 1):
            coords = _point_intervals(config, n, attempt_bits)
            complements = [1 - c for c in coords]
            ok = True
            dists = {}
            for h in corners:
                prod = None
                for i, hi in enumerate(h):
                    f = complements[i] if hi else coords[i]
                    prod = f if prod is None else prod * f
                if prod.lo <= 0:
                    ok = False
                    break
                dists[h] = prod
            if ok:
                break
            attempt_bits *= 2
        else:
            raise PrecisionError(
                f"distance interval at n={n} straddles 0 after {MAX_POINT_ESCALATIONS} retries")
        for h in corners:
            lo = dists[h].lo
            if best[h] is None or lo < best[h][0]:
                best[h] = (lo, n)
            if record_trajectory:
                run_lo = float(best[h][0])
                trajectories[h].append((n, float(lo), -math.log(run_lo) / math.log(n)))
    reports = {}
    for h in corners:
        lo, argmin = best[h]
        min_distance = float(lo)
        exponent = -math.log(min_distance) / log_n_final
        H = corner_exponent(h)
        margin = H / 2 + slack
        reports[h] = ScanReport(
            N=N, corner=h, min_distance=min_distance, argmin=argmin,
            empirical_exponent=exponent, H=H, margin=margin,
            violation=exponent > margin,
            trajectory=tuple(trajectories[h]) if record_trajectory else None)
    return reports


def corner_scan(config: HaltonConfig, h: Sequence[int], N: int,
                tol: float = DEFAULT_TOL, slack: float = 0.5,
                record_trajectory: bool = False) -> ScanReport:
    """Scan a single corner; see corner_scan_multi."""
    h = tuple(int(x) for x in h)
    return corner_scan_multi(config, [h], N, tol, slack, record_trajectory)[h]


# ---------------------------------------------------------------------------
# star discrepancy


def star_discrepancy_1d(points: Sequence[float]) -> float:
    """Exact one-dimensional star discrepancy via the sorted-points formula
    D*_N = 1/(2N) + max_i |x_(i) - (2i-1)/(2N)|."""
    xs = np.sort(np.asarray(list(points), dtype=float))
    n = xs.size
    if n == 0:
        raise ValueError("empty point set")
    if xs[0] < 0.0 or xs[-1] >= 1.0:
        raise ValueError("points must lie in [0, 1)")
    targets = (2.0 * np.arange(1, n + 1) - 1.0) / (2.0 * n)
    return 1.0 / (2.0 * n) + float(np.max(np.abs(xs - targets)))


def star_discrepancy_nd(points, max_cells: int = DEFAULT_ND_CELL_BUDGET) -> float:
    """Exact multi-dimensional star discrepancy over the critical grid.

    The counting function of anchored boxes is constant on the grid cells
    induced by the point coordinates, so the supremum is attained at cell
    corners.  Work and memory grow with the product of per-axis grid sizes;
    the call refuses beyond max_cells rather than degrade silently (fall back
    to the 1d formula per axis or to sampled boxes if that happens).
    """
    pts = np.asarray(list(points), dtype=float)
    if pts.size == 0:
        raise ValueError("empty point set")
    if pts.ndim != 2 or pts.shape[1] < 2:
        raise ValueError("star_discrepancy_nd expects points of dimension >= 2")
    if np.min(pts) < 0.0 or np.max(pts) >= 1.0:
        raise ValueError("points must lie in [0, 1)^s")
    n, s = pts.shape
    levels = []
    for t in range(s):
        levels.append(np.unique(pts[:, t]))
    shape = tuple(len(lv) + 1 for lv in levels)
    cells = 1
    for size in shape:
        cells *= size
    if cells > max_cells:
        raise BudgetExceededError(
            f"critical grid has {cells} cells (budget {max_cells}); "
            "use star_discrepancy_1d per axis or sampled boxes instead")
    counts = np.zeros(shape, dtype=np.int64)
    idx = tuple(np.searchsorted(levels[t], pts[:, t]) + 1 for t in range(s))
    np.add.at(counts, idx, 1)
    for axis in range(s):
        counts = np.cumsum(counts, axis=axis)
    frac = counts.astype(float) / n
    lo_edges = [np.concatenate(([0.0], lv)) for lv in levels]
    hi_edges = [np.concatenate((lv, [1.0])) for lv in levels]
    lo_vol = np.ones(shape)
    hi_vol = np.ones(shape)
    for t in range(s):
        sl = [None] * s
        sl[t] = slice(None)
        lo_vol = lo_vol * lo_edges[t][tuple(sl)]
        hi_vol = hi_vol * hi_edges[t][tuple(sl)]
    over = float(np.max(frac - lo_vol))
    under = float(np.max(hi_vol - frac))
    return max(over, under)


def min_hyperbolic_product(points) -> tuple[float, float]:
    """Smallest coordinate product over the point set, with a fitted decay rate.

    The fit regresses -log(min over the first N_k points) on log N_k over a
    doubling ladder of prefix lengths; a single point degenerates to rate 0.
    """
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.size == 0:
        raise ValueError("empty point set")
    if np.min(pts) <= 0.0 or np.max(pts) >= 1.0:
        raise ValueError("points must lie strictly inside (0, 1)^s")
    products = np.prod(pts, axis=1)
    running = np.minimum.accumulate(products)
    n = len(products)
    overall = float(running[-1])
    ladder = []
    k = 2
    while k < n:
        ladder.append(k)
        k *= 2
    ladder.append(n)
    ladder = sorted(set(ladder))
    if len(ladder) < 2 or n < 2:
        return overall, 0.0
    xs = np.log(np.array(ladder, dtype=float))
    ys = -np.log(running[np.array(ladder) - 1])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return overall, slope
