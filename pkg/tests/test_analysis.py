import json
import math

import numpy as np
import pytest

from betahalton import (BudgetExceededError, build_config,
                        corner_bound_constant, corner_exponent, corner_scan,
                        corner_scan_multi, halton_stream, hyperbolic_distance,
                        min_hyperbolic_product, points_to_floats,
                        star_discrepancy_1d, star_discrepancy_nd)


# ---------------------------------------------------------------------------
# corner bookkeeping


@pytest.mark.parametrize("h,expected", [
    ((0, 0, 0), 2),
    ((1, 1, 1), 3),
    ((0, 1, 1), 3),
    ((0,), 2),
    ((1,), 1),
    ((1, 0), 2),
])
def test_corner_exponent(h, expected):
    assert corner_exponent(h) == expected


def test_corner_exponent_validation():
    with pytest.raises(ValueError):
        corner_exponent(())
    with pytest.raises(ValueError):
        corner_exponent((0, 2))


def test_corner_exponent_range():
    for s in range(1, 5):
        for mask in range(2 ** s):
            h = tuple((mask >> i) & 1 for i in range(s))
            H = corner_exponent(h)
            assert H == 2 if sum(h) == 0 else True
            assert 1 <= H <= max(2, s + 1)


def test_corner_bound_constant():
    c = corner_bound_constant(build_config([(1, 1)]))
    assert abs(c.mid() - 0.6180339887498949) < 1e-12
    assert abs(corner_bound_constant(build_config([(2,)])).mid() - 1.0) < 1e-15
    pair = build_config([(1, 1), (1, 1)])
    both = corner_bound_constant(pair)
    assert abs(both.mid() - 0.6180339887498949 ** 2) < 1e-12


def test_hyperbolic_distance_examples():
    assert hyperbolic_distance((0.25, 0.5), (0, 1)) == 0.125
    assert hyperbolic_distance((0.5,), (0,)) == 0.5
    assert abs(hyperbolic_distance((0.618034, 0.381966), (0, 0)) - 0.236068) < 1e-5


def test_hyperbolic_distance_invariances():
    x = (0.3, 0.7, 0.2)
    h = (0, 1, 0)
    perm = (2, 0, 1)
    xp = tuple(x[i] for i in perm)
    hp = tuple(h[i] for i in perm)
    assert math.isclose(hyperbolic_distance(x, h), hyperbolic_distance(xp, hp))
    reflected = tuple(1 - xi for xi in x)
    h_reflected = tuple(1 - hi for hi in h)
    assert math.isclose(hyperbolic_distance(x, h),
                        hyperbolic_distance(reflected, h_reflected))


def test_hyperbolic_distance_validation():
    with pytest.raises(ValueError):
        hyperbolic_distance((0.5,), (0, 1))
    with pytest.raises(ValueError):
        hyperbolic_distance((0.5,), (2,))


# ---------------------------------------------------------------------------
# corner scans


def test_corner_scan_zeckendorf_n2():
    report = corner_scan(build_config([(1, 1)]), (0,), 2)
    assert report.argmin == 2
    assert abs(report.min_distance - 0.3819660112501051) < 1e-12
    # -ln(psi(2))/ln 2 = 2 ln(golden ratio)/ln 2
    assert abs(report.empirical_exponent - 1.3884838272612348) < 1e-9
    assert report.H == 2 and not report.violation


def test_corner_scan_binary_n4():
    # points 0.5, 0.25, 0.75, 0.125 at n = 1..4; the scan covers n = 2..4
    report = corner_scan(build_config([(2,)]), (0,), 4)
    assert report.argmin == 4
    assert abs(report.min_distance - 0.125) < 1e-12
    assert abs(report.empirical_exponent - 1.5) < 1e-12


def test_corner_scan_opposite_corner():
    # the scan range starts at n = 2, so the distance there is 1 - psi(2)
    report = corner_scan(build_config([(1, 1)]), (1,), 2)
    assert abs(report.min_distance - 0.6180339887498949) < 1e-12


def test_corner_scan_min_distance_monotone_in_n():
    config = build_config([(1, 1), (2, 1)])
    previous = None
    for n in (10, 50, 250, 1000):
        report = corner_scan(config, (0, 0), n)
        if previous is not None:
            assert report.min_distance <= previous + 1e-18
        previous = report.min_distance


def test_corner_scan_multi_matches_single():
    config = build_config([(1, 1), (2, 1)])
    corners = [(0, 0), (0, 1), (1, 0), (1, 1)]
    multi = corner_scan_multi(config, corners, 200)
    for h in corners:
        single = corner_scan(config, h, 200)
        assert multi[h].min_distance == single.min_distance
        assert multi[h].argmin == single.argmin


def test_corner_scan_certified_positive():
    config = build_config([(1, 1), (2, 1)])
    report = corner_scan(config, (0, 0), 500)
    assert report.min_distance > 0
    # the lower bound is certified, so the float product at the argmin is above it
    point = points_to_floats(halton_stream(config, report.argmin, 1))[0]
    assert point[0] * point[1] >= report.min_distance - 1e-15


def test_corner_scan_trajectory_and_json():
    report = corner_scan(build_config([(2,)]), (0,), 8, record_trajectory=True)
    assert report.trajectory is not None and len(report.trajectory) == 7
    ns = [row[0] for row in report.trajectory]
    assert ns == list(range(2, 9))
    payload = json.loads(report.to_json())
    assert set(payload) == {"N", "min_distance", "argmin", "empirical_exponent",
                            "H", "violation"}
    assert payload["violation"] is False or payload["violation"] is True


def test_corner_scan_validation():
    config = build_config([(2,)])
    with pytest.raises(ValueError):
        corner_scan(config, (0,), 1)
    with pytest.raises(ValueError):
        corner_scan(config, (0, 0), 10)


# ---------------------------------------------------------------------------
# star discrepancy


def test_star_discrepancy_1d_examples():
    assert star_discrepancy_1d([0.5]) == 0.5
    assert star_discrepancy_1d([0.25, 0.75]) == 0.25
    assert abs(star_discrepancy_1d([1 / 3, 2 / 3]) - 1 / 3) < 1e-15


def test_star_discrepancy_1d_validation():
    with pytest.raises(ValueError):
        star_discrepancy_1d([])
    with pytest.raises(ValueError):
        star_discrepancy_1d([1.0])


def test_star_discrepancy_1d_bounds_and_sorting():
    rng = np.random.default_rng(11)
    pts = rng.random(200)
    d = star_discrepancy_1d(pts)
    assert 1 / (2 * 200) <= d <= 1.0
    assert d == star_discrepancy_1d(np.sort(pts))


def brute_star_1d(points, grid=10_000):
    pts = np.asarray(points)
    n = len(pts)
    worst = 0.0
    for k in range(1, grid + 1):
        a = k / grid
        worst = max(worst, abs(np.sum(pts < a) / n - a))
    return worst


def test_star_discrepancy_1d_matches_dense_sampling():
    rng = np.random.default_rng(5)
    pts = rng.random(60)
    assert abs(star_discrepancy_1d(pts) - brute_star_1d(pts)) < 1e-4


def test_star_discrepancy_nd_single_point():
    assert abs(star_discrepancy_nd([(0.5, 0.5)]) - 0.75) < 1e-15


def brute_star_nd(points, grid):
    pts = np.asarray(points)
    n = len(pts)
    worst = 0.0
    for i in range(1, grid + 1):
        for j in range(1, grid + 1):
            a, b = i / grid, j / grid
            inside = np.sum((pts[:, 0] < a) & (pts[:, 1] < b))
            worst = max(worst, abs(inside / n - a * b))
    return worst


def test_star_discrepancy_nd_matches_box_sampling():
    pts = [(0.5, 0.5), (0.25, 0.75)]
    exact = star_discrepancy_nd(pts)
    assert 0 < exact < 1
    assert exact >= brute_star_nd(pts, 400) - 1e-12
    assert abs(exact - brute_star_nd(pts, 400)) < 5e-3
    rng = np.random.default_rng(3)
    cloud = rng.random((40, 2))
    assert abs(star_discrepancy_nd(cloud) - brute_star_nd(cloud, 600)) < 5e-3


def test_star_discrepancy_nd_validation_and_budget():
    with pytest.raises(ValueError):
        star_discrepancy_nd([])
    with pytest.raises(ValueError):
        star_discrepancy_nd([(0.5,)])
    rng = np.random.default_rng(1)
    with pytest.raises(BudgetExceededError):
        star_discrepancy_nd(rng.random((200, 2)), max_cells=100)


# ---------------------------------------------------------------------------
# origin products


def test_min_hyperbolic_product_examples():
    value, _ = min_hyperbolic_product([(0.5, 0.5), (0.25, 0.75)])
    assert value == 0.1875
    single, rate = min_hyperbolic_product([(0.5,)])
    assert single == 0.5 and rate == 0.0


def test_min_hyperbolic_product_binary_8():
    config = build_config([(2,)])
    pts = points_to_floats(halton_stream(config, 1, 8))
    value, rate = min_hyperbolic_product(pts)
    assert abs(value - 1 / 16) < 1e-12
    assert rate > 0


def test_min_hyperbolic_product_validation():
    with pytest.raises(ValueError):
        min_hyperbolic_product([(0.0, 0.5)])
    with pytest.raises(ValueError):
        min_hyperbolic_product([])


def test_min_product_equals_origin_scan():
    config = build_config([(1, 1), (2, 1)])
    n = 300
    report = corner_scan(config, (0, 0), n)
    pts = points_to_floats(halton_stream(config, 2, n - 1))
    value, _ = min_hyperbolic_product(pts)
    assert math.isclose(value, report.min_distance, rel_tol=1e-12)
