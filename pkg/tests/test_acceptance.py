"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v`; the summary lines go to the
real stdout so they survive pytest's capture.  Every tolerance and runtime
budget is pinned here.
"""

import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from betahalton import (build_config, build_system, b_coefficients,
                        convergence_study, corner_scan_multi, cylinder_measure,
                        digits_value, extreme_violations, greedy_expand,
                        g_terms, iter_halton_points, make_integrand, max_word,
                        parse_digits, phi, psi, psi_d3, reconstruct_g,
                        star_discrepancy_1d)
from betahalton.cli import main as cli_main

TEST_SYSTEMS = [(1, 1), (2, 1), (3, 2, 1), (2, 2, 1), (4, 2, 1), (2,), (3,), (5,)]


def report(capsys, number: int, ok: bool, detail: str, elapsed: float) -> None:
    status = "PASS" if ok else "FAIL"
    with capsys.disabled():
        sys.stdout.write(
            f"ACCEPTANCE {number:02d} {status} [{elapsed:7.2f}s] {detail}\n")
        sys.stdout.flush()


@pytest.fixture(scope="module")
def pair_points_100k():
    # shared float stream for the admissible pair ((1,1),(2,1)), n = 1..1e5
    config = build_config([(1, 1), (2, 1)])
    pts = np.empty((100_000, 2))
    for n, point in iter_halton_points(config, 1, 100_000, 1e-12):
        pts[n - 1, 0] = point[0].mid()
        pts[n - 1, 1] = point[1].mid()
    return config, pts


def test_criterion_01_d1_equivalence(capsys):
    start = time.monotonic()
    ok = True
    for base in (2, 3, 5):
        s = build_system((base,))
        for n in range(10_001):
            digits = greedy_expand(s, n).digits
            exact = sum(Fraction(e, base ** (k + 1)) for k, e in enumerate(digits))
            p = phi(s, n, 1e-12)
            q = psi(s, n, 1e-12)
            if not (p.contains(exact) and q.contains(exact)
                    and p.width() <= 1e-12 and q.width() <= 1e-12
                    and p.lo == q.lo and p.hi == q.hi):
                ok = False
                break
    elapsed = time.monotonic() - start
    report(capsys, 1, ok and elapsed < 10,
           "d=1: psi = phi = radical inverse, bases 2/3/5, n <= 1e4, width <= 1e-12",
           elapsed)
    assert ok
    assert elapsed < 10


def test_criterion_02_measure_axioms(capsys):
    start = time.monotonic()
    ok = True
    for a in [(1, 1), (2, 1), (3, 2, 1), (2, 2, 1)]:
        s = build_system(a)
        g = g_terms(s, 10)
        # measures of every regular prefix up to length 9, keyed by (K, value)
        levels = {}
        for K in range(1, 10):
            level = {}
            for v in range(g[K]):
                digits = greedy_expand(s, v).digits
                padded = digits + (0,) * (K - len(digits))
                level[v] = cylinder_measure(s, padded, 1e-12).value
            levels[K] = level
        total = None
        for iv in levels[1].values():
            total = iv if total is None else total + iv
        if not (total.contains(1) and total.width() <= 1e-10):
            ok = False
        for K in range(1, 9):
            gk, gk1 = g[K], g[K + 1]
            for v, parent in levels[K].items():
                child_sum = None
                combined = parent.width()
                for i in range((gk1 - 1 - v) // gk + 1):
                    child = levels[K + 1][v + i * gk]
                    child_sum = child if child_sum is None else child_sum + child
                combined += child_sum.width()
                if not (child_sum.intersects(parent) and combined <= 1e-10):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    elapsed = time.monotonic() - start
    report(capsys, 2, ok and elapsed < 60,
           "measure axioms: length-1 sum = 1, child sums = parent to depth 8",
           elapsed)
    assert ok
    assert elapsed < 60


def test_criterion_03_d3_closed_form_oracle(capsys):
    start = time.monotonic()
    worst = 0.0
    ok = True
    for a in [(3, 2, 1), (4, 2, 1)]:
        s = build_system(a)
        for n in range(10_001):
            u = psi(s, n)
            v = psi_d3(s, n)
            gap = abs(u.mid() - v.mid())
            worst = max(worst, gap)
            if gap > 1e-10 or not u.intersects(v):
                ok = False
                break
    elapsed = time.monotonic() - start
    report(capsys, 3, ok and elapsed < 60,
           f"d=3 closed form matches measure sums, n <= 1e4, worst gap {worst:.2e}",
           elapsed)
    assert ok
    assert elapsed < 60


def test_criterion_04_extremal_implications(capsys):
    start = time.monotonic()
    counterexamples = []
    for a in [(1, 1), (2, 1)]:
        s = build_system(a)
        counterexamples.extend((a,) + v for v in extreme_violations(s, 1, 100_000, 12))
    elapsed = time.monotonic() - start
    ok = not counterexamples
    report(capsys, 4, ok,
           f"extremal digit implications, n <= 1e5, m <= 12: "
           f"{len(counterexamples)} counterexamples",
           elapsed)
    assert counterexamples == []


def brute_force_lex_maxima(system, max_len):
    """Exhaustive DFS over all regular words of length <= max_len.

    Children are pushed in descending digit order so the LIFO pop visits
    words in ascending lexicographic order; the last word seen at each depth
    is the maximum.
    """
    g = g_terms(system, max_len)
    best = [None] * (max_len + 1)
    stack = [(0, 0, ())]
    pop = stack.pop
    push = stack.append
    while stack:
        k, partial, word = pop()
        if word:
            best[k] = word
        if k == max_len:
            continue
        gk = g[k]
        dmax = (g[k + 1] - 1 - partial) // gk
        k1 = k + 1
        for e in range(dmax, -1, -1):
            push((k1, partial + e * gk, word + (e,)))
    return best


def test_criterion_05_maximal_words(capsys):
    start = time.monotonic()
    mismatches = []
    for a in [(2,), (3,), (1, 1), (2, 1), (2, 2, 1), (3, 2, 1)]:
        s = build_system(a)
        best = brute_force_lex_maxima(s, 12)
        for length in range(1, 13):
            if max_word(s, length).digits != best[length]:
                mismatches.append((a, length, best[length]))
    elapsed = time.monotonic() - start
    ok = not mismatches and elapsed < 30
    report(capsys, 5, ok,
           f"maximal words match exhaustive enumeration, lengths <= 12: "
           f"{len(mismatches)} mismatches",
           elapsed)
    assert mismatches == []
    assert elapsed < 30


def test_criterion_06_explicit_representation(capsys):
    start = time.monotonic()
    ok = True
    for a in TEST_SYSTEMS:
        s = build_system(a)
        bs = [complex(b) for b in b_coefficients(s, 1e-15)]
        if abs(sum(bs) - 1) > 1e-10:
            ok = False
        for n in range(51):
            if reconstruct_g(s, n, 1e-15) > 1e-8:
                ok = False
                break
    elapsed = time.monotonic() - start
    report(capsys, 6, ok,
           "growth constants: residual <= 1e-8 for n <= 50, sum(b) = 1 within 1e-10",
           elapsed)
    assert ok


def test_criterion_07_star_discrepancy_decay(pair_points_100k, capsys):
    start = time.monotonic()
    _, pts = pair_points_100k
    zeck = pts[:, 0]
    values = []
    ok = True
    for n in (100, 1_000, 10_000):
        d = star_discrepancy_1d(zeck[:n])
        values.append(d)
        if d > 10 * math.log(n) / n:
            ok = False
    if not (values[0] > values[1] > values[2]):
        ok = False
    elapsed = time.monotonic() - start
    report(capsys, 7, ok and elapsed < 120,
           f"Zeckendorf D*_N = {values[0]:.4f}/{values[1]:.5f}/{values[2]:.6f} "
           "<= 10 ln(N)/N and strictly decreasing",
           elapsed)
    assert ok
    assert elapsed < 120


def test_criterion_08_corner_avoidance(pair_points_100k, capsys):
    start = time.monotonic()
    config, _ = pair_points_100k
    assert config.admissibility.all_pass
    corners = [(0, 0), (0, 1), (1, 0), (1, 1)]
    reports = corner_scan_multi(config, corners, 100_000, tol=1e-15, slack=0.5)
    ok = True
    details = []
    for h in corners:
        r = reports[h]
        details.append(f"h={h}: exp={r.empirical_exponent:.3f} H/2+0.5={r.margin}")
        if r.violation or r.min_distance <= 0 or r.empirical_exponent > r.margin:
            ok = False
    elapsed = time.monotonic() - start
    report(capsys, 8, ok and elapsed < 1800,
           "corner avoidance at N = 1e5: " + "; ".join(details),
           elapsed)
    assert ok
    assert elapsed < 1800


def test_criterion_09_qmc_singular_integrand(pair_points_100k, capsys):
    start = time.monotonic()
    config, pts = pair_points_100k
    integrand = make_integrand((0.25, 0.25), (0, 0))
    rows = convergence_study(config, integrand, (1_000, 10_000, 100_000),
                             points=pts)
    errors = [row.report.rel_error for row in rows]
    finite = all(math.isfinite(row.report.estimate) for row in rows)
    ok = finite and errors[0] > errors[1] > errors[2] and errors[2] <= 0.02
    elapsed = time.monotonic() - start
    report(capsys, 9, ok and elapsed < 1800,
           f"QMC on |x|^-1/4 |y|^-1/4: rel errors {errors[0]:.2e} > {errors[1]:.2e} "
           f"> {errors[2]:.2e} <= 2%",
           elapsed)
    assert ok
    assert elapsed < 1800


def test_criterion_10_cli_roundtrip_determinism(capsys):
    start = time.monotonic()
    rng = random.Random(99)
    ok = True
    for a in [(1, 1), (2, 1), (3, 2, 1), (2, 2, 1), (2,)]:
        s = build_system(a)
        coeffs = ",".join(map(str, a))
        for _ in range(100):
            n = rng.randrange(10 ** 9 + 1)
            code = cli_main(["expand", "--system", coeffs, "--n", str(n)])
            out = capsys.readouterr().out
            if code != 0 or digits_value(s, parse_digits(out.strip())) != n:
                ok = False
                break
    # byte-identical repeated invocations
    args = ["sequence", "--systems", "1,1;2,1", "--count", "25", "--tol", "1e-12"]
    seen = set()
    for _ in range(3):
        assert cli_main(args) == 0
        seen.add(capsys.readouterr().out)
    if len(seen) != 1:
        ok = False
    elapsed = time.monotonic() - start
    report(capsys, 10, ok,
           "CLI round-trip over 100 random n per system; repeated runs byte-identical",
           elapsed)
    assert ok
