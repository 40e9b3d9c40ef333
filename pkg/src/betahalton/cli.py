"""Command-line front end: batch generation and analysis with CSV/JSON output.

Exit codes: 0 success, 1 usage or validation error, 2 computation failure
(precision exhaustion, work-budget refusal, root-finding failure).  Data goes
to stdout or the --output file; diagnostics go to stderr.  Identical argv
produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .analysis import (corner_bound_constant, corner_scan, min_hyperbolic_product,
                       star_discrepancy_1d, star_discrepancy_nd)
from .errors import BetaHaltonError, BudgetExceededError, PrecisionError, RootFindingError
from .halton import build_config, check_admissibility, points_to_floats, halton_stream, write_points_csv
from .monna import (cylinder_count, cylinder_measure, extreme_threshold, phi,
                    psi, psi_d3)
from .numeration import (build_system, digits_value, format_digits, greedy_expand,
                         is_regular, max_word, parse_coefficients, parse_digits,
                         successor)
from .qmc import convergence_study, make_integrand, study_to_csv
from .roots import (analyze_roots, b_coefficients, char_poly, conjugate_roots,
                    is_pisot, reconstruct_g)

DEFAULT_TOL = 1e-15
DEFAULT_DIGITS = 17


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; keep 2 reserved for computation failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _systems_arg(text: str):
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise ValueError("no systems given")
    return [build_system(parse_coefficients(p)) for p in parts]


def _corner_arg(text: str):
    values = tuple(int(p.strip()) for p in text.split(","))
    if any(v not in (0, 1) for v in values):
        raise ValueError(f"corner components must be 0 or 1, got {text!r}")
    return values


@contextmanager
def _open_output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as handle:
            yield handle


def _fmt(value: float, digits: int) -> str:
    return format(float(value), f".{digits}g")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="beta-halton",
                     description="beta-adic van der Corput / Halton sequences and analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[], help="greedy digit expansions and digit arithmetic")
    p.add_argument("--system", required=True, help="coefficients, e.g. 3,2,1")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="integer to expand")
    group.add_argument("--digits", help="little-endian digit string, e.g. 1,0,3,1")
    group.add_argument("--max-word", type=int, metavar="LEN",
                       help="lexicographically maximal regular word of this length")
    p.add_argument("--successor", action="store_true", help="apply the add-one map first")
    p.add_argument("--value", action="store_true", help="print the integer value instead of digits")
    p.add_argument("--check", action="store_true", help="print regular/irregular for --digits")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("sequence", help="stream Halton points as CSV")
    p.add_argument("--systems", required=True, help="semicolon-separated coefficient lists")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("measure", help="cylinder measures, Monna maps, thresholds")
    p.add_argument("--system", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--prefix", help="regular digit prefix, e.g. 0,2")
    group.add_argument("--n", type=int, help="evaluate a Monna map at this integer")
    group.add_argument("--threshold", type=int, metavar="M",
                       help="extremal-value threshold for prefix length M")
    p.add_argument("--tails", type=int, default=None, metavar="R",
                   help="with --prefix: count expansions below G_(K+R) in the cylinder")
    p.add_argument("--map", choices=["psi", "phi", "psi-d3"], default="psi")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("check-system", help="roots, Pisot certificate, admissibility")
    p.add_argument("--systems", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--reconstruct", type=int, default=30, metavar="N",
                   help="index for the growth-constant reconstruction residual")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("scan-corner", help="hyperbolic corner-distance scan")
    p.add_argument("--systems", required=True)
    p.add_argument("--corner", required=True, help="comma-separated 0/1 vector")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--slack", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--trajectory", default=None, metavar="PATH",
                   help="also write n,distance,running_exponent rows to PATH")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("discrepancy", help="star discrepancy of a generated prefix")
    p.add_argument("--systems", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--budget", type=int, default=None,
                   help="cell budget for the exact multi-dimensional computation")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("integrate", help="QMC convergence study on a singular integrand")
    p.add_argument("--systems", required=True)
    p.add_argument("--exponents", required=True, help="comma-separated A_i in (0,1)")
    p.add_argument("--corner", required=True)
    p.add_argument("--ladder", required=True, help="comma-separated increasing prefix lengths")
    p.add_argument("--baseline-seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--output", "-o", default=None)

    return parser


def _cmd_expand(args) -> int:
    system = build_system(parse_coefficients(args.system))
    if args.max_word is not None:
        word = max_word(system, args.max_word)
    elif args.digits is not None:
        word_digits = parse_digits(args.digits)
        if args.check:
            with _open_output(args.output) as out:
                out.write(("regular" if is_regular(system, word_digits) else "irregular") + "\n")
            return 0
        from .numeration import DigitString
        word = DigitString(word_digits, system)
    else:
        if args.n < 0:
            raise ValueError("--n must be nonnegative")
        word = greedy_expand(system, args.n)
    if args.successor:
        word = successor(system, word)
    with _open_output(args.output) as out:
        if args.value:
            out.write(str(digits_value(system, word)) + "\n")
        else:
            out.write(format_digits(word) + "\n")
    return 0


def _cmd_sequence(args) -> int:
    config = build_config(_systems_arg(args.systems), args.tol)
    _warn_admissibility(config)
    with _open_output(args.output) as out:
        write_points_csv(out, config, args.start, args.count, args.tol, args.digits)
    return 0


def _cmd_measure(args) -> int:
    system = build_system(parse_coefficients(args.system))
    digits = args.digits
    if args.prefix is not None:
        prefix = parse_digits(args.prefix)
        if args.tails is not None:
            payload = {"count": cylinder_count(system, prefix, args.tails)}
        else:
            m = cylinder_measure(system, prefix, args.tol)
            payload = {"value": m.value.mid(), "lo": m.value.lo_float(),
                       "hi": m.value.hi_float(), "length": m.length}
    elif args.threshold is not None:
        iv = extreme_threshold(system, args.threshold, args.tol)
        payload = {"value": iv.mid(), "lo": iv.lo_float(), "hi": iv.hi_float()}
    else:
        fn = {"psi": psi, "phi": phi, "psi-d3": psi_d3}[args.map]
        iv = fn(system, args.n, args.tol)
        payload = {"value": iv.mid(), "lo": iv.lo_float(), "hi": iv.hi_float()}
    with _open_output(args.output) as out:
        if args.format == "json":
            out.write(json.dumps(payload) + "\n")
        else:
            keys = sorted(payload)
            out.write(",".join(keys) + "\n")
            out.write(",".join(
                str(payload[k]) if isinstance(payload[k], int) else _fmt(payload[k], digits)
                for k in keys) + "\n")
    return 0


def _cmd_check_system(args) -> int:
    systems = _systems_arg(args.systems)
    entries = []
    for system in systems:
        cert = is_pisot(system, args.tol)
        if system.nonincreasing:
            data = analyze_roots(system, args.tol)
            beta = [float(data.beta_lo), float(data.beta_hi)]
            conjugates, bs = data.conjugates, data.b
        else:
            # no certified bracket: the dominant root can exceed a0 + 1
            beta = None
            conjugates = conjugate_roots(system, args.tol)
            bs = b_coefficients(system, args.tol)
        entries.append({
            "coefficients": list(system.a),
            "char_poly": str(char_poly(system)),
            "beta": beta,
            "conjugates": [[float(c.real), float(c.imag)] for c in conjugates],
            "b": [[float(b.real), float(b.imag)] for b in bs],
            "b_sum_residual": abs(sum(complex(b.real, b.imag) for b in bs) - 1.0),
            "pisot": {"status": cert.status, "method": cert.method,
                      "irreducible": cert.irreducible},
            "reconstruction_residual": reconstruct_g(system, args.reconstruct, args.tol),
            "dense_image": system.dense_pattern,
        })
    payload = {"systems": entries}
    if all(s.nonincreasing for s in systems):
        config = build_config(systems, args.tol)
        c1 = corner_bound_constant(config, args.tol)
        payload["corner_bound_constant"] = c1.mid()
    if len(systems) > 1:
        report = check_admissibility(systems, args.tol)
        payload["admissibility"] = [
            {"pair": [p.i, p.j], "gcd": {"status": p.gcd_status, "value": p.gcd_value},
             "power_ratio": {"status": p.power_ratio_status,
                             "witness": (None if p.power_ratio_witness is None else
                                         [p.power_ratio_witness[0], p.power_ratio_witness[1],
                                          str(p.power_ratio_witness[2])])},
             "field_disjoint": {"status": p.field_status, "detail": p.field_detail}}
            for p in report.pairs
        ]
        payload["admissible"] = report.all_pass
    with _open_output(args.output) as out:
        out.write(json.dumps(payload) + "\n")
    return 0


def _cmd_scan_corner(args) -> int:
    config = build_config(_systems_arg(args.systems), args.tol)
    _warn_admissibility(config)
    corner = _corner_arg(args.corner)
    report = corner_scan(config, corner, args.N, args.tol, args.slack,
                         record_trajectory=args.trajectory is not None)
    if args.trajectory:
        with open(args.trajectory, "w", encoding="utf-8") as traj:
            traj.write("n,distance,running_exponent\n")
            for n, dist, run in report.trajectory:
                traj.write(f"{n},{_fmt(dist, args.digits)},{_fmt(run, args.digits)}\n")
    with _open_output(args.output) as out:
        if args.format == "json":
            out.write(report.to_json() + "\n")
        else:
            d = report.to_json_dict()
            keys = ["N", "min_distance", "argmin", "empirical_exponent", "H", "violation"]
            out.write(",".join(keys) + "\n")
            out.write(",".join(
                _fmt(d[k], args.digits) if isinstance(d[k], float) else str(d[k])
                for k in keys) + "\n")
    return 0


def _cmd_discrepancy(args) -> int:
    config = build_config(_systems_arg(args.systems), args.tol)
    _warn_admissibility(config)
    points = points_to_floats(halton_stream(config, 1, args.N, args.tol))
    if config.dimension == 1:
        dstar = star_discrepancy_1d([p[0] for p in points])
    else:
        kwargs = {} if args.budget is None else {"max_cells": args.budget}
        dstar = star_discrepancy_nd(points, **kwargs)
    min_prod, fitted = min_hyperbolic_product(points)
    payload = {"N": args.N, "dimension": config.dimension, "star_discrepancy": dstar,
               "min_product": min_prod, "fitted_decay_rate": fitted}
    with _open_output(args.output) as out:
        if args.format == "json":
            out.write(json.dumps(payload) + "\n")
        else:
            keys = ["N", "dimension", "star_discrepancy", "min_product", "fitted_decay_rate"]
            out.write(",".join(keys) + "\n")
            out.write(",".join(
                _fmt(payload[k], args.digits) if isinstance(payload[k], float) else str(payload[k])
                for k in keys) + "\n")
    return 0


def _cmd_integrate(args) -> int:
    config = build_config(_systems_arg(args.systems), args.tol)
    _warn_admissibility(config)
    exponents = tuple(float(p) for p in args.exponents.split(","))
    corner = _corner_arg(args.corner)
    ladder = [int(p) for p in args.ladder.split(",")]
    integrand = make_integrand(exponents, corner)
    if integrand.dimension != config.dimension:
        raise ValueError(
            f"integrand dimension {integrand.dimension} does not match {config.dimension} systems")
    rows = convergence_study(config, integrand, ladder, args.tol, args.baseline_seed)
    with _open_output(args.output) as out:
        study_to_csv(out, rows, args.digits)
    return 0


def _warn_admissibility(config) -> None:
    for line in config.admissibility.failures():
        sys.stderr.write(f"warning: {line}\n")


_COMMANDS = {
    "expand": _cmd_expand,
    "sequence": _cmd_sequence,
    "measure": _cmd_measure,
    "check-system": _cmd_check_system,
    "scan-corner": _cmd_scan_corner,
    "discrepancy": _cmd_discrepancy,
    "integrate": _cmd_integrate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return _COMMANDS[args.command](args)
    except (PrecisionError, BudgetExceededError, RootFindingError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BetaHaltonError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
