"""The `tracelab` command line front end.

    tracelab <command> --curve <descriptor> [--d N] [--dmax N] [--m N]
             [--tower N] [--format json|tsv] [--out PATH] [--seed N] [--cap N]

Commands: zeta, lfun, gl1_trace, torus_compare, hitchin_strata, suite.
Exit codes: 0 pass, 1 identity failure, 2 usage/parse, 3 cap exceeded,
4 unsupported input.  Reports are deterministic byte-for-byte for a fixed
(config, seed, version); timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import sys
import time

from .covers import EtaleDoubleCover, two_torsion_points
from .curves import parse_curve
from .errors import (
    CapExceeded,
    DescriptorError,
    EvenCharacteristic,
    NonReducedSpectralCurve,
    NotTwoTorsion,
    TracelabError,
    UnsupportedCurve,
    UnsupportedDivisor,
)
from .hecke import gl1_relative_trace
from .hitchin import gm_torsor_check, martens_fiber_count, stratify
from .picard import characters, picard_group
from .reports import Report
from .suite import DEFAULT_SEED, run_all
from .systems import (
    GradedLocalSystem,
    GradedSummand,
    frobenius_datum,
    l_series_cohomological,
    l_series_product,
)
from .zeta import zeta_of_curve

EXIT_PASS = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_UNSUPPORTED = 4


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tracelab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)
    for name in ("zeta", "lfun", "gl1_trace", "torus_compare", "hitchin_strata", "suite"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--curve", default=None, help="curve descriptor string")
        cmd.add_argument("--d", type=int, default=2)
        cmd.add_argument("--dmax", type=int, default=None)
        cmd.add_argument("--m", type=int, default=1)
        cmd.add_argument("--tower", type=int, default=3)
        cmd.add_argument("--mmax", type=int, default=3)
        cmd.add_argument("--format", choices=("json", "tsv"), default="json")
        cmd.add_argument("--out", default=None)
        cmd.add_argument("--seed", type=int, default=DEFAULT_SEED)
        cmd.add_argument("--cap", type=int, default=1 << 22)
    return top


def _config_echo(args) -> dict:
    return {
        "curve": args.curve,
        "d": args.d,
        "dmax": args.dmax,
        "m": args.m,
        "tower": args.tower,
        "mmax": args.mmax,
        "seed": args.seed,
        "cap": args.cap,
        "format": args.format,
    }


def _require_curve(args):
    if not args.curve:
        raise DescriptorError("this command needs --curve")
    try:
        return parse_curve(args.curve)
    except UnsupportedCurve as e:
        # a descriptor naming a curve outside its model family is malformed
        raise DescriptorError(str(e)) from e


def cmd_zeta(args) -> Report:
    curve = _require_curve(args)
    z = zeta_of_curve(curve)
    rows = [
        {
            "ok": z.functional_equation_ok(),
            "curve": args.curve,
            "numerator": z.numerator,
            "class_number": z.class_number(),
            "counts": list(z.counts),
        }
    ]
    return Report("zeta", _config_echo(args), rows)


def cmd_lfun(args) -> Report:
    """Two-route L-series for all characters, plus eigenvalue rows.

    Row schema: curve, chi_id, m, d, lhs (enumeration sum), rhs (Euler
    coefficient), equal; a summary row per character compares the whole
    Euler product against the cohomological route.
    """
    from .hecke import eigenvalue_check

    curve = _require_curve(args)
    d_max = args.dmax if args.dmax is not None else 2 * curve.genus + 4
    rows = []
    for idx, chi in enumerate(characters(picard_group(curve))):
        system = GradedLocalSystem(curve, [GradedSummand(chi)])
        product = l_series_product(system, d_max, cap=args.cap)
        cohomological = l_series_cohomological(frobenius_datum(system), d_max)
        for d in range(d_max + 1):
            chk = eigenvalue_check(chi, args.m, d, cap=args.cap)
            rows.append(
                {
                    "ok": chk.equal,
                    "curve": args.curve,
                    "chi_id": idx,
                    "m": args.m,
                    "d": d,
                    "lhs": chk.lhs.serialize(),
                    "rhs": chk.rhs.serialize(),
                    "equal": chk.equal,
                }
            )
        rows.append(
            {
                "ok": product == cohomological,
                "curve": args.curve,
                "chi_id": idx,
                "check": "two-route",
                "d_max": d_max,
            }
        )
    return Report("lfun", _config_echo(args), rows)


def cmd_gl1_trace(args) -> Report:
    curve = _require_curve(args)
    value = gl1_relative_trace(curve)
    rows = [
        {
            "ok": value == curve.field.q - 1,
            "curve": args.curve,
            "value": value,
            "expected": curve.field.q - 1,
        }
    ]
    return Report("gl1_trace", _config_echo(args), rows)


def cmd_torus_compare(args) -> Report:
    from .hecke import (
        hecke_components_H,
        rho_h_factorization_check,
        twisted_hitchin_base_count,
        twisted_torus_bundles,
        twisted_torus_parameters,
    )

    curve = _require_curve(args)
    torsion = two_torsion_points(curve)
    if not torsion:
        raise NotTwoTorsion(f"{args.curve} has no rational 2-torsion point")
    cover = EtaleDoubleCover(curve, torsion[0])
    d_max = args.dmax if args.dmax is not None else 4
    rows = []
    bundles = twisted_torus_bundles(cover)
    rows.append(
        {
            "ok": bundles.component_count == 2,
            "check": "component-group",
            "count": bundles.component_count,
        }
    )
    for d1 in (1, 3):
        value = twisted_hitchin_base_count(cover, 0, d1, cap=args.cap)
        rows.append({"ok": value == 0, "check": "odd-degree-empty", "d1": d1, "value": value})
    for d1 in (0, 2):
        value = twisted_hitchin_base_count(cover, args.d, d1, cap=args.cap)
        rows.append({"ok": True, "check": "base-count", "d0": args.d, "d1": d1, "value": value})
    for idx, sigma in enumerate(twisted_torus_parameters(cover)):
        _l, _r, ok = rho_h_factorization_check(cover, sigma, d_max)
        rows.append({"ok": ok, "check": "rho-factorization", "sigma": idx, "d_max": d_max})
    recs = hecke_components_H(cover, args.d, m_max=args.mmax)
    rows.append({"ok": bool(recs), "check": "hecke-components", "count": len(recs)})
    return Report("torus_compare", _config_echo(args), rows)


def cmd_hitchin_strata(args) -> Report:
    curve = _require_curve(args)
    report = stratify(curve, args.d, args.tower, cap=args.cap)
    rows = []
    for level in report.levels:
        for delta in sorted(level.histogram):
            rows.append(
                {
                    "ok": True,
                    "q": level.q,
                    "d": args.d,
                    "delta": delta,
                    "count": level.histogram[delta],
                    "est_dim": round(report.exponents.get(delta, float("nan")), 4)
                    if level is report.levels[-1] and delta in report.exponents
                    else None,
                }
            )
    for delta, ok in sorted(report.passes.items()):
        rows.append(
            {
                "ok": ok,
                "q": curve.field.q,
                "d": args.d,
                "delta": delta,
                "check": "exponent",
                "expected": report.expected[delta],
            }
        )
    lhs, rhs, ok = gm_torsor_check(curve, args.d, cap=args.cap)
    rows.append({"ok": ok, "check": "gm-torsor", "lhs": lhs, "rhs": rhs})
    if curve.genus >= 1:
        import math

        c1 = martens_fiber_count(curve, args.d, 1, cap=args.cap)
        c2 = martens_fiber_count(curve, args.d, 2, cap=args.cap)
        expo = math.log(c2 / c1) / math.log(curve.field.q)
        ok = abs(expo - max(args.d, 2 * args.d - curve.genus)) <= 0.5
        rows.append({"ok": ok, "check": "martens", "counts": [c1, c2], "exponent": round(expo, 4)})
    return Report("hitchin_strata", _config_echo(args), rows)


def cmd_suite(args) -> Report:
    rows = []
    for crit in run_all(seed=args.seed):
        for row in crit.rows:
            rows.append({"criterion": crit.number, "name": crit.name, **row})
        rows.append(
            {
                "criterion": crit.number,
                "name": crit.name,
                "check": "summary",
                "ok": crit.ok,
            }
        )
    # determinism of the report payload itself: render the rows twice
    first = Report("suite", _config_echo(args), list(rows)).to_json_bytes()
    second = Report("suite", _config_echo(args), list(rows)).to_json_bytes()
    rows.append({"criterion": 13, "name": "determinism", "ok": first == second})
    return Report("suite", _config_echo(args), rows)


HANDLERS = {
    "zeta": cmd_zeta,
    "lfun": cmd_lfun,
    "gl1_trace": cmd_gl1_trace,
    "torus_compare": cmd_torus_compare,
    "hitchin_strata": cmd_hitchin_strata,
    "suite": cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0,) else 0
    started = time.monotonic()
    try:
        report = HANDLERS[args.command](args)
    except DescriptorError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (
        EvenCharacteristic,
        UnsupportedCurve,
        UnsupportedDivisor,
        NotTwoTorsion,
        NonReducedSpectralCurve,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except TracelabError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IDENTITY_FAILURE
    report.duration = time.monotonic() - started
    payload = report.to_json_bytes() if args.format == "json" else report.to_tsv().encode()
    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as e:
            print(f"error: cannot write report: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.buffer.write(payload)
    print(f"# {report.experiment}: pass={report.passed} duration={report.duration:.3f}s", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_IDENTITY_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
