"""Command-line interface.

Subcommands: bounds, allocate, verify-scheme, slope, sweep. Output formats
are table (rationals shown with 4 decimals), json (rationals as "p/q"
strings; byte-identical across runs for identical arguments and seed), and
csv. Defaults: table, except verify-scheme (json) and sweep (csv). Exit
codes: 0 success, 1 usage error, 2 validation failure (bad input, invalid
scheme, tolerance exceeded), 3 internal error. The default seed is 1234,
overridable with the MIMO3WAY_SEED environment variable or --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .allocation import (
    broadcast_optimal_value,
    optimal_broadcast,
    optimal_unicast_bruteforce,
    optimal_unicast_closed_form,
    optimal_unicast_enumerated,
    unicast_optimal_value,
)
from .bounds import cutset_bound_broadcast, cutset_bound_unicast, genie_bound_unicast
from .channel import AntennaConfig, AntennaSplit, draw_channels
from .errors import InternalError, InvalidInputError
from .rational import frac, frac_str
from .rates import estimate_dof
from .schemes import SchemeTag, build_scheme, scheme_split, verify_scheme

__all__ = ["main", "DEFAULT_SEED"]

DEFAULT_SEED = 1234


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 with a parsable line instead of argparse's exit 2
        raise _UsageError(message)


def _default_seed() -> int:
    env = os.environ.get("MIMO3WAY_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise _UsageError(f"MIMO3WAY_SEED must be an integer, got {env!r}") from exc


def _parse_ints(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"--{name} expects comma-separated integers, got {text!r}") from exc


def _parse_fracs(text: str, name: str) -> tuple[Fraction, ...]:
    try:
        return tuple(frac(p.strip()) for p in text.split(","))
    except InvalidInputError as exc:
        raise _UsageError(f"--{name} expects comma-separated rationals, got {text!r}") from exc


def _parse_range(text: str, name: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"--{name} expects start:stop:step, got {text!r}")
    try:
        lo, hi, step = (frac(p.strip()) for p in parts)
    except InvalidInputError as exc:
        raise _UsageError(f"--{name} expects rational start:stop:step, got {text!r}") from exc
    if step <= 0 or hi < lo:
        raise _UsageError(f"--{name} needs step > 0 and stop >= start, got {text!r}")
    return lo, hi, step


def _config(args) -> AntennaConfig:
    m = _parse_ints(args.m, "m")
    if len(m) != 3:
        raise _UsageError(f"--m expects three counts, got {args.m!r}")
    if getattr(args, "sort", False):
        m = tuple(sorted(m, reverse=True))
    return AntennaConfig(*m)


def _scheme_tag(text: str) -> SchemeTag:
    try:
        return SchemeTag(text)
    except ValueError as exc:
        raise _UsageError(f"unknown scheme {text!r}; choose from uni-a, uni-b, bcast") from exc


def _dec(x: Fraction) -> str:
    return f"{float(x):.4f}"


def _fmt_triple(vals) -> str:
    return "(" + ", ".join(frac_str(v) for v in vals) + ")"


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _emit_csv(rows: list[tuple], header: tuple) -> None:
    print(",".join(header))
    for row in rows:
        print(",".join(str(c) for c in row))


def _report_rows(name: str, report) -> list[tuple]:
    rows = [(name, "partial", t.label, _dec(t.value)) for t in report.partial_terms]
    rows += [(name, "total", t.label, _dec(t.value)) for t in report.total_terms]
    rows.append((name, "combined", "+".join(report.binding), _dec(report.combined)))
    return rows


def _print_report_table(name: str, report) -> None:
    print(f"{name} bounds:")
    for t in report.partial_terms:
        print(f"  {t.label:<28} {_dec(t.value):>10}")
    for t in report.total_terms:
        print(f"  {t.label:<28} {_dec(t.value):>10}  (total)")
    print(f"  combined = {_dec(report.combined)}  binding: {', '.join(report.binding)}")


def _cmd_bounds(args) -> int:
    allocation = None
    if args.allocate:
        if args.m is None:
            raise _UsageError("--allocate needs --m")
        config = _config(args)
        allocation = optimal_broadcast(config) if args.msgs == "broadcast" else optimal_unicast_closed_form(config)
        split = allocation.split
    elif args.mt is not None or args.mr is not None:
        if args.mt is None or args.mr is None:
            raise _UsageError("provide both --mt and --mr")
        mt, mr = _parse_fracs(args.mt, "mt"), _parse_fracs(args.mr, "mr")
        split = AntennaSplit(mt, mr)
    else:
        raise _UsageError("provide --mt/--mr, or --m with --allocate")

    if args.msgs == "broadcast":
        reports = {"cutset_broadcast": cutset_bound_broadcast(split)}
    else:
        reports = {"cutset": cutset_bound_unicast(split), "genie": genie_bound_unicast(split)}

    if args.format == "json":
        payload = {
            "command": "bounds",
            "msgs": args.msgs,
            "split": split.to_json(),
            "reports": {k: r.to_json() for k, r in reports.items()},
            "allocation": None if allocation is None else allocation.to_json(),
        }
        _emit_json(payload)
    elif args.format == "csv":
        rows = []
        for k, r in reports.items():
            rows += _report_rows(k, r)
        _emit_csv(rows, ("family", "kind", "label", "value"))
    else:
        print(f"split: mt={_fmt_triple(split.tx)} mr={_fmt_triple(split.rx)}")
        if allocation is not None:
            print(f"allocated dof: {_dec(allocation.optimal_dof)} ({allocation.regime.value})")
        for k, r in reports.items():
            _print_report_table(k, r)
    return 0


def _cmd_allocate(args) -> int:
    config = _config(args)
    if args.msgs == "broadcast":
        result = optimal_broadcast(config)
    elif args.method == "enumerated":
        result = optimal_unicast_enumerated(config)
    elif args.method == "brute":
        result = optimal_unicast_bruteforce(config, args.denominator)
    else:
        result = optimal_unicast_closed_form(config)

    if args.format == "json":
        _emit_json({"command": "allocate", "msgs": args.msgs, "config": config.to_json(), "result": result.to_json()})
    elif args.format == "csv":
        rows = [
            ("optimal_dof", frac_str(result.optimal_dof)),
            ("regime", result.regime.value),
            ("extension_factor", result.extension_factor),
            ("mt", " ".join(frac_str(v) for v in result.split.tx)),
            ("mr", " ".join(frac_str(v) for v in result.split.rx)),
            ("certificate", result.certificate.to_json()["type"]),
        ]
        if result.broadcast_band is not None:
            rows.append(("band", f"{frac_str(result.broadcast_band.low)}..{frac_str(result.broadcast_band.high)}"))
        _emit_csv(rows, ("field", "value"))
    else:
        print(f"config: m={config.totals}  messages: {args.msgs}")
        print(f"optimal dof: {_dec(result.optimal_dof)}  [{frac_str(result.optimal_dof)}]")
        print(f"regime: {result.regime.value}   extension factor: {result.extension_factor}")
        print(f"split: mt={_fmt_triple(result.split.tx)} mr={_fmt_triple(result.split.rx)}")
        cert = result.certificate.to_json()
        if cert["type"] == "closed-form":
            print(f"certificate: {cert['tag']}")
        else:
            print(f"certificate: duality pair, gap = {cert['gap']}")
        if result.broadcast_band is not None:
            band = result.broadcast_band
            print(f"optimal transmit-sum band: [{frac_str(band.low)}, {frac_str(band.high)}]")
    return 0


def _cmd_verify_scheme(args) -> int:
    config = _config(args)
    tag = _scheme_tag(args.scheme)
    split, _ = scheme_split(config, tag)
    channels = draw_channels(split, args.seed)
    scheme = build_scheme(config, tag, channels, args.seed)
    report = verify_scheme(scheme, channels, seed=args.seed)

    if args.format == "json":
        _emit_json(
            {
                "command": "verify-scheme",
                "config": config.to_json(),
                "scheme": tag.value,
                "seed": args.seed,
                "split": split.to_json(),
                "extension_factor": scheme.extension_factor,
                "report": report.to_json(),
            }
        )
    elif args.format == "csv":
        rows = [
            (c.message, c.receiver, c.interference_residual, c.condition_ratio, c.roundtrip_error, c.passed)
            for c in report.checks
        ]
        _emit_csv(rows, ("message", "receiver", "interference", "condition", "roundtrip", "passed"))
    else:
        print(f"scheme {tag.value} on m={config.totals}, seed {args.seed}: "
              f"{'VALID' if report.valid else 'INVALID'}")
        print(f"claimed dof: {_dec(report.claimed_dof)}  achieved dof: {_dec(report.achieved_dof)}")
        for c in report.checks:
            rt = "-" if c.roundtrip_error != c.roundtrip_error else f"{c.roundtrip_error:.2e}"
            print(
                f"  {c.message}@{c.receiver}: interference {c.interference_residual:.2e}, "
                f"condition {c.condition_ratio:.2e}, roundtrip {rt}, "
                f"{'ok' if c.passed else 'FAIL ' + ','.join(c.failures)}"
            )
    if not report.valid:
        print(f"error[validation]: scheme invalid: {', '.join(report.failures)}", file=sys.stderr)
        return 2
    return 0


def _cmd_slope(args) -> int:
    config = _config(args)
    tag = _scheme_tag(args.scheme)
    snr = tuple(float(s) for s in args.snr.split(","))
    est = estimate_dof(config, tag, snr, trials=args.trials, seed=args.seed, fit=args.fit)

    if args.format == "json":
        _emit_json({"command": "slope", "config": config.to_json(), "seed": args.seed, "estimate": est.to_json()})
    elif args.format == "csv":
        sys.stdout.write(est.to_csv())
    else:
        print(f"scheme {tag.value} on m={config.totals}: slope {est.slope:.4f} "
              f"vs theoretical {_dec(est.theoretical_dof)} (|error| = {est.abs_error:.4f})")
        for db, rate in zip(est.snr_db, est.mean_rates):
            print(f"  {db:6.1f} dB  {rate:10.4f} bits/use")
        if est.invalid_trials:
            print(f"  ({est.invalid_trials}/{est.trials} draws invalid, skipped)")
    if est.abs_error > args.tol:
        print(
            f"error[validation]: slope {est.slope:.4f} deviates from "
            f"{_dec(est.theoretical_dof)} by more than {args.tol}",
            file=sys.stderr,
        )
        return 2
    return 0


def _frac_range(lo: Fraction, hi: Fraction, step: Fraction):
    v = lo
    while v <= hi:
        yield v
        v += step


def _cmd_sweep(args) -> int:
    r1 = _parse_range(args.ratio1, "ratio1")
    r2 = _parse_range(args.ratio2, "ratio2")
    if args.m3 < 1:
        raise _UsageError(f"--m3 must be >= 1, got {args.m3}")
    value = broadcast_optimal_value if args.msgs == "broadcast" else unicast_optimal_value
    rows = []
    for a in _frac_range(*r1):
        for b in _frac_range(*r2):
            if a >= b >= 1:  # valid ordered configs only
                rows.append((a, b, value(a, b, Fraction(1))))

    if args.format == "json":
        _emit_json(
            {
                "command": "sweep",
                "m3": args.m3,
                "msgs": args.msgs,
                "points": [
                    {"m1_over_m3": frac_str(a), "m2_over_m3": frac_str(b), "dof_over_m3": frac_str(v)}
                    for a, b, v in rows
                ],
            }
        )
    elif args.format == "table":
        print(f"{'m1/m3':>8} {'m2/m3':>8} {'dof/m3':>10}")
        for a, b, v in rows:
            print(f"{_dec(a):>8} {_dec(b):>8} {_dec(v):>10}")
    else:
        _emit_csv([(_dec(a), _dec(b), _dec(v)) for a, b, v in rows], ("m1_over_m3", "m2_over_m3", "dof_over_m3"))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="mimo3way", description="DoF bounds, antenna allocation, and zero-forcing "
                                                  "schemes for three-way full-duplex MIMO networks")
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    def common(p, default_format="table"):
        p.add_argument("--format", "-f", choices=("table", "json", "csv"), default=default_format)
        p.add_argument("--seed", type=int, default=seed,
                       help=f"RNG seed (default {seed}; env MIMO3WAY_SEED overrides)")

    p = sub.add_parser("bounds", help="evaluate DoF bounds at a split")
    p.add_argument("--m", help="total antennas m1,m2,m3 (with --allocate)")
    p.add_argument("--mt", help="transmit split, e.g. 3,1,1 (rationals allowed)")
    p.add_argument("--mr", help="receive split, e.g. 0,2,2")
    p.add_argument("--msgs", choices=("unicast", "broadcast"), default="unicast")
    p.add_argument("--allocate", action="store_true", help="evaluate at the optimal split of --m")
    p.add_argument("--sort", action="store_true", help="sort --m into descending order first")
    common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("allocate", help="optimal transmit/receive allocation")
    p.add_argument("--m", required=True)
    p.add_argument("--msgs", choices=("unicast", "broadcast"), default="unicast")
    p.add_argument("--method", choices=("closed", "enumerated", "brute"), default="closed")
    p.add_argument("--denominator", type=int, default=3, help="grid denominator for --method brute")
    p.add_argument("--sort", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_allocate)

    p = sub.add_parser("verify-scheme", help="build and verify a zero-forcing scheme")
    p.add_argument("--m", required=True)
    p.add_argument("--scheme", required=True, help="uni-a | uni-b | bcast")
    p.add_argument("--sort", action="store_true")
    common(p, default_format="json")
    p.set_defaults(func=_cmd_verify_scheme)

    p = sub.add_parser("slope", help="Monte-Carlo DoF slope estimate")
    p.add_argument("--m", required=True)
    p.add_argument("--scheme", required=True)
    p.add_argument("--snr", default="30,50", help="SNR grid in dB, e.g. 30,50")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--tol", type=float, default=0.2, help="max |slope - theoretical| for exit 0")
    p.add_argument("--fit", choices=("two-point", "lsq-top-half"), default="two-point")
    p.add_argument("--sort", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_slope)

    p = sub.add_parser("sweep", help="normalized optimal DoF over antenna-ratio grid")
    p.add_argument("--m3", type=int, default=1, help="scale anchor (ratios are scale free)")
    p.add_argument("--ratio1", default="1:4:1/3", help="m1/m3 range start:stop:step")
    p.add_argument("--ratio2", default="1:3:1/3", help="m2/m3 range start:stop:step")
    p.add_argument("--msgs", choices=("unicast", "broadcast"), default="unicast")
    common(p, default_format="csv")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    try:
        parser = _build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return 1
    except InvalidInputError as exc:
        print(f"error[validation]: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"error[internal]: {exc}", file=sys.stderr)
        return 3
    except SystemExit:
        raise
    except Exception as exc:  # anything unexpected is an internal failure
        print(f"error[internal]: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
