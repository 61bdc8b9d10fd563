"""Command-line driver: ``qrlink <verb> [options]``.

Exit status: 0 success, 1 verification failure, 2 usage or configuration error.
"""

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__
from . import link_budget as lb
from . import waveform as wf
from .errors import ConfigurationError, DomainError
from .noise_temperature import antenna_temperature_exemplar, budget
from .photon_statistics import fig4_dataset
from .quantities import linear_to_db
from .scenario import resolve_scenario
from .sweep import FULL_PRECISION
from .verify import run_verification

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _check_out(path, force):
    if path is not None and Path(path).exists() and not force:
        raise UsageError(f"{path} exists; pass --force to overwrite")


def _emit_table(table, args):
    if args.out is None:
        if args.format == "json":
            sys.stdout.write(table.to_json())
        else:
            sys.stdout.write(table.to_csv(precision=args.precision))
        return
    _check_out(args.out, args.force)
    table.write(args.out, fmt=args.format, precision=args.precision)
    print(f"wrote {len(table.rows)} rows to {args.out}", file=sys.stderr)


def _scenario(args, default="fig5"):
    return resolve_scenario(args.scenario or default)


# -- verbs ----------------------------------------------------------------------


def cmd_verify(args):
    report = run_verification()
    if args.format == "json":
        print(json.dumps(report.as_dict(), indent=1))
    else:
        print(report.format())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_fig4(args):
    table = fig4_dataset(points_per_decade=args.points_per_decade)
    _emit_table(table, args)
    return EXIT_OK


def cmd_fig5(args):
    base = _scenario(args)
    if args.p_t_w is not None:
        base = base.replace(p_t=args.p_t_w)
    table = lb.fig5_dataset(
        config=base,
        points_per_decade=args.points_per_decade,
        qr_t_s=args.qr_t_s,
        classical_nb=args.classical_nb,
    )
    _emit_table(table, args)
    return EXIT_OK


def cmd_sweep(args):
    base = _scenario(args)
    table = lb.parameter_sweep(
        base,
        args.var,
        args.start,
        args.stop,
        args.points,
        log=not args.linear,
        fractional_bandwidth=args.fractional_bandwidth,
        classical_nb=args.classical_nb,
    )
    _emit_table(table, args)
    return EXIT_OK


def _print_metrics(label, metrics):
    print(
        f"{label:<10} papr={metrics.papr:.4f} papr_db={metrics.papr_db:.2f} "
        f"psl_db={metrics.psl_db:.2f} mean_sidelobe_db={metrics.mean_sidelobe_db:.2f}"
    )


def cmd_waveform(args):
    if args.papr_target is not None and args.kind != "gaussian":
        raise UsageError("--papr-target tailors a gaussian waveform; use --kind gaussian")
    _check_out(args.out, args.force)
    params = {}
    if args.kind == "gaussian" and args.truncation is not None:
        params["truncation"] = args.truncation
    w = wf.generate(args.kind, args.m, args.seed, sample_rate=args.sample_rate, **params)
    if args.papr_target is not None:
        baseline = wf.generate("gaussian", args.m, args.seed, args.sample_rate,
                               band_fraction=args.band_fraction, **params)
        w = wf.tailor(w, args.papr_target, args.band_fraction, args.iterations)
        base_m = wf.measure(baseline)
        _print_metrics("baseline", base_m)
        tail_m = wf.measure(w)
        _print_metrics("tailored", tail_m)
        print(f"converged={w.params['converged']} "
              f"psl_delta_db={tail_m.psl_db - base_m.psl_db:+.2f}")
    else:
        _print_metrics(w.kind, wf.measure(w))
    if args.out is not None:
        fmt = args.iq_format or ("f64le" if str(args.out).endswith((".bin", ".iq")) else "csv")
        if fmt == "f64le":
            wf.write_iq_f64le(w, args.out)
        else:
            wf.write_iq_csv(w, args.out, precision=args.precision)
        print(f"wrote {len(w)} samples to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_budget(args):
    if args.t_a_k is None and args.pointing_deg is None:
        raise UsageError("give --t-a-k or --pointing-deg")
    t_a = args.t_a_k if args.t_a_k is not None else antenna_temperature_exemplar(args.pointing_deg)
    nb = budget(t_a, args.l_rf_db, args.nf_db, args.t0_k)
    out = {
        "t_a_k": nb.t_a,
        "t_rf_k": nb.t_rf,
        "t_lna_k": nb.t_lna,
        "t_s_k": nb.t_s,
        "l_rf_lin": nb.l_rf,
        "f_lna_lin": nb.f_lna,
    }
    for key, value in out.items():
        print(f"{key:<10} {value:.6g}")
    return EXIT_OK


def cmd_range(args):
    s = _scenario(args)
    qr = lb.qr_max_range(s, args.classical_nb)
    out = {
        "n_b": lb.background_occupancy(s, args.classical_nb),
        "modes": s.modes,
        "r_qr_m": qr.r_max,
        "snr_qr_at_r_db": linear_to_db(qr.achieved_snr_at_r),
    }
    if s.p_t is not None:
        nr = lb.nr_max_range(s)
        out["r_nr_m"] = nr.r_max
        out["snr_nr_at_r_db"] = linear_to_db(nr.achieved_snr_at_r)
        out["range_ratio"] = lb.range_ratio(s, args.classical_nb)
        out["range_ratio_simplified"] = lb.range_ratio_simplified(s.p_t, s.f0, s.b)
    if args.format == "json":
        print(json.dumps(out, indent=1))
    else:
        for key, value in out.items():
            print(f"{key:<24} {value:.6g}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario file, or a bundled name (fig5, xband_400k)")
    common.add_argument("--out", help="output path (stdout if omitted)")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=42, help="64-bit seed")
    common.add_argument("--classical-nb", action="store_true",
                        help="use k_B T / (h f) instead of the exact occupancy")
    common.add_argument("--force", action="store_true", help="overwrite --out")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--precision", type=int, default=FULL_PRECISION,
                        help="significant digits in CSV output (default 17)")

    parser = argparse.ArgumentParser(prog="qrlink", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qrlink {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", parents=[common], help="recompute the golden worked examples")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fig4", parents=[common], help="photon occupancy vs frequency dataset")
    p.add_argument("--points-per-decade", type=int, default=50)
    p.set_defaults(func=cmd_fig4)

    p = sub.add_parser("fig5", parents=[common], help="QR vs NR maximum range vs dwell dataset")
    p.add_argument("--points-per-decade", type=int, default=40)
    p.add_argument("--qr-t-s", type=float, default=290.0, help="QR system temperature, K")
    p.add_argument("--p-t-w", type=float, default=None, help="override NR transmit power, W")
    p.set_defaults(func=cmd_fig5)

    p = sub.add_parser("sweep", parents=[common], help="sweep one scenario field")
    p.add_argument("--var", required=True, help="scenario field (f0, b, t_dwell, p_t, ...)")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--linear", action="store_true", help="linear instead of log spacing")
    p.add_argument("--fractional-bandwidth", type=float, default=None,
                   help="hold b = a * f0 at every point")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("waveform", parents=[common], help="generate and measure a waveform")
    p.add_argument("--kind", choices=wf.KINDS[:2], default="gaussian")
    p.add_argument("--m", type=int, default=2**16, help="number of samples")
    p.add_argument("--sample-rate", type=float, default=wf.DEFAULT_SAMPLE_RATE)
    p.add_argument("--truncation", type=float, default=None,
                   help="gaussian envelope limit in rms units")
    p.add_argument("--papr-target", type=float, default=None, help="tailor to this PAPR")
    p.add_argument("--band-fraction", type=float, default=0.5)
    p.add_argument("--iterations", type=int, default=200)
    p.add_argument("--iq-format", choices=("csv", "f64le"), default=None)
    p.set_defaults(func=cmd_waveform)

    p = sub.add_parser("budget", parents=[common], help="system noise temperature")
    p.add_argument("--t-a-k", type=float, default=None, help="antenna temperature, K")
    p.add_argument("--pointing-deg", type=float, default=None,
                   help="use the X-band exemplar T_a at this angle from zenith")
    p.add_argument("--l-rf-db", type=float, default=0.0)
    p.add_argument("--nf-db", type=float, default=0.0)
    p.add_argument("--t0-k", type=float, default=290.0)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("range", parents=[common], help="single-point QR/NR ranges")
    p.set_defaults(func=cmd_range)
    return parser


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"qrlink: warning: {message}", file=sys.stderr)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.format is None and args.out is not None and str(args.out).endswith(".json"):
        args.format = "json"
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            warnings.showwarning = _show_warning
            return args.func(args)
    except (UsageError, ConfigurationError, DomainError, OSError) as exc:
        print(f"qrlink {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
