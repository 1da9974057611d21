"""Command line front end.

Subcommands:

  qcb           Chernoff report for one probe/channel combination
  sweep         randomized Q1 - Q2 gap samples as CSV
  threshold     threshold energy N_th(eta), single value or grid
  critical      critical transmissivity eta_c and damping Gamma_c
  correlations  E, D, I of a two-mode input state
  figure        CSV data files (and optional gnuplot scripts) for the
                standard plots, numbered 2 through 6
  verify        cross-check the Gaussian pipeline against the Fock oracle

Exit codes: 0 on success, 1 when a computation fails (threshold out of
range, truncation overflow), 2 on bad flags.  All tabular output is CSV
with a header row and `#` comment lines carrying the package version and
the exact parameter set, so identical invocations produce identical bytes.
Files land in --outdir when a command writes more than one; the default
directory comes from the LOSSPROBE_OUTDIR environment variable, falling
back to the working directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict

import numpy as np

from . import __version__
from .channel import LossChannel
from .correlations import correlation_report, discord, log_negativity, mutual_information
from .gaussian import make_two_mode_st
from .probes import (
    ProbeSpec,
    SweepRanges,
    critical_transmissivity,
    cubic_residual,
    delta_q_gamma,
    discriminate,
    params_from_spec,
    q1,
    q2,
    random_sweep,
    threshold_energy,
    threshold_fit_near_critical,
)
from .verification import run_all

DEFAULT_SEED = 12345
GAMMA_BAR = 0.999


class UsageError(Exception):
    """Flag values outside their domain."""


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _channel_from_args(args: argparse.Namespace) -> LossChannel:
    if (args.eta is None) == (args.damping is None):
        raise UsageError("exactly one of --eta or --damping is required")
    if args.eta is not None:
        if not 0.0 < args.eta <= 1.0:
            raise UsageError(f"--eta must be in (0, 1], got {args.eta}")
        return LossChannel.from_eta(args.eta)
    if args.damping < 0:
        raise UsageError(f"--damping must be >= 0, got {args.damping}")
    return LossChannel.from_gamma(args.damping)


def _meta_lines(command: str, params: dict) -> list[str]:
    pairs = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
    return [f"lossprobe {__version__}", f"command: {command} {pairs}"]


def _write_csv(path: str, columns: list[str], rows: list[list], meta: list[str]) -> None:
    """CSV with # comment lines, a header row, and 12-significant-digit floats."""

    def emit(stream) -> None:
        for line in meta:
            stream.write(f"# {line}\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else str(v) for v in row])

    if path == "-":
        emit(sys.stdout)
    else:
        with open(path, "w", newline="") as f:
            emit(f)


def _write_json(path: str, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as f:
            f.write(text + "\n")


def _report_out(args: argparse.Namespace, payload: dict) -> None:
    if args.format == "json":
        _write_json("-", payload)
    else:
        for key, value in payload.items():
            if isinstance(value, float):
                print(f"{key} = {_fmt(value)}")
            else:
                print(f"{key} = {value}")


def _outdir(args: argparse.Namespace) -> str:
    d = args.outdir or os.environ.get("LOSSPROBE_OUTDIR") or "."
    os.makedirs(d, exist_ok=True)
    return d


def cmd_qcb(args: argparse.Namespace) -> int:
    ch = _channel_from_args(args)
    if args.n < 0:
        raise UsageError(f"--n must be >= 0, got {args.n}")
    if not 0.0 <= args.beta <= 1.0:
        raise UsageError(f"--beta must be in [0, 1], got {args.beta}")
    if args.copies < 1:
        raise UsageError(f"--copies must be >= 1, got {args.copies}")
    gamma = args.gamma if args.modes == 2 else None
    if gamma is not None and not 0.0 <= gamma <= 1.0:
        raise UsageError(f"--gamma must be in [0, 1], got {gamma}")
    spec = ProbeSpec(modes=args.modes, n=args.n, beta=args.beta, gamma=gamma)
    report = discriminate(spec, ch, copies=args.copies)
    payload = {k: v for k, v in asdict(report).items() if v is not None}
    _report_out(args, payload)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise UsageError(f"--samples must be >= 1, got {args.samples}")
    if not 0.0 <= args.gamma <= 1.0:
        raise UsageError(f"--gamma must be in [0, 1], got {args.gamma}")
    if args.n_max <= 0 or args.damping_max <= 0:
        raise UsageError("--n-max and --damping-max must be positive")
    ranges = SweepRanges(n_max=args.n_max, gamma_ch_max=args.damping_max)
    records = random_sweep(args.samples, args.gamma, args.seed, ranges)
    positive = sum(1 for r in records if r.delta_q > 0) / len(records)
    meta = _meta_lines(
        "sweep",
        {
            "samples": args.samples,
            "gamma": args.gamma,
            "seed": args.seed,
            "n-max": args.n_max,
            "damping-max": args.damping_max,
        },
    ) + [f"positive_fraction = {_fmt(positive)}"]
    columns = ["N", "beta", "Gamma", "gamma", "deltaQ_gamma"]
    rows = [[r.n, r.beta, r.gamma_ch, r.gamma, r.delta_q] for r in records]
    if args.format == "json":
        _write_json(args.output, {"meta": meta, "columns": columns, "rows": rows})
    else:
        _write_csv(args.output, columns, rows, meta)
    return 0


def cmd_threshold(args: argparse.Namespace) -> int:
    if (args.eta is None) == (args.eta_grid is None):
        raise UsageError("exactly one of --eta or --eta-grid is required")
    if args.eta is not None:
        if not 0.0 < args.eta < 1.0:
            raise UsageError(f"--eta must be in (0, 1), got {args.eta}")
        _report_out(args, {"eta": args.eta, "n_threshold": threshold_energy(args.eta)})
        return 0
    try:
        lo_s, hi_s, count_s = args.eta_grid.split(":")
        lo, hi, count = float(lo_s), float(hi_s), int(count_s)
    except ValueError as exc:
        raise UsageError(f"--eta-grid must be lo:hi:count, got {args.eta_grid!r}") from exc
    if not (0.0 < lo < hi < 1.0) or count < 2:
        raise UsageError("--eta-grid must satisfy 0 < lo < hi < 1, count >= 2")
    eta_c, gamma_c = critical_transmissivity()
    c1, c2, _ = threshold_fit_near_critical()
    rows = []
    for eta in np.linspace(lo, hi, count):
        rows.append([float(eta), threshold_energy(float(eta))])
    meta = _meta_lines("threshold", {"eta-grid": args.eta_grid}) + [
        f"eta_c = {_fmt(eta_c)}",
        f"Gamma_c = {_fmt(gamma_c)}",
        f"fit: N_th ~ c1 (eta - eta_c) + c2 (eta - eta_c)^2, c1 = {_fmt(c1)}, c2 = {_fmt(c2)}",
    ]
    if args.format == "json":
        _write_json(args.output, {"meta": meta, "columns": ["eta", "N_th"], "rows": rows})
    else:
        _write_csv(args.output, ["eta", "N_th"], rows, meta)
    return 0


def cmd_critical(args: argparse.Namespace) -> int:
    eta_c, gamma_c = critical_transmissivity()
    _report_out(
        args,
        {"eta_c": eta_c, "Gamma_c": gamma_c, "cubic_residual": cubic_residual()},
    )
    return 0


def cmd_correlations(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise UsageError(f"--n must be >= 0, got {args.n}")
    if not 0.0 <= args.beta <= 1.0:
        raise UsageError(f"--beta must be in [0, 1], got {args.beta}")
    if not 0.0 <= args.gamma <= 1.0:
        raise UsageError(f"--gamma must be in [0, 1], got {args.gamma}")
    spec = ProbeSpec(modes=2, n=args.n, beta=args.beta, gamma=args.gamma)
    cm = make_two_mode_st(params_from_spec(spec))
    if args.bits:
        payload = {
            "log_negativity": log_negativity(cm, bits=True),
            "discord": discord(cm, bits=True),
            "mutual_information": mutual_information(cm, bits=True),
            "units": "bits",
        }
    else:
        payload = asdict(correlation_report(cm))
        payload["units"] = "nats"
    _report_out(args, payload)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.dim is not None and args.dim < 2:
        raise UsageError(f"--dim must be >= 2, got {args.dim}")
    if args.tail_tol is not None and not 0.0 < args.tail_tol < 1.0:
        raise UsageError(f"--tail-tol must be in (0, 1), got {args.tail_tol}")
    results = run_all(dim=args.dim, tail_tol=args.tail_tol)
    width = max(len(f"{r.case}: {r.check}") for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failures += not r.passed
        print(f"{status}  {f'{r.case}: {r.check}':{width}s}  value {r.value: .3e}  tol {r.tol:.1e}")
    print(f"\n{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def _figure_2(args: argparse.Namespace, outdir: str) -> list[str]:
    ns = np.linspace(0.0, 10.0, args.points)
    written = []
    for eta in (0.1, 0.5, 0.9):
        ch = LossChannel.from_eta(eta)
        rows = [
            [float(n), beta, q1(float(n), beta, ch)]
            for beta in (0.1, 0.5, 1.0)
            for n in ns
        ]
        path = os.path.join(outdir, f"figure2_eta{eta:g}.csv")
        meta = _meta_lines("figure 2", {"eta": eta, "points": args.points})
        _write_csv(path, ["N", "beta", "Q1"], rows, meta)
        written.append(path)
    return written


def _figure_3(args: argparse.Namespace, outdir: str) -> list[str]:
    ns = np.linspace(0.0, 10.0, args.points)
    rows = []
    for g in (0.1, 0.3, 1.0):
        ch = LossChannel.from_gamma(g)
        for n in ns:
            rows.append([float(n), g, q1(float(n), 1.0, ch), q2(float(n), 1.0, 1.0, ch)])
    path = os.path.join(outdir, "figure3.csv")
    _write_csv(path, ["N", "Gamma", "Q1", "Q2"], rows, _meta_lines("figure 3", {"points": args.points}))
    return [path]


def _figure_4(args: argparse.Namespace, outdir: str) -> list[str]:
    ns = np.linspace(5.0 / args.points, 5.0, args.points)
    betas = np.linspace(0.0, 1.0, args.points)
    written = []
    for g in (0.1, 0.9):
        ch = LossChannel.from_gamma(g)
        rows = [
            [float(n), float(b), q1(float(n), float(b), ch) - q2(float(n), float(b), 1.0, ch)]
            for n in ns
            for b in betas
        ]
        path = os.path.join(outdir, f"figure4_Gamma{g:g}.csv")
        _write_csv(path, ["N", "beta", "deltaQ"], rows, _meta_lines("figure 4", {"Gamma": g, "points": args.points}))
        written.append(path)
    return written


def _figure_5(args: argparse.Namespace, outdir: str) -> list[str]:
    gammas = [args.gamma] if args.gamma is not None else [0.99, 0.9, 0.8, 0.7]
    written = []
    for g in gammas:
        records = random_sweep(args.samples, g, args.seed)
        rows = [[r.n, r.beta, r.gamma_ch, r.gamma, r.delta_q] for r in records]
        path = os.path.join(outdir, f"figure5_gamma{g:g}.csv")
        meta = _meta_lines("figure 5", {"gamma": g, "samples": args.samples, "seed": args.seed})
        _write_csv(path, ["N", "beta", "Gamma", "gamma", "deltaQ_gamma"], rows, meta)
        written.append(path)
    return written


def _figure_6(args: argparse.Namespace, outdir: str) -> list[str]:
    written = []
    betas = [args.beta] if args.beta is not None else [0.1, 0.9]
    ns = np.linspace(5.0 / args.points, 5.0, args.points)
    for beta in betas:
        for g in (0.9, 0.5, 0.1):
            ch = LossChannel.from_gamma(g)
            rows = []
            for n in ns:
                spec = ProbeSpec(modes=2, n=float(n), beta=beta, gamma=GAMMA_BAR)
                cm = make_two_mode_st(params_from_spec(spec))
                rep = correlation_report(cm)
                gap = delta_q_gamma(float(n), beta, GAMMA_BAR, ch)
                rows.append(
                    [float(n), rep.log_negativity, rep.discord, rep.mutual_information, gap]
                )
            path = os.path.join(outdir, f"figure6_curves_beta{beta:g}_Gamma{g:g}.csv")
            meta = _meta_lines(
                "figure 6", {"beta": beta, "Gamma": g, "gamma-bar": GAMMA_BAR, "points": args.points}
            )
            _write_csv(path, ["N", "E", "D", "I", "deltaQ"], rows, meta)
            written.append(path)
    betas_grid = np.linspace(0.0, 1.0, args.points)
    for g in (0.2, 0.8):
        ch = LossChannel.from_gamma(g)
        rows = []
        for n in ns:
            for b in betas_grid:
                spec = ProbeSpec(modes=2, n=float(n), beta=float(b), gamma=GAMMA_BAR)
                cm = make_two_mode_st(params_from_spec(spec))
                rows.append(
                    [
                        float(n),
                        float(b),
                        discord(cm),
                        log_negativity(cm),
                        delta_q_gamma(float(n), float(b), GAMMA_BAR, ch),
                    ]
                )
        path = os.path.join(outdir, f"figure6_density_Gamma{g:g}.csv")
        meta = _meta_lines("figure 6", {"Gamma": g, "gamma-bar": GAMMA_BAR, "points": args.points})
        _write_csv(path, ["N", "beta", "D", "E", "deltaQ"], rows, meta)
        written.append(path)
    rows = []
    for k in range(args.samples):
        rng = np.random.Generator(np.random.Philox(key=args.seed, counter=[0, 1, 0, k]))
        u = rng.uniform(size=3)
        n, b, g = 5.0 * (1.0 - u[0]), float(u[1]), 2.0 * (1.0 - u[2])
        ch = LossChannel.from_gamma(g)
        spec = ProbeSpec(modes=2, n=n, beta=b, gamma=GAMMA_BAR)
        cm = make_two_mode_st(params_from_spec(spec))
        rep = correlation_report(cm)
        rows.append(
            [
                n,
                b,
                g,
                rep.log_negativity,
                rep.discord,
                rep.mutual_information,
                delta_q_gamma(n, b, GAMMA_BAR, ch),
            ]
        )
    path = os.path.join(outdir, "figure6_scatter.csv")
    meta = _meta_lines("figure 6", {"samples": args.samples, "seed": args.seed, "gamma-bar": GAMMA_BAR})
    _write_csv(path, ["N", "beta", "Gamma", "E", "D", "I", "deltaQ"], rows, meta)
    written.append(path)
    return written


_GNUPLOT_HINTS = {
    2: 'plot for [b in "0.1 0.5 1"] f using 1:($2 == real(b) ? $3 : 1/0) with lines title "beta=".b',
    3: 'plot for [g in "0.1 0.3 1"] f using 1:($2 == real(g) ? $3 : 1/0) with lines title "Q1, Gamma=".g, \\\n     for [g in "0.1 0.3 1"] f using 1:($2 == real(g) ? $4 : 1/0) with lines dashtype 2 title "Q2, Gamma=".g',
    4: "set view map\nsplot f using 1:2:3 with points pointtype 5 palette",
    5: "plot f using 1:5 with points pointtype 7 pointsize 0.3 title columnhead(5)",
    6: 'plot f using 2:5 with lines title "vs E", f using 3:5 with lines title "vs D", f using 4:5 with lines title "vs I"',
}


def _write_gnuplot(figure: int, outdir: str, files: list[str]) -> str:
    path = os.path.join(outdir, f"figure{figure}.gp")
    lines = [
        f"# lossprobe {__version__}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set grid",
    ]
    for f in files:
        lines.append(f"f = '{os.path.basename(f)}'")
        lines.append(_GNUPLOT_HINTS[figure])
        lines.append("pause -1")
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def cmd_figure(args: argparse.Namespace) -> int:
    if args.points < 2:
        raise UsageError(f"--points must be >= 2, got {args.points}")
    if args.samples < 1:
        raise UsageError(f"--samples must be >= 1, got {args.samples}")
    if args.gamma is not None and not 0.0 <= args.gamma <= 1.0:
        raise UsageError(f"--gamma must be in [0, 1], got {args.gamma}")
    if args.beta is not None and not 0.0 <= args.beta <= 1.0:
        raise UsageError(f"--beta must be in [0, 1], got {args.beta}")
    outdir = _outdir(args)
    builders = {2: _figure_2, 3: _figure_3, 4: _figure_4, 5: _figure_5, 6: _figure_6}
    files = builders[args.id](args, outdir)
    if args.gnuplot:
        files.append(_write_gnuplot(args.id, outdir, files))
    for f in files:
        print(f)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lossprobe",
        description="Chernoff-bound loss detection with squeezed thermal probes",
    )
    parser.add_argument("--version", action="version", version=f"lossprobe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("qcb", help="Chernoff report for one probe")
    p.add_argument("--modes", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=float, required=True, help="mean photon number")
    p.add_argument("--beta", type=float, required=True, help="squeezing fraction")
    p.add_argument("--gamma", type=float, default=None, help="thermal split (two-mode)")
    p.add_argument("--eta", type=float, default=None, help="transmissivity")
    p.add_argument("--damping", type=float, default=None, help="damping Gamma")
    p.add_argument("--copies", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_qcb)

    p = sub.add_parser("sweep", help="random (N, beta, Gamma) gap samples")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--gamma", type=float, default=1.0, help="thermal split")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n-max", type=float, default=5.0)
    p.add_argument("--damping-max", type=float, default=2.0)
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="threshold energy N_th(eta)")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--eta-grid", default=None, help="lo:hi:count")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("critical", help="critical transmissivity")
    add_format(p)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("correlations", help="E, D, I of a two-mode input")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--bits", action="store_true", help="report in bits instead of nats")
    add_format(p)
    p.set_defaults(func=cmd_correlations)

    p = sub.add_parser("figure", help="write CSV data for the standard figures")
    p.add_argument("id", type=int, choices=(2, 3, 4, 5, 6))
    p.add_argument("--points", type=int, default=101, help="grid resolution")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--gamma", type=float, default=None, help="restrict figure 5 to one split")
    p.add_argument("--beta", type=float, default=None, help="restrict figure 6 to one beta")
    p.add_argument("--outdir", default=None)
    p.add_argument("--gnuplot", action="store_true", help="also write a plotting script")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="compare against the Fock oracle")
    p.add_argument("--dim", type=int, default=None, help="override every case cutoff")
    p.add_argument("--tail-tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
