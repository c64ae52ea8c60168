"""Command-line driver: ``abelinv {synth,invert,forward,sweep,verify}``.

Numeric series go to CSV, structured results to JSON. Any failure prints a
JSON object ``{"error": ..., "message": ...}`` on stderr and exits with 1.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .abel import PAIRS, forward_abel, forward_expansion, get_pair
from .checks import run_checks
from .noise import NoiseSpec, add_noise, l2_error, snr_db
from .regularize import DEFAULT_TAU, invert
from .spectral import sample_function

LOGGER = logging.getLogger("abelinv")

DEFAULT_OUTPUT_POINTS = 201


class CLIError(Exception):
    """Usage problem reported as a structured error."""


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _synthesize(pair_id, n_samples, epsilon, seed):
    clean = sample_function(get_pair(pair_id).g, n_samples)
    noisy = add_noise(clean, NoiseSpec(epsilon, seed))
    return clean, noisy


def _resolve_selection(selection, epsilon):
    selection = selection.replace("-", "_")
    if selection == "morozov" and not epsilon:
        LOGGER.info("no noise level given; Morozov needs one, using minimum discrepancy")
        return "min_discrepancy"
    return selection


def cmd_synth(args):
    clean, noisy = _synthesize(args.pair, args.samples, args.epsilon, args.seed)
    snr = snr_db(clean, noisy)
    meta = {"pair": args.pair, "epsilon": float(args.epsilon), "seed": args.seed, "snr_db": snr}
    io.write_samples(args.out, noisy, meta)
    if not args.out:
        return 0
    _emit({"out": str(args.out), "n_samples": noisy.n_samples, "epsilon": args.epsilon, "snr_db": snr})
    return 0


def cmd_invert(args):
    if not args.input:
        raise CLIError("invert needs --in PATH")
    data, meta = io.read_samples(args.input)
    epsilon = args.epsilon if args.epsilon is not None else meta.get("epsilon", 0.0)
    selection = _resolve_selection(args.select, epsilon)
    solution, _, report = invert(
        data,
        selection=selection,
        epsilon=epsilon or None,
        tau=args.tau,
        n_cap=args.ncap,
        n=args.n,
        k=args.k,
        c=args.c,
        allow_aliasing=args.allow_aliasing,
    )
    report.snr_db = meta.get("snr_db")
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    io.write_expansion(out / "expansion.json", solution)
    io.write_report(out / "report.json", report)
    x = np.linspace(0.0, 1.0, args.points)
    io.write_series(out / "reconstruction.csv", ["x", "f"], zip(x, solution(x)))
    summary = {"chosen_n": report.chosen_n, "selection_rule": report.selection_rule, "out": str(out)}
    if args.pair:
        pair = get_pair(args.pair)
        summary["l2_error"] = l2_error(pair.f, solution, breaks=pair.breaks)
    _emit(summary)
    return 0


def cmd_forward(args):
    x = np.linspace(0.0, 1.0, args.points)
    if args.input:
        values = forward_expansion(io.read_expansion(args.input), x)
    elif args.pair:
        pair = get_pair(args.pair)
        values = forward_abel(pair.f, x, args.quad_order, pair.breaks)
    else:
        raise CLIError("forward needs --pair or --in EXPANSION.json")
    io.write_series(args.out, ["x", "Af"], zip(x, values))
    return 0


def _sweep_run(job):
    pair_id, n_samples, epsilon, seed, selection, tau, n_cap, n, k, c = job
    clean, noisy = _synthesize(pair_id, n_samples, epsilon, seed)
    solution, _, report = invert(
        noisy,
        selection=_resolve_selection(selection, epsilon),
        epsilon=epsilon or None,
        tau=tau,
        n_cap=n_cap,
        n=n,
        k=k,
        c=c,
    )
    pair = get_pair(pair_id)
    return snr_db(clean, noisy), report.chosen_n, l2_error(pair.f, solution, breaks=pair.breaks)


def sweep(pair_id, epsilons, n_samples=64, seeds=10, selection="morozov", tau=DEFAULT_TAU,
          n_cap=None, n=None, k=None, c=1.0, jobs=1):
    """Median (snr_db, chosen_n, l2_error) per noise level over `seeds` noise draws.

    Noise-free levels are deterministic and run once.
    """
    jobs_list = []
    for eps in epsilons:
        for seed in range(seeds if eps > 0 else 1):
            jobs_list.append((pair_id, n_samples, eps, seed, selection, tau, n_cap, n, k, c))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_run, jobs_list))
    else:
        results = [_sweep_run(job) for job in jobs_list]
    rows = []
    for eps in epsilons:
        runs = [r for job, r in zip(jobs_list, results) if job[2] == eps]
        snrs, ns, errs = (np.array(col, dtype=float) for col in zip(*runs))
        rows.append((float(eps), float(np.median(snrs)), int(np.median(ns)), float(np.median(errs))))
    return rows


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from exc


def cmd_sweep(args):
    epsilons = args.epsilon if args.epsilon else [1e-1, 1e-2, 1e-3, 1e-4]
    rows = sweep(args.pair, epsilons, args.samples, args.seeds, args.select, args.tau,
                 args.ncap, args.n, args.k, args.c, args.jobs)
    io.write_series(args.out, ["epsilon", "snr_db", "chosen_n", "l2_error"], rows)
    return 0


def cmd_verify(args):
    results = run_checks(args.check, args.tol)
    passed = all(r["passed"] for r in results)
    ledger = {"passed": passed, "checks": results}
    if args.out:
        Path(args.out).write_text(json.dumps(ledger, indent=2) + "\n")
    _emit(ledger)
    if not passed:
        failed = [r["name"] for r in results if not r["passed"]]
        raise CLIError(f"checks failed: {', '.join(failed)}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="abelinv", description="Abel inversion by Legendre-Fourier coefficients.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair=True):
        if pair:
            p.add_argument("--pair", choices=sorted(PAIRS))
        p.add_argument("--in", dest="input", type=Path)
        p.add_argument("--out", type=Path)

    def selection(p):
        p.add_argument("--tau", type=float, default=DEFAULT_TAU)
        p.add_argument("--ncap", type=int)
        p.add_argument("--select", choices=["morozov", "min-discrepancy", "a-priori", "fixed"], default="morozov")
        p.add_argument("--n", type=int, help="truncation index for --select fixed")
        p.add_argument("--k", type=float, help="smoothness order for --select a-priori")
        p.add_argument("--c", type=float, default=1.0, help="constant for --select a-priori")

    p = sub.add_parser("synth", help="sample a catalog pair on the uniform t-grid")
    common(p)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth, pair="poly")

    p = sub.add_parser("invert", help="invert a sample file")
    common(p)
    p.add_argument("--epsilon", type=float, help="noise level (default: from the sample file)")
    p.add_argument("--points", type=int, default=DEFAULT_OUTPUT_POINTS)
    p.add_argument("--allow-aliasing", action="store_true")
    selection(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("forward", help="forward Abel transform of a pair or an expansion")
    common(p)
    p.add_argument("--points", type=int, default=DEFAULT_OUTPUT_POINTS)
    p.add_argument("--quad-order", type=int, default=64)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("sweep", help="median error and truncation over noise levels")
    common(p)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--epsilon", type=_float_list, action="extend")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    selection(p)
    p.set_defaults(func=cmd_sweep, pair="poly")

    p = sub.add_parser("verify", help="run the built-in self-checks")
    p.add_argument("--check", action="append", help="run only this check (repeatable)")
    p.add_argument("--tol", type=float, help="override every tolerance")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (CLIError, ValueError, KeyError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"error": type(exc).__name__, "message": message}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
