"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 semantic mismatch, 4 unsupported
request.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .errors import InputError, MismatchError, TopicMismatchError, UnsupportedError
from .measures import DEFAULT_MEASURES, parse_measure
from .ordering import DEFAULT_RBO_P
from .report import PLOT_KINDS, build_evaluate, build_replicate, build_reproduce, plot_rows, to_csv
from .runs import DEFAULT_DEPTH, read_qrels, read_run

EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_UNSUPPORTED = 4

CONFIG_KEYS = {"measures", "cutoffs", "rbo_p", "welch", "depth"}

P_VALUE_NOTE = (
    "p-values are reported as computed (two-sided); reading them as evidence "
    "for or against a successful reproduction is left to the user."
)


class CliInputError(InputError):
    pass


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliInputError(f"cannot read config {path}: {exc}") from None
    if not isinstance(config, dict):
        raise CliInputError(f"config {path} must hold a JSON object")
    unknown = set(config) - CONFIG_KEYS
    if unknown:
        raise CliInputError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return config


def _default_depth() -> int:
    env = os.environ.get("REPROKIT_DEPTH")
    if env is None:
        return DEFAULT_DEPTH
    try:
        depth = int(env)
    except ValueError:
        raise CliInputError(f"REPROKIT_DEPTH must be an integer, got {env!r}") from None
    if depth < 1:
        raise CliInputError("REPROKIT_DEPTH must be >= 1")
    return depth


def _split_ints(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("cutoffs must be positive integers")
    return values


def _settings(args) -> dict:
    """Flags override the config file, which overrides built-in defaults."""
    config = _load_config(args.config)
    measures = args.measure or config.get("measures")
    try:
        specs = [parse_measure(m) for m in measures] if measures else list(DEFAULT_MEASURES)
    except ValueError as exc:
        raise CliInputError(str(exc)) from None
    depth = args.depth or config.get("depth") or _default_depth()
    out = {"specs": specs, "depth": int(depth)}
    if hasattr(args, "cutoffs"):
        out["cutoffs"] = args.cutoffs or config.get("cutoffs")
        out["rbo_p"] = args.rbo_p if args.rbo_p is not None else config.get("rbo_p", DEFAULT_RBO_P)
    if hasattr(args, "welch"):
        out["welch"] = args.welch or bool(config.get("welch", False))
    return out


def _emit(report, fmt: str) -> str:
    return report.to_json() if fmt == "json" else report.to_text()


def cmd_evaluate(args) -> str:
    s = _settings(args)
    qrels = read_qrels(args.qrels)
    run = read_run(args.run, depth=s["depth"], lenient=args.lenient)
    report = build_evaluate(run, qrels, s["specs"])
    for m, topics in report.diagnostics.get("skipped", {}).get(run.tag, {}).items():
        print(f"warning: {m}: skipped {len(topics)} topic(s) without relevant documents", file=sys.stderr)
    return _emit(report, args.format)


def cmd_reproduce(args) -> str:
    s = _settings(args)
    qrels = read_qrels(args.qrels)
    orig = read_run(args.orig, depth=s["depth"], lenient=args.lenient)
    rep = read_run(args.rep, depth=s["depth"], lenient=args.lenient)
    report = build_reproduce(
        orig, rep, qrels, s["specs"], s["cutoffs"], s["rbo_p"], normalize_rmse=args.normalize_rmse
    )
    return _emit(report, args.format)


def cmd_replicate(args) -> str:
    s = _settings(args)
    if len(args.rep_baseline) != len(args.rep_advanced):
        raise CliInputError("--rep-baseline and --rep-advanced must be given the same number of times")
    kw = {"depth": s["depth"], "lenient": args.lenient}
    qrels_orig = read_qrels(args.orig_qrels)
    qrels_rep = read_qrels(args.rep_qrels)
    orig_base = read_run(args.orig_baseline, **kw)
    orig_adv = read_run(args.orig_advanced, **kw)
    pairs = [(read_run(b, **kw), read_run(a, **kw)) for b, a in zip(args.rep_baseline, args.rep_advanced)]
    report = build_replicate(orig_base, orig_adv, pairs, qrels_orig, qrels_rep, s["specs"], s["welch"])
    return _emit(report, args.format)


def cmd_plotdata(args) -> str:
    try:
        if args.report == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.report, encoding="utf-8") as fh:
                data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliInputError(f"cannot read report {args.report}: {exc}") from None
    if not isinstance(data, dict) or "mode" not in data:
        raise CliInputError(f"{args.report} is not a report produced with --format json")
    return to_csv(plot_rows(data, args.kind))


def _common(p: argparse.ArgumentParser, *, comparison: bool = False) -> None:
    p.add_argument(
        "-m", "--measure", action="append",
        help="measure such as P@10, AP, nDCG@10 (repeatable; default P@10, AP, nDCG@10)",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--config", help="JSON file with keys: " + ", ".join(sorted(CONFIG_KEYS)))
    p.add_argument("--depth", type=int, help="entries kept per topic (default $REPROKIT_DEPTH or 1000)")
    p.add_argument("--lenient", action="store_true", help="ignore run columns after the sixth")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reprokit",
        description="Measure how closely reimplemented IR runs reproduce or replicate original runs.",
        epilog=P_VALUE_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="trec_eval-style per-topic and mean scores")
    p.add_argument("qrels")
    p.add_argument("run", help="run file, or - for stdin")
    _common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser(
        "reproduce", help="compare a reproduced run with the original on the same collection",
        epilog=P_VALUE_NOTE,
    )
    p.add_argument("qrels")
    p.add_argument("orig")
    p.add_argument("rep")
    _common(p)
    p.add_argument("--cutoffs", type=_split_ints, help="comma-separated cutoffs for KTU/RMSE curves")
    p.add_argument("--rbo-p", type=float, help=f"RBO persistence (default {DEFAULT_RBO_P})")
    p.add_argument("--normalize-rmse", action="store_true", help="divide RMSE by the original ARP")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser(
        "replicate", help="compare the effect of a baseline/advanced pair across collections",
        epilog=P_VALUE_NOTE,
    )
    p.add_argument("--orig-qrels", required=True)
    p.add_argument("--rep-qrels", required=True)
    p.add_argument("--orig-baseline", required=True)
    p.add_argument("--orig-advanced", required=True)
    p.add_argument("--rep-baseline", required=True, action="append", help="repeatable")
    p.add_argument("--rep-advanced", required=True, action="append", help="repeatable")
    _common(p)
    p.add_argument("--welch", action="store_true", help="Welch instead of pooled-variance t-test")
    p.set_defaults(func=cmd_replicate)

    p = sub.add_parser("plotdata", help="CSV for plotting, from a JSON report")
    p.add_argument("kind", choices=PLOT_KINDS)
    p.add_argument("report", help="report written with --format json, or - for stdin")
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.func(args)
    except TopicMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.only_a:
            print(f"  only in first: {' '.join(exc.only_a)}", file=sys.stderr)
        if exc.only_b:
            print(f"  only in second: {' '.join(exc.only_b)}", file=sys.stderr)
        return EXIT_MISMATCH
    except MismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except UnsupportedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
