"""Command-line entry point: ``ddvfa-bench <command> [options]``.

Any long option may also come from a ``--config`` file of ``key = value``
lines (``#`` starts a comment; keys use the flag names with or without the
leading dashes).  Flags given on the command line override the file.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .datasets import linear_normalize, resolve
from .ddvfa import LinkageMethod
from .validation import adjusted_rand
from .vat import pairwise_dissimilarity, vat_order


def parse_seeds(text):
    """``"0-29"``, ``"1,4,7"`` or a mix such as ``"0-4,10"``."""
    seeds = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1) if not part.startswith("-") else (part, "")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty seed range {part!r}")
            seeds.extend(range(lo, hi + 1))
        else:
            seeds.append(int(part))
    if not seeds:
        raise argparse.ArgumentTypeError("the seed list is empty")
    return seeds


def _bool(text):
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _range(text):
    lo, hi = (float(v) for v in str(text).split(":"))
    return lo, hi


def read_config(path):
    """Parse a ``key = value`` file into a dict keyed by option dest names."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split(sep, 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _experiment_options(p, grid):
    p.add_argument("--dataset", help="CSV path or builtin name (atom, target, spiral)")
    p.add_argument("--system", choices=bench.SYSTEMS, default="ddvfa")
    p.add_argument("--method", choices=[m.value for m in LinkageMethod], default="single")
    p.add_argument("--rho-lb", type=float, default=None)
    p.add_argument("--rho-ub", type=float, default=None)
    if grid:
        p.add_argument("--grid-step", type=float, default=0.01)
        p.add_argument("--lb-range", type=_range, default=(0.0, 1.0), metavar="LO:HI")
        p.add_argument("--ub-range", type=_range, default=(0.0, 1.0), metavar="LO:HI")
    p.add_argument("--gamma", type=float, default=3.0)
    p.add_argument("--gamma-star", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.001)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--seeds", type=parse_seeds, default=[0], help="e.g. 0-29 or 1,3,5")
    p.add_argument("--out", default=None, help="output file; stdout when omitted")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--parsimony", type=_bool, default=True,
                   help="break AR ties by fewest categories")
    p.add_argument("--header", type=_bool, default=False, help="CSV has a header row")
    p.add_argument("--label-column", default="last")
    p.add_argument("--merge-iterations", type=int, default=10)
    p.add_argument("--timing", type=_bool, default=False,
                   help="record wall times (makes output non-reproducible)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--config", default=None, help="key = value file of defaults")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ddvfa-bench", description="Fuzzy ART family clustering benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)
    _experiment_options(sub.add_parser("run", help="one vigilance pair over the seeds"),
                        grid=False)
    _experiment_options(sub.add_parser("grid", help="full vigilance grid search"), grid=True)
    _experiment_options(sub.add_parser("gamma-sweep", help="peak per gamma in 0.5..5"),
                        grid=True)
    p = sub.add_parser("vat-order", help="print the VAT permutation of a dataset")
    p.add_argument("--dataset")
    p.add_argument("--header", type=_bool, default=False)
    p.add_argument("--label-column", default="last")
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    p = sub.add_parser("eval", help="adjusted Rand index between two label files")
    p.add_argument("reference")
    p.add_argument("predicted")
    p.add_argument("--config", default=None)
    return parser


def _subparser(parser, name):
    for action in parser._subparsers._group_actions:
        if name in action.choices:
            return action.choices[name]
    raise KeyError(name)


def parse_args(argv=None):
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config and argv and not argv[0].startswith("-"):
        sp = _subparser(parser, argv[0])
        dests = {a.dest for a in sp._actions}
        values = read_config(known.config)
        unknown = sorted(set(values) - dests)
        if unknown:
            parser.error(f"unknown key(s) in {known.config}: {', '.join(unknown)}")
        sp.set_defaults(**values)
    args = parser.parse_args(argv)
    # string defaults from a config file go through each option's type
    for a in _subparser(parser, args.command)._actions:
        v = getattr(args, a.dest, None)
        if isinstance(v, str) and a.type is not None and a.type is not str:
            setattr(args, a.dest, a.type(v))
    return args


def _label_column(text):
    if text is None or str(text).lower() in ("none", ""):
        return None
    return "last" if str(text).lower() == "last" else int(text)


def config_from_args(args):
    if not args.dataset:
        raise SystemExit("error: --dataset is required")
    extra = {}
    if hasattr(args, "grid_step"):
        extra = dict(grid_step=args.grid_step, lb_range=args.lb_range,
                     ub_range=args.ub_range)
    if args.command == "run" and args.rho_lb is None:
        raise SystemExit("error: run needs --rho-lb (and --rho-ub)")
    if args.command == "run" and args.rho_ub is None:
        args.rho_ub = args.rho_lb
    return bench.ExperimentConfig(
        dataset=args.dataset, system=args.system, method=args.method,
        rho_lb=args.rho_lb, rho_ub=args.rho_ub, gamma=args.gamma,
        gamma_star=args.gamma_star, alpha=args.alpha, beta=args.beta, seeds=args.seeds,
        out=args.out, format=args.format, parsimony=args.parsimony,
        has_header=args.header, label_column=_label_column(args.label_column),
        merge_iterations=args.merge_iterations, timing=args.timing, jobs=args.jobs,
        **extra)


def _write(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _experiment(cfg):
    records = bench.run_experiment(cfg)
    summary = bench.summarize(records, cfg.parsimony)
    if cfg.out:
        bench.emit_results(records, summary, cfg.out, cfg.format)
        peak = summary.get("peak", {})
        print(f"{len(records)} runs -> {cfg.out}; peak AR {peak.get('mean_ar', float('nan')):.4f}"
              f" at rho_lb={peak.get('rho_lb')}, rho_ub={peak.get('rho_ub')}",
              file=sys.stderr)
    elif cfg.format == "csv":
        sys.stdout.write(bench.records_to_csv(records))
    else:
        body = {"records": [vars(r) for r in records], "summary": summary}
        sys.stdout.write(json.dumps(body, indent=2, sort_keys=True) + "\n")


def _gamma_sweep(cfg):
    rows, _ = bench.gamma_sweep(cfg)
    if cfg.format == "csv":
        _write(bench.sweep_to_csv(rows), cfg.out)
    else:
        _write(json.dumps(rows, indent=2, sort_keys=True) + "\n", cfg.out)


def _read_labels(path):
    text = Path(path).read_text(encoding="utf-8").replace(",", " ").split()
    return np.array([int(float(v)) if v.lstrip("-").replace(".", "", 1).isdigit() else v
                     for v in text])


def main(argv=None):
    args = parse_args(argv)
    try:
        if args.command in ("run", "grid"):
            _experiment(config_from_args(args))
        elif args.command == "gamma-sweep":
            _gamma_sweep(config_from_args(args))
        elif args.command == "vat-order":
            if not args.dataset:
                raise SystemExit("error: --dataset is required")
            ds = linear_normalize(resolve(args.dataset, args.header,
                                          _label_column(args.label_column)))
            order = vat_order(pairwise_dissimilarity(ds.features))
            _write("\n".join(str(i) for i in order) + "\n", args.out)
        elif args.command == "eval":
            a, b = _read_labels(args.reference), _read_labels(args.predicted)
            print(repr(adjusted_rand(a, b)))
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
