"""Command-line interface: benchmarks, single-file fits, and kernel traces.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .data import TabularDataset, load_csv
from .errors import DataError, SolverError
from .kernels import CenterRule, ParamGrid

PROG = "mccvc"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; remap to the documented code 1.
    def error(self, message):
        raise UsageError(message)


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("true", "1", "yes", "on"):
        return True
    if value in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _parse_range(text: str) -> np.ndarray:
    """Parse 'start:step:end' into an inclusive, evenly spaced grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:step:end, got {text!r}")
    try:
        start, step, end = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric grid bound in {text!r}") from None
    if step <= 0 or end < start:
        raise argparse.ArgumentTypeError(f"grid {text!r} must ascend with step > 0")
    count = int(round((end - start) / step)) + 1
    values = start + step * np.arange(count)
    return values[values <= end + 0.5 * step]

def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats: {text!r}") from None


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _parse_str_list(text: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in text.split(",") if p.strip())


def _parse_target(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _add_common_flags(p: argparse.ArgumentParser, runs_default: int = 100):
    p.add_argument("--seed", type=int, default=42, help="base seed (default 42)")
    p.add_argument("--runs", type=int, default=runs_default,
                   help=f"Monte Carlo replications (default {runs_default})")
    p.add_argument("--out", type=Path, default=None, help="output file path")
    p.add_argument("--lambda-prime", type=float, default=1e-4,
                   help="regularizer of the fixed-point solvers (default 1e-4)")
    p.add_argument("--max-iter", type=int, default=100,
                   help="fixed-point iteration cap (default 100)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="cost-change stopping tolerance (default 1e-9)")


def _add_grid_flags(p: argparse.ArgumentParser, sigma_default: str, rule_default: str):
    p.add_argument("--sigma-grid", type=_parse_range, default=_parse_range(sigma_default),
                   metavar="START:STEP:END",
                   help=f"kernel width grid (default {sigma_default})")
    p.add_argument("--center-grid", type=_parse_range, default=_parse_range("-5.0:0.1:5.0"),
                   metavar="START:STEP:END",
                   help="kernel center grid (default -5.0:0.1:5.0)")
    p.add_argument("--center-rule", choices=["grid", "mean", "median"],
                   default=rule_default,
                   help=f"center selection rule (default {rule_default})")


def _add_dataset_flags(p: argparse.ArgumentParser):
    p.add_argument("--csv", type=Path, action="append", required=True,
                   help="input CSV path (repeatable for data-bench)")
    p.add_argument("--target", type=_parse_target, default=-1,
                   help="target column name or 0-based index (default -1, the last)")
    p.add_argument("--no-header", action="store_true",
                   help="treat the first CSV row as data, not column names")
    p.add_argument("--model", choices=["linear", "elm"], default="elm",
                   help="feature map (default elm)")
    p.add_argument("--hidden", type=int, default=100,
                   help="hidden node count for the elm model (default 100)")
    p.add_argument("--bias-column", type=_parse_bool, default=False, metavar="BOOL",
                   help="append a constant column to linear features (default false)")


def _grid_from_args(args) -> ParamGrid:
    rule = CenterRule(args.center_rule)
    centers = args.center_grid if rule is CenterRule.EXPLICIT_GRID else None
    return ParamGrid(sigma_set=args.sigma_grid, center_set=centers, center_rule=rule)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth-bench", help="Monte Carlo benchmark on synthetic mixtures")
    _add_common_flags(p)
    p.add_argument("--methods", type=_parse_str_list, default=("mmse", "mcc", "mcc-vc"),
                   help="comma list among mmse,mcc,mcc-vc (default all)")
    p.add_argument("--cases", type=_parse_int_list, default=(1, 2, 3, 4),
                   help="contamination cases to run (default 1,2,3,4)")
    p.add_argument("--samples", type=int, default=400,
                   help="samples per replication (default 400)")
    p.add_argument("--mcc-sigma", type=_parse_float_list, default=(4.0,),
                   help="fixed kernel width(s) for the zero-center baseline; "
                        "a comma list sweeps one section per width (default 4.0)")
    p.add_argument("--jobs", type=int, default=1,
                   help="replication worker threads (default 1)")
    _add_grid_flags(p, sigma_default="0.2:0.2:5.0", rule_default="grid")

    p = sub.add_parser("data-bench", help="cross-validated benchmark on CSV datasets")
    _add_common_flags(p)
    _add_dataset_flags(p)
    p.add_argument("--methods", type=_parse_str_list,
                   default=("relm", "elm-mcc", "elm-mcc-vc"),
                   help="comma list (default relm,elm-mcc,elm-mcc-vc)")
    p.add_argument("--train-frac", type=float, default=0.5,
                   help="training fraction of each split (default 0.5)")
    p.add_argument("--folds", type=int, default=5,
                   help="cross-validation folds (default 5)")
    p.add_argument("--lambda-grid", type=_parse_float_list,
                   default=(0.0, 1e-6, 1e-4, 1e-2, 1.0),
                   help="regularizer candidates (default 0,1e-6,1e-4,1e-2,1)")
    p.add_argument("--mcc-sigma", type=_parse_float_list, default=(0.5, 1.0, 2.0, 5.0),
                   help="width candidates for the zero-center baseline")
    p.add_argument("--norm-scope", choices=["full", "train", "none"], default="full",
                   help="min-max normalization scope (default full)")
    _add_grid_flags(p, sigma_default="0.1:0.1:2.0", rule_default="median")

    p = sub.add_parser("fit", help="fit one method on a CSV and save the model")
    _add_common_flags(p, runs_default=1)
    _add_dataset_flags(p)
    p.add_argument("--method", default="mcc-vc",
                   help="mmse|mcc|mcc-vc (and their elm- aliases; default mcc-vc)")
    p.add_argument("--mcc-sigma", type=float, default=1.0,
                   help="fixed kernel width for --method mcc (default 1.0)")
    p.add_argument("--normalize", type=_parse_bool, default=True, metavar="BOOL",
                   help="min-max scale features and target before fitting (default true)")
    _add_grid_flags(p, sigma_default="0.2:0.2:5.0", rule_default="grid")

    p = sub.add_parser("kernel-trace", help="residual histogram vs fitted kernel curves")
    _add_common_flags(p)
    p.add_argument("--case", type=int, default=2,
                   help="synthetic contamination case 1-4 (default 2)")
    p.add_argument("--csv", type=Path, default=None,
                   help="fit a CSV instead of a synthetic case")
    p.add_argument("--target", type=_parse_target, default=-1)
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--samples", type=int, default=400,
                   help="synthetic sample count (default 400)")
    p.add_argument("--iterations", type=_parse_int_list, default=(1, 2),
                   help="1-based iterations to capture (default 1,2)")
    p.add_argument("--bins", type=int, default=24,
                   help="histogram bin count (default 24)")
    p.add_argument("--hist-range", choices=["robust", "full"], default="robust",
                   help="clip bins to the inner-noise region or span all residuals")
    _add_grid_flags(p, sigma_default="0.2:0.2:5.0", rule_default="grid")

    return parser


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _write_json(obj: dict, path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _write_trace_csv(traces: list[dict], path: Path):
    # Long format: one row per histogram bin and per curve sample.
    lines = ["iteration,kind,x_left,x_right,value"]
    for tr in traces:
        edges, dens = tr["bin_edges"], tr["density"]
        for i, v in enumerate(dens):
            lines.append(f"{tr['iteration']},hist,{edges[i]!r},{edges[i + 1]!r},{v!r}")
        for x, y in zip(tr["curve_x"], tr["curve_y"]):
            lines.append(f"{tr['iteration']},curve,{x!r},{x!r},{y!r}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _fmt(value, width=9, prec=4):
    if value is None:
        return " " * (width - 3) + "n/a"
    return f"{value:{width}.{prec}f}"


def _print_synth_table(report: dict):
    print(f"{'method':<12} {'case':<14} {'mean rmse':>10} {'std':>9} "
          f"{'mean s':>9} {'runs':>5} {'fail':>5}")
    for row in report["results"]:
        print(
            f"{row['method']:<12} {row['case_label']:<14} "
            f"{_fmt(row['mean_rmse'], 10)} {_fmt(row['std_rmse'])} "
            f"{_fmt(row['mean_time_s'])} {row['runs']:>5} {row['failures']:>5}"
        )


def _print_data_table(report: dict):
    print(f"{'dataset':<16} {'method':<12} {'train rmse':>11} {'std':>9} "
          f"{'test rmse':>10} {'std':>9} {'runs':>5} {'fail':>5}")
    for section in report["datasets"]:
        for row in section["results"]:
            print(
                f"{section['dataset']:<16} {row['method']:<12} "
                f"{_fmt(row['mean_train_rmse'], 11)} {_fmt(row['std_train_rmse'])} "
                f"{_fmt(row['mean_test_rmse'], 10)} {_fmt(row['std_test_rmse'])} "
                f"{row['runs']:>5} {row['failures']:>5}"
            )


# ---------------------------------------------------------------------------
# Command implementations
# ---------------------------------------------------------------------------

def _cmd_synth_bench(args) -> int:
    cfg = bench.SynthBenchConfig(
        seed=args.seed,
        runs=args.runs,
        n_samples=args.samples,
        methods=tuple(args.methods),
        cases=tuple(args.cases),
        lambda_prime=args.lambda_prime,
        mcc_sigmas=tuple(args.mcc_sigma),
        grid=_grid_from_args(args),
        max_iterations=args.max_iter,
        tolerance=args.tol,
        jobs=args.jobs,
    )
    report = bench.run_synth_bench(cfg)
    out = args.out or Path("synth-bench.json")
    _write_json(report, out)
    _print_synth_table(report)
    print(f"report written to {out}")
    return EXIT_OK


def _load_datasets(args) -> list[tuple[str, TabularDataset]]:
    paths = args.csv if isinstance(args.csv, list) else [args.csv]
    return [
        (p.stem, load_csv(p, has_header=not args.no_header, target_column=args.target))
        for p in paths
    ]


def _cmd_data_bench(args) -> int:
    cfg = bench.DataBenchConfig(
        target=args.target,
        train_fraction=args.train_frac,
        folds=args.folds,
        runs=args.runs,
        seed=args.seed,
        model=args.model,
        hidden=args.hidden,
        bias_column=args.bias_column,
        methods=tuple(args.methods),
        lambda_grid=tuple(args.lambda_grid),
        mcc_sigma_grid=tuple(args.mcc_sigma),
        vc_grid=_grid_from_args(args),
        max_iterations=args.max_iter,
        tolerance=args.tol,
        norm_scope=args.norm_scope,
    )
    report = bench.run_data_bench(_load_datasets(args), cfg)
    out = args.out or Path("data-bench.json")
    _write_json(report, out)
    _print_data_table(report)
    print(f"report written to {out}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    name, data = _load_datasets(args)[0]
    cfg = bench.FitCmdConfig(
        method=args.method,
        model=args.model,
        hidden=args.hidden,
        bias_column=args.bias_column,
        normalize=args.normalize,
        lambda_prime=args.lambda_prime,
        mcc_sigma=args.mcc_sigma,
        grid=_grid_from_args(args),
        max_iterations=args.max_iter,
        tolerance=args.tol,
        seed=args.seed,
    )
    model = bench.run_fit(data, cfg)
    out = args.out or Path("model.json")
    _write_json(model, out)
    print(f"{name}: training rmse {model['training_rmse']:.6g} "
          f"({data.n_rows} rows, method {cfg.method})")
    if model["kernel"] is not None:
        print(f"kernel: sigma*={model['kernel']['sigma']:.4g} "
              f"center*={model['kernel']['center']:.4g}")
    print(f"model written to {out}")
    return EXIT_OK


def _cmd_kernel_trace(args) -> int:
    cfg = bench.KernelTraceConfig(
        iterations=tuple(args.iterations),
        bins=args.bins,
        hist_range=args.hist_range,
        lambda_prime=args.lambda_prime,
        grid=_grid_from_args(args),
        max_iterations=args.max_iter,
        tolerance=args.tol,
    )
    if args.csv is not None:
        data = load_csv(args.csv, has_header=not args.no_header, target_column=args.target)
        H, targets = data.features, data.targets
        source = {"csv": str(args.csv)}
    else:
        H, targets = bench.synth_case_design(args.case, args.samples, args.seed)
        source = {"case": args.case, "samples": args.samples, "seed": args.seed}

    traces, result = bench.run_kernel_trace(H, targets, cfg)
    out = args.out or Path("kernel-trace.json")
    if out.suffix.lower() == ".csv":
        _write_trace_csv(traces, out)
    else:
        _write_json(
            {
                "command": "kernel-trace",
                "source": source,
                "iterations_run": result.iterations_run,
                "converged": result.converged,
                "traces": traces,
            },
            out,
        )
    for tr in traces:
        print(f"iteration {tr['iteration']}: sigma*={tr['sigma']:.4g} "
              f"center*={tr['center']:.4g} residual median {tr['residual_median']:.4g}")
    print(f"trace written to {out}")
    return EXIT_OK


_COMMANDS = {
    "synth-bench": _cmd_synth_bench,
    "data-bench": _cmd_data_bench,
    "fit": _cmd_fit,
    "kernel-trace": _cmd_kernel_trace,
}


# Flags whose values may begin with a dash (negative grid bounds); argparse
# would otherwise read the value as an option name.
_DASH_VALUE_FLAGS = ("--center-grid", "--sigma-grid")


def _merge_dash_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok in _DASH_VALUE_FLAGS
            and i + 1 < len(argv)
            and argv[i + 1].startswith("-")
            and len(argv[i + 1]) > 1
            and (argv[i + 1][1].isdigit() or argv[i + 1][1] == ".")
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_dash_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"{PROG}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolverError as exc:
        print(f"{PROG}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
