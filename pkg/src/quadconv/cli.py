"""Command-line front-end.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .core import ConvSpec, RELU_MIMIC, validate_activation
from .dataio import (
    SplitSpec,
    load_csv,
    load_feature_csv,
    mse,
    multichannel_window,
    narx_window,
    split,
)
from .errors import (
    ChannelMissing,
    DimensionMismatch,
    InsufficientData,
    InvalidActivation,
    MalformedModelFile,
    MissingColumn,
    NegativeRegularizer,
    NonFiniteInput,
    ParseError,
)
from .model import deserialize, predict_batch, sensitivity_batch, serialize, to_weight_vector
from .train import fit
from .verify import run_all_checks

_DATA_ERRORS = (
    FileNotFoundError,
    IsADirectoryError,
    ParseError,
    MissingColumn,
    ChannelMissing,
    InsufficientData,
    DimensionMismatch,
    NonFiniteInput,
    MalformedModelFile,
)


class _ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage problems exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _add_common_train_args(p):
    p.add_argument("--data", required=True, help="input CSV with a header row")
    p.add_argument("--mode", choices=("narx", "window"), default="narx",
                   help="feature construction (default: narx)")
    p.add_argument("--d", type=int, help="narx mode: number of past samples per channel")
    p.add_argument("--r", type=int, help="window mode: samples per block and channel")
    p.add_argument("--channels", help="comma-separated channel names "
                   "(narx: input,output; window: feature channels; default: from header)")
    p.add_argument("--label", help="window mode: label channel (first differences per block)")
    p.add_argument("--a", type=float, default=RELU_MIMIC.a, help="activation a (default %(default)s)")
    p.add_argument("--b", type=float, default=RELU_MIMIC.b, help="activation b (default %(default)s)")
    p.add_argument("--c", type=float, default=RELU_MIMIC.c, help="activation c (default %(default)s)")
    p.add_argument("--split", type=float, default=0.5, dest="split_fraction",
                   help="sequential train fraction (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed recorded with the run")


def build_parser() -> _Parser:
    parser = _Parser(prog="quadconv", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", parents=[], help="fit a banded quadratic model")
    _add_common_train_args(p)
    p.add_argument("--f", type=int, required=True, help="filter length")
    p.add_argument("--beta", default="0", help="comma-separated ridge weights (default 0)")
    p.add_argument("--out", required=True, help="model JSON path (suffixed per beta for sweeps)")
    p.add_argument("--metrics", help="optional metrics CSV path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="evaluate a model on feature rows")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True, help="feature CSV; a column named 'y' is the truth")
    p.add_argument("--out", required=True, help="predictions CSV")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sensitivity", help="input gradients of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--x0", required=True, help="CSV of evaluation points (a 'y' column is ignored)")
    p.add_argument("--out", required=True, help="gradients CSV")
    p.add_argument("--summary", action="store_true",
                   help="append a per-feature max |gradient| row")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("verify", help="run the randomized oracle suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="timing/MSE table across filter lengths")
    _add_common_train_args(p)
    p.add_argument("--f-list", required=True, dest="f_list",
                   help="comma-separated filter lengths; the dense f=n row is always added")
    p.add_argument("--out", required=True, help="benchmark CSV")
    p.add_argument("--repeats", type=int, default=3, help="timing repetitions (min is kept)")
    p.set_defaults(func=cmd_bench)
    return parser


def _parse_channels(arg):
    if arg is None:
        return None
    names = [c.strip() for c in arg.split(",") if c.strip()]
    if not names:
        raise _ConfigError("--channels must name at least one channel")
    return names


def _windowed_dataset(args):
    """Load the CSV and build the windowed dataset per the configured mode."""
    channels = _parse_channels(args.channels)
    ts = load_csv(args.data, None)
    if args.mode == "narx":
        if args.d is None:
            raise _ConfigError("narx mode requires --d")
        if args.d < 1:
            raise _ConfigError("--d must be >= 1")
        names = channels if channels is not None else ts.names
        if len(names) < 2:
            raise _ConfigError("narx mode needs an input and an output channel")
        return narx_window(ts, names[0], names[1], args.d)
    if args.r is None:
        raise _ConfigError("window mode requires --r")
    if args.r < 1:
        raise _ConfigError("--r must be >= 1")
    if args.label is None:
        raise _ConfigError("window mode requires --label")
    names = channels if channels is not None else [n for n in ts.names if n != args.label]
    return multichannel_window(ts, names, args.r, args.label)


def _train_config(args):
    try:
        params = validate_activation(args.a, args.b, args.c)
        split_spec = SplitSpec(train_fraction=args.split_fraction)
    except (InvalidActivation, ValueError) as e:
        raise _ConfigError(str(e)) from None
    return params, split_spec


def _beta_list(arg):
    try:
        betas = [float(v) for v in arg.split(",") if v.strip() != ""]
    except ValueError:
        raise _ConfigError(f"cannot parse --beta list {arg!r}") from None
    if not betas:
        raise _ConfigError("--beta must contain at least one value")
    if any(b < 0 for b in betas):
        raise _ConfigError("--beta values must be >= 0")
    return betas


def _beta_path(base: str, beta: float, multiple: bool) -> Path:
    path = Path(base)
    if not multiple:
        return path
    return path.with_name(f"{path.stem}_beta{beta:g}{path.suffix or '.json'}")


def cmd_train(args) -> int:
    params, split_spec = _train_config(args)
    betas = _beta_list(args.beta)
    if args.f < 1:
        raise _ConfigError("--f must be >= 1")

    data = _windowed_dataset(args)
    if args.f > data.n_features:
        raise _ConfigError(f"--f {args.f} exceeds the feature count n={data.n_features}")
    spec = ConvSpec(data.n_features, args.f)
    train_set, test_set = split(data, split_spec)

    rows = []
    for beta in betas:
        result = fit(train_set, spec, params, beta)
        train_mse = mse(predict_batch(result.model, train_set.inputs), train_set.labels)
        test_mse = mse(predict_batch(result.model, test_set.inputs), test_set.labels)
        theta_norm = float(np.linalg.norm(to_weight_vector(result.model).theta))
        out_path = _beta_path(args.out, beta, len(betas) > 1)
        out_path.write_text(serialize(result.model), encoding="utf-8")
        rows.append((beta, train_mse, test_mse, result.train_seconds, theta_norm))
        print(
            f"beta={beta:g} train_mse={train_mse:.6e} test_mse={test_mse:.6e} "
            f"train_time_s={result.train_seconds:.6f} model={out_path}"
        )

    if args.metrics:
        with open(args.metrics, "w", encoding="utf-8") as fh:
            fh.write("beta,f,n,n_train,n_test,train_mse,test_mse,train_time_s,theta_norm\n")
            for beta, tr, te, secs, norm in rows:
                fh.write(
                    f"{_fmt(beta)},{spec.f},{spec.n},{train_set.n_samples},"
                    f"{test_set.n_samples},{_fmt(tr)},{_fmt(te)},{secs:.6f},{_fmt(norm)}\n"
                )
    return 0


def _load_model(path: str):
    return deserialize(Path(path).read_text(encoding="utf-8"))


def cmd_predict(args) -> int:
    model = _load_model(args.model)
    X, y_true, _ = load_feature_csv(args.data)
    if X.shape[1] != model.spec.n:
        raise DimensionMismatch(
            f"model expects n={model.spec.n} features, data has {X.shape[1]}"
        )
    y_pred = predict_batch(model, X)
    with open(args.out, "w", encoding="utf-8") as fh:
        if y_true is not None:
            fh.write("index,y_true,y_pred\n")
            for i, (t, p) in enumerate(zip(y_true, y_pred)):
                fh.write(f"{i},{_fmt(t)},{_fmt(p)}\n")
        else:
            fh.write("index,y_pred\n")
            for i, p in enumerate(y_pred):
                fh.write(f"{i},{_fmt(p)}\n")
    if y_true is not None:
        print(f"mse={mse(y_pred, y_true):.17g} rows={len(y_pred)} out={args.out}")
    else:
        print(f"rows={len(y_pred)} out={args.out}")
    return 0


def cmd_sensitivity(args) -> int:
    model = _load_model(args.model)
    X0, _, _ = load_feature_csv(args.x0)
    if X0.shape[1] != model.spec.n:
        raise DimensionMismatch(
            f"model expects n={model.spec.n} features, x0 rows have {X0.shape[1]}"
        )
    grads = sensitivity_batch(model, X0)
    n = model.spec.n
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("index," + ",".join(f"g{i + 1}" for i in range(n)) + "\n")
        for i, row in enumerate(grads):
            fh.write(f"{i}," + ",".join(_fmt(v) for v in row) + "\n")
        if args.summary:
            peak = np.abs(grads).max(axis=0)
            fh.write("max_abs," + ",".join(_fmt(v) for v in peak) + "\n")
    print(f"rows={len(grads)} out={args.out}")
    return 0


def cmd_verify(args) -> int:
    if args.instances < 0:
        raise _ConfigError("--instances must be >= 0")
    if args.instances == 0:
        print("warning: 0 instances requested; all suites pass vacuously")
    results = run_all_checks(args.seed, args.instances)
    for r in results:
        print(r.line())
    if all(r.passed for r in results):
        print("all suites passed")
        return 0
    print("verification FAILED", file=sys.stderr)
    return 3


def cmd_bench(args) -> int:
    params, split_spec = _train_config(args)
    try:
        f_values = [int(v) for v in args.f_list.split(",") if v.strip() != ""]
    except ValueError:
        raise _ConfigError(f"cannot parse --f-list {args.f_list!r}") from None
    if not f_values or any(f < 1 for f in f_values):
        raise _ConfigError("--f-list must contain integers >= 1")
    if args.repeats < 1:
        raise _ConfigError("--repeats must be >= 1")

    data = _windowed_dataset(args)
    n = data.n_features
    if any(f > n for f in f_values):
        raise _ConfigError(f"--f-list contains values above the feature count n={n}")
    if n not in f_values:
        f_values.append(n)
    train_set, test_set = split(data, split_spec)

    rows = []
    for f in f_values:
        spec = ConvSpec(n, f)
        best = None
        result = None
        for _ in range(args.repeats):
            result = fit(train_set, spec, params, 0.0)
            best = result.train_seconds if best is None else min(best, result.train_seconds)
        method = "ls-qnn" if f == n else "ls-cqnn"
        train_mse = mse(predict_batch(result.model, train_set.inputs), train_set.labels)
        test_mse = mse(predict_batch(result.model, test_set.inputs), test_set.labels)
        rows.append((method, f, train_mse, test_mse, best))

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("method,f,train_mse,test_mse,train_time_s\n")
        for method, f, tr, te, secs in rows:
            fh.write(f"{method},{f},{_fmt(tr)},{_fmt(te)},{secs:.6f}\n")
    for method, f, tr, te, secs in rows:
        print(f"{method:8s} f={f:<4d} train_mse={tr:.6e} test_mse={te:.6e} train_time_s={secs:.6f}")

    dense = {f: secs for _, f, _, _, secs in rows}[n]
    for method, f, _, _, secs in rows:
        if f < n and secs > dense:
            print(
                f"warning: ls-cqnn f={f} timed slower than the dense fit "
                f"({secs:.6f}s vs {dense:.6f}s); timings on tiny problems are noisy",
                file=sys.stderr,
            )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    try:
        return args.func(args)
    except _ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except NegativeRegularizer as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except _DATA_ERRORS as e:
        print(f"data error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
