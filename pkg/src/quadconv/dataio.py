"""CSV ingestion, windowing for system identification, splitting, and
synthetic series generation.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ChannelMissing,
    InsufficientData,
    MissingColumn,
    ParseError,
)
from .regressor import Dataset

_SMOOTH = 5


@dataclass(frozen=True)
class TimeSeries:
    """Named channels of real samples, all of equal length."""

    channels: dict[str, np.ndarray]

    def __post_init__(self):
        if not self.channels:
            raise ValueError("a time series needs at least one channel")
        clean = {}
        length = None
        for name, values in self.channels.items():
            v = np.array(values, dtype=float, copy=True)
            if v.ndim != 1:
                raise ValueError(f"channel {name!r} must be 1-D, got shape {v.shape}")
            if length is None:
                length = v.size
            elif v.size != length:
                raise ValueError(
                    f"channel {name!r} has length {v.size}, expected {length}"
                )
            if not np.isfinite(v).all():
                raise ValueError(f"channel {name!r} contains non-finite values")
            v.setflags(write=False)
            clean[name] = v
        object.__setattr__(self, "channels", clean)

    @property
    def length(self) -> int:
        return next(iter(self.channels.values())).size

    @property
    def names(self) -> list[str]:
        return list(self.channels)

    def channel(self, name: str) -> np.ndarray:
        try:
            return self.channels[name]
        except KeyError:
            raise ChannelMissing(
                f"channel {name!r} not found; available: {self.names}"
            ) from None


@dataclass(frozen=True)
class SplitSpec:
    """Sequential prefix split: first floor(N * train_fraction) rows train."""

    train_fraction: float = 0.5
    mode: str = "sequential_prefix"

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction!r}")
        if self.mode != "sequential_prefix":
            raise ValueError(f"unknown split mode {self.mode!r}")


def _read_table(path, column_names=None):
    """Parse a headered CSV into named float columns.

    Returns (names, columns) where columns is a list of float lists in the
    order of `names`. Errors carry the file row and column name.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(f"{path}: empty file (missing header row)")
        names = [h.strip() for h in header]
        if len(set(names)) != len(names):
            raise ParseError(f"{path}: duplicate column names in header: {names}")
        if column_names is None:
            wanted = names
        else:
            wanted = list(column_names)
            for name in wanted:
                if name not in names:
                    raise MissingColumn(
                        f"{path}: column {name!r} not in header {names}"
                    )
        index = [names.index(name) for name in wanted]

        columns = [[] for _ in wanted]
        n_rows = 0
        for rownum, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(names):
                raise ParseError(
                    f"{path}: row {rownum}: expected {len(names)} fields, got {len(row)}"
                )
            for pos, col in enumerate(index):
                cell = row[col]
                try:
                    value = float(cell)
                except ValueError:
                    raise ParseError(
                        f"{path}: row {rownum}, column {wanted[pos]!r}: "
                        f"cannot parse {cell!r} as a number"
                    ) from None
                if not math.isfinite(value):
                    raise ParseError(
                        f"{path}: row {rownum}, column {wanted[pos]!r}: "
                        f"non-finite value {cell!r}"
                    )
                columns[pos].append(value)
            n_rows += 1
        if n_rows == 0:
            raise ParseError(f"{path}: no data rows after the header")
    return wanted, columns


def load_csv(path, schema=None) -> TimeSeries:
    """Read named channels from a headered CSV file.

    schema lists the channel names to extract; None takes every header
    column in file order.
    """
    names, columns = _read_table(path, schema)
    return TimeSeries({name: np.array(col) for name, col in zip(names, columns)})


def load_feature_csv(path):
    """Read feature rows, treating a column named 'y' (if present) as labels.

    Returns (X, y_or_None, feature_names). Feature columns keep header order.
    """
    names, columns = _read_table(path, None)
    feature_names = [n for n in names if n != "y"]
    X = np.column_stack([columns[names.index(n)] for n in feature_names])
    y = np.array(columns[names.index("y")]) if "y" in names else None
    return X, y, feature_names


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def dataset_to_csv(data: Dataset, path, feature_prefix: str = "x") -> None:
    """Write a dataset as x1..xn,y with lossless float formatting."""
    n = data.n_features
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join([f"{feature_prefix}{i + 1}" for i in range(n)] + ["y"]) + "\n")
        for row, label in zip(data.inputs, data.labels):
            fh.write(",".join([_fmt(v) for v in row] + [_fmt(label)]) + "\n")


def series_to_csv(ts: TimeSeries, path) -> None:
    """Write a time series as one column per channel."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(ts.names) + "\n")
        cols = [ts.channels[name] for name in ts.names]
        for i in range(ts.length):
            fh.write(",".join(_fmt(col[i]) for col in cols) + "\n")


def narx_window(ts: TimeSeries, input_channel: str, output_channel: str, d: int) -> Dataset:
    """Autoregressive windowing: the row for time t is
    [u_{t-d} .. u_{t-1}, y_{t-d} .. y_{t-1}] with label y_t.

    Produces N = T - d rows with n = 2d features.
    """
    if d < 1:
        raise ValueError(f"delay d must be >= 1, got {d}")
    u = ts.channel(input_channel)
    y = ts.channel(output_channel)
    T = ts.length
    if T <= d:
        raise InsufficientData(f"need more than d={d} samples, have {T}")
    uw = np.lib.stride_tricks.sliding_window_view(u, d)[: T - d]
    yw = np.lib.stride_tricks.sliding_window_view(y, d)[: T - d]
    return Dataset(np.hstack([uw, yw]), y[d:])


def multichannel_window(ts: TimeSeries, channels, r: int, label_channel: str) -> Dataset:
    """Block windowing for multi-rate data: each row concatenates r
    consecutive samples from every listed channel in order (n = r * len
    (channels)); blocks do not overlap. The label of a block is the change
    in the label channel from the block's first to its last sample.

    One call produces one single-output dataset; problems with several
    label channels (latitude and longitude, say) take one call per label.
    """
    if r < 1:
        raise ValueError(f"window length r must be >= 1, got {r}")
    channels = list(channels)
    if not channels:
        raise ValueError("need at least one feature channel")
    chans = [ts.channel(name) for name in channels]
    label = ts.channel(label_channel)
    W = ts.length // r
    if W < 1:
        raise InsufficientData(f"need at least r={r} samples, have {ts.length}")
    rows = np.empty((W, r * len(chans)))
    for w in range(W):
        rows[w] = np.concatenate([ch[w * r : (w + 1) * r] for ch in chans])
    starts = np.arange(W) * r
    labels = label[starts + r - 1] - label[starts]
    return Dataset(rows, labels)


def split(data: Dataset, s: SplitSpec):
    """Order-preserving sequential split into (train, test)."""
    N = data.n_samples
    if N < 2:
        raise InsufficientData(f"need at least 2 samples to split, have {N}")
    k = int(N * s.train_fraction)
    if k < 1 or k >= N:
        raise InsufficientData(
            f"train_fraction {s.train_fraction} leaves an empty side for N={N}"
        )
    train = Dataset(data.inputs[:k], data.labels[:k])
    test = Dataset(data.inputs[k:], data.labels[k:])
    return train, test


def synth_narx(T: int, seed=0) -> TimeSeries:
    """Deterministic synthetic input/output series for end-to-end runs.

    The input u is uniform noise smoothed by a length-5 moving average and
    scaled to amplitude 0.9 (band-limited, bounded). The output follows

        y[t] = 0.3 y[t-1] - 0.2 y[t-2] + 0.8 u[t-1] + 0.2 u[t-2]
               + 0.05 u[t-1] u[t-2] + 0.02 u[t-1]^2
               - 0.03 y[t-1] y[t-2] - 0.02 y[t-1]^2

    Every term involves lags that sit within bandwidth 3 of the windowed
    feature layout for any delay d >= 2, the squared terms cancel in trace
    and there is no constant term, so a banded quadratic model with f >= 3
    represents the map exactly and reaches near-zero test error.
    """
    if T < 20:
        raise ValueError(f"T must be >= 20, got {T}")
    rng = np.random.default_rng(seed)
    raw = rng.uniform(-1.0, 1.0, size=T + _SMOOTH - 1)
    u = np.convolve(raw, np.ones(_SMOOTH) / _SMOOTH, mode="valid")
    u *= 0.9 / max(float(np.abs(u).max()), 1e-12)
    y = np.zeros(T)
    for t in range(2, T):
        y[t] = (
            0.3 * y[t - 1]
            - 0.2 * y[t - 2]
            + 0.8 * u[t - 1]
            + 0.2 * u[t - 2]
            + 0.05 * u[t - 1] * u[t - 2]
            + 0.02 * u[t - 1] ** 2
            - 0.03 * y[t - 1] * y[t - 2]
            - 0.02 * y[t - 1] ** 2
        )
    return TimeSeries({"u": u, "y": y})


def mse(predictions, targets) -> float:
    """Mean over samples of the squared error."""
    p = np.asarray(predictions, dtype=float)
    t = np.asarray(targets, dtype=float)
    if p.shape != t.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {t.shape}")
    return float(np.mean((p - t) ** 2))
