"""Banded quadratic input-output model: reconstruction from the weight
vector, prediction, input sensitivity, and JSON (de)serialization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import ActivationParams, ConvSpec, band_index_map, validate_activation
from .errors import DimensionMismatch, InvalidActivation, MalformedModelFile
from .solver import WeightVector

_MODEL_FIELDS = ("n", "f", "a", "b", "c", "zbar1_band", "zbar2")


@dataclass(frozen=True)
class QuadraticModel:
    """Output map a * x' Zbar1 x + b * Zbar2' x + c * Zbar4.

    Zbar1 is symmetric with zero entries wherever |row - col| >= f and is
    stored as its band coefficients (diagonal-major, true values). Zbar4
    is the trace of Zbar1 and is derived, never stored, so the trace tie
    cannot drift. Activation coefficients travel with the model so it is
    self-contained for prediction.
    """

    zbar1_band: np.ndarray
    zbar2: np.ndarray
    spec: ConvSpec
    params: ActivationParams

    def __post_init__(self):
        band = np.array(self.zbar1_band, dtype=float, copy=True)
        z2 = np.array(self.zbar2, dtype=float, copy=True)
        if band.shape != (self.spec.band_size,):
            raise DimensionMismatch(
                f"band must have length {self.spec.band_size}, got shape {band.shape}"
            )
        if z2.shape != (self.spec.n,):
            raise DimensionMismatch(
                f"zbar2 must have length {self.spec.n}, got shape {z2.shape}"
            )
        band.setflags(write=False)
        z2.setflags(write=False)
        object.__setattr__(self, "zbar1_band", band)
        object.__setattr__(self, "zbar2", z2)

    @property
    def zbar4(self) -> float:
        return float(self.zbar1_band[: self.spec.n].sum())

    def zbar1_dense(self) -> np.ndarray:
        """Materialize Zbar1 as a dense symmetric n x n matrix."""
        m = band_index_map(self.spec)
        Z = np.zeros((self.spec.n, self.spec.n))
        Z[m.rows, m.cols] = self.zbar1_band
        Z[m.cols, m.rows] = self.zbar1_band
        return Z

    @classmethod
    def from_dense(cls, zbar1, zbar2, spec: ConvSpec, params: ActivationParams) -> "QuadraticModel":
        """Build from a dense Zbar1, which must be symmetric and exactly
        zero outside the first f diagonals."""
        Z = np.asarray(zbar1, dtype=float)
        if Z.shape != (spec.n, spec.n):
            raise DimensionMismatch(f"expected {spec.n} x {spec.n} matrix, got {Z.shape}")
        if not np.array_equal(Z, Z.T):
            raise ValueError("dense Zbar1 must be symmetric")
        r, c = np.indices(Z.shape)
        if np.any(Z[np.abs(r - c) >= spec.f] != 0.0):
            raise ValueError(f"dense Zbar1 has nonzero entries outside bandwidth f={spec.f}")
        m = band_index_map(spec)
        return cls(Z[m.rows, m.cols], zbar2, spec, params)


def reconstruct(theta: WeightVector, params: ActivationParams) -> QuadraticModel:
    """Invert the weight-vector layout.

    Off-diagonal band entries are stored doubled in theta (each unordered
    pair appears once in the regressor), so they are halved here.
    """
    spec = theta.spec
    t = theta.theta
    band = t[: spec.band_size].copy()
    band[spec.n :] *= 0.5
    return QuadraticModel(band, t[spec.band_size :], spec, params)


def to_weight_vector(model: QuadraticModel) -> WeightVector:
    """Inverse of reconstruct: double the off-diagonal band entries."""
    band = model.zbar1_band.copy()
    band[model.spec.n :] *= 2.0
    return WeightVector(np.concatenate([band, model.zbar2]), model.spec)


def _row_values(model: QuadraticModel, X: np.ndarray) -> np.ndarray:
    m = band_index_map(model.spec)
    mult = np.ones(len(m))
    mult[model.spec.n :] = 2.0
    quad = (X[:, m.rows] * X[:, m.cols]) @ (mult * model.zbar1_band)
    p = model.params
    return p.a * quad + p.b * (X @ model.zbar2) + p.c * model.zbar4


def predict(model: QuadraticModel, x) -> float:
    """Evaluate a * x' Zbar1 x + b * Zbar2' x + c * Zbar4 at one input."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.spec.n,):
        raise DimensionMismatch(f"expected input of length {model.spec.n}, got shape {x.shape}")
    return float(_row_values(model, x[None, :])[0])


def predict_batch(model: QuadraticModel, X) -> np.ndarray:
    """Vectorized predict over rows of X."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.spec.n:
        raise DimensionMismatch(
            f"expected rows of length {model.spec.n}, got shape {X.shape}"
        )
    return _row_values(model, X)


def sensitivity(model: QuadraticModel, x0) -> np.ndarray:
    """Gradient of the output with respect to the input at x0:
    2a * Zbar1 x0 + b * Zbar2."""
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (model.spec.n,):
        raise DimensionMismatch(f"expected input of length {model.spec.n}, got shape {x0.shape}")
    p = model.params
    return 2.0 * p.a * (model.zbar1_dense() @ x0) + p.b * model.zbar2


def sensitivity_batch(model: QuadraticModel, X0) -> np.ndarray:
    """Vectorized sensitivity over rows of X0."""
    X0 = np.asarray(X0, dtype=float)
    if X0.ndim != 2 or X0.shape[1] != model.spec.n:
        raise DimensionMismatch(
            f"expected rows of length {model.spec.n}, got shape {X0.shape}"
        )
    p = model.params
    return 2.0 * p.a * (X0 @ model.zbar1_dense()) + p.b * model.zbar2


def _fmt(v: float) -> str:
    v = float(v)
    if not math.isfinite(v):
        raise ValueError("cannot serialize non-finite value")
    return format(v, ".17g")


def serialize(model: QuadraticModel) -> str:
    """Render the model as JSON with 17-significant-digit numbers, which
    round-trip float64 exactly. Zbar4 is derived on load and not stored.
    """
    band = ", ".join(_fmt(v) for v in model.zbar1_band)
    z2 = ", ".join(_fmt(v) for v in model.zbar2)
    p = model.params
    return (
        "{\n"
        f'  "n": {model.spec.n},\n'
        f'  "f": {model.spec.f},\n'
        f'  "a": {_fmt(p.a)},\n'
        f'  "b": {_fmt(p.b)},\n'
        f'  "c": {_fmt(p.c)},\n'
        f'  "zbar1_band": [{band}],\n'
        f'  "zbar2": [{z2}]\n'
        "}\n"
    )


def _reject_constant(token: str):
    raise MalformedModelFile(f"non-finite number {token!r} is not allowed")


def _require_int(doc: dict, key: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise MalformedModelFile(f"field {key!r} must be an integer, got {v!r}")
    return v


def _require_num(doc: dict, key: str) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise MalformedModelFile(f"field {key!r} must be a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise MalformedModelFile(f"field {key!r} must be finite, got {v!r}")
    return v


def _require_num_list(doc: dict, key: str, length: int, why: str) -> np.ndarray:
    v = doc[key]
    if not isinstance(v, list):
        raise MalformedModelFile(f"field {key!r} must be an array, got {type(v).__name__}")
    if len(v) != length:
        raise MalformedModelFile(
            f"field {key!r} must have {length} entries ({why}), got {len(v)}"
        )
    out = np.empty(length)
    for i, item in enumerate(v):
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise MalformedModelFile(f"field {key!r}, entry {i}: not a number: {item!r}")
        out[i] = item
    if not np.isfinite(out).all():
        raise MalformedModelFile(f"field {key!r} contains non-finite values")
    return out


def deserialize(text: str) -> QuadraticModel:
    """Parse a model file, reporting the offending line or field on error."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise MalformedModelFile(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise MalformedModelFile("model file must contain a JSON object")

    missing = [k for k in _MODEL_FIELDS if k not in doc]
    if missing:
        raise MalformedModelFile(f"missing field(s): {', '.join(missing)}")
    unknown = sorted(set(doc) - set(_MODEL_FIELDS) - {"zbar4"})
    if unknown:
        raise MalformedModelFile(f"unexpected field(s): {', '.join(unknown)}")

    n = _require_int(doc, "n")
    f = _require_int(doc, "f")
    try:
        spec = ConvSpec(n, f)
    except ValueError as e:
        raise MalformedModelFile(f"fields 'n'/'f': {e}") from None
    try:
        params = validate_activation(
            _require_num(doc, "a"), _require_num(doc, "b"), _require_num(doc, "c")
        )
    except InvalidActivation as e:
        raise MalformedModelFile(f"activation fields: {e}") from None

    band = _require_num_list(
        doc, "zbar1_band", spec.band_size, f"the first f={f} diagonals of an {n} x {n} matrix"
    )
    z2 = _require_num_list(doc, "zbar2", n, "one entry per input feature")
    model = QuadraticModel(band, z2, spec, params)

    if "zbar4" in doc:
        stored = _require_num(doc, "zbar4")
        trace = model.zbar4
        if abs(stored - trace) > 1e-9 * max(1.0, abs(trace)):
            raise MalformedModelFile(
                f"field 'zbar4' ({stored!r}) violates the trace tie (trace is {trace!r})"
            )
    return model
