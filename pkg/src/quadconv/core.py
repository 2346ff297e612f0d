"""Core domain types: activation coefficients, filter geometry, and the
diagonal-major band vectorization that turns quadratic fitting into a
linear regression.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, InvalidActivation


@dataclass(frozen=True)
class ActivationParams:
    """Coefficients (a, b, c) of the quadratic activation a*z**2 + b*z + c.

    The constructor does not validate; use :func:`validate_activation` to
    enforce a > 0, c > 0 and b**2 - 4ac >= 0, the conditions under which
    the unconstrained least-squares fit is also the solution of the
    constrained convex training problem.
    """

    a: float
    b: float
    c: float

    @property
    def discriminant(self) -> float:
        return self.b * self.b - 4.0 * self.a * self.c


#: Coefficients that mimic a ReLU over a moderate input range; used as the
#: default throughout the CLI.
RELU_MIMIC = ActivationParams(a=0.0937, b=0.5, c=0.4688)


def validate_activation(a: float, b: float, c: float) -> ActivationParams:
    """Return ActivationParams iff a > 0, c > 0 and b**2 - 4ac >= 0.

    Raises InvalidActivation naming the violated condition otherwise.
    """
    if not a > 0:
        raise InvalidActivation(f"quadratic coefficient a must be > 0, got {a!r}")
    if not c > 0:
        raise InvalidActivation(f"constant coefficient c must be > 0, got {c!r}")
    disc = b * b - 4.0 * a * c
    if not disc >= 0:
        raise InvalidActivation(
            f"discriminant b**2 - 4ac must be >= 0, got {disc!r} "
            f"for (a, b, c) = ({a!r}, {b!r}, {c!r})"
        )
    return ActivationParams(float(a), float(b), float(c))


def activation_eval(params: ActivationParams, z):
    """Evaluate a*z**2 + b*z + c; broadcasts over array-valued z."""
    z = np.asarray(z, dtype=float)
    out = params.a * z * z + params.b * z + params.c
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ConvSpec:
    """Geometry of a length-f filter sliding with stride 1 over n inputs.

    Derived quantities:
      patch_count  K = n - f + 1   windows the filter visits
      band_size    q = (2n - f + 1) f / 2   entries in the first f diagonals
      n_weights    q + n   length of the trained weight vector
    """

    n: int
    f: int

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "f", int(self.f))
        if not 1 <= self.f <= self.n:
            raise ValueError(f"need 1 <= f <= n, got f={self.f}, n={self.n}")

    @property
    def patch_count(self) -> int:
        return self.n - self.f + 1

    @property
    def band_size(self) -> int:
        return (2 * self.n - self.f + 1) * self.f // 2

    @property
    def n_weights(self) -> int:
        return self.band_size + self.n


@dataclass(frozen=True)
class BandIndexMap:
    """Zero-based (row, col) indices of the first f diagonals of an n x n
    matrix, diagonal-major: all of diagonal 0, then diagonal 1, and so on
    up to diagonal f - 1. Single source of truth for the band ordering.
    """

    spec: ConvSpec
    rows: np.ndarray
    cols: np.ndarray

    def __len__(self) -> int:
        return self.rows.size

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.rows.tolist(), self.cols.tolist()))


@lru_cache(maxsize=128)
def band_index_map(spec: ConvSpec) -> BandIndexMap:
    """Build (and cache) the band index map for a filter geometry."""
    n, f = spec.n, spec.f
    rows = np.concatenate([np.arange(n - d) for d in range(f)])
    cols = np.concatenate([np.arange(d, n) for d in range(f)])
    rows.setflags(write=False)
    cols.setflags(write=False)
    return BandIndexMap(spec, rows, cols)


def vecf(x, spec: ConvSpec) -> np.ndarray:
    """Products x_r * x_c over the first f diagonals of x x^T.

    Diagonal-major layout: the n squares first, then the f - 1 upper
    off-diagonals in order. Length is spec.band_size.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.n,):
        raise DimensionMismatch(f"expected vector of length {spec.n}, got shape {x.shape}")
    m = band_index_map(spec)
    return x[m.rows] * x[m.cols]


class WeightCounts(NamedTuple):
    cqnn_weights: int
    banded_weights: int


def band_counts(spec: ConvSpec) -> WeightCounts:
    """Unique trainable weights of the per-patch parametrization versus the
    aggregated banded form. The banded count never exceeds the per-patch
    count for f > 1 (they coincide at f = 1 and f = n).
    """
    n, f = spec.n, spec.f
    return WeightCounts((f + 3) * (n - f + 1) * f // 2, spec.band_size + n)
