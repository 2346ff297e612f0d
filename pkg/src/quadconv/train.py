"""End-to-end training: dataset  ->  regressor  ->  solve  ->  model."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .core import ActivationParams, ConvSpec
from .model import QuadraticModel, reconstruct
from .regressor import Dataset, build_regressor
from .solver import SolveReport, solve_ridge


@dataclass(frozen=True)
class FitResult:
    model: QuadraticModel
    report: SolveReport
    build_seconds: float
    solve_seconds: float

    @property
    def train_seconds(self) -> float:
        """Regressor assembly plus solve; file I/O is never included."""
        return self.build_seconds + self.solve_seconds


def fit(data: Dataset, spec: ConvSpec, params: ActivationParams, beta: float = 0.0) -> FitResult:
    """Train the banded quadratic model on a dataset in closed form."""
    t0 = time.perf_counter()
    H = build_regressor(data, spec, params)
    t1 = time.perf_counter()
    report = solve_ridge(H, data.labels, beta)
    t2 = time.perf_counter()
    return FitResult(reconstruct(report.theta, params), report, t1 - t0, t2 - t1)
