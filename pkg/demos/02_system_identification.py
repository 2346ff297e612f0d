"""System identification with a banded quadratic model, end to end.

A synthetic single-input single-output system with quadratic dynamics is
windowed into lagged input/output features, trained in closed form, and
compared against the dense (full-filter) variant. Training is one linear
solve, so there are no epochs and no learning rates; the fit is the global
optimum of the squared loss.
"""

import numpy as np

from quadconv import (
    ConvSpec,
    RELU_MIMIC,
    SplitSpec,
    fit,
    mse,
    narx_window,
    predict_batch,
    sensitivity,
    split,
    synth_narx,
)

d = 5
ts = synth_narx(2000, seed=1)
data = narx_window(ts, "u", "y", d)
train_set, test_set = split(data, SplitSpec(0.5))
print(f"series length {ts.length}, window d = {d}")
print(f"features per row n = {data.n_features} "
      f"(u lags {d}..1, then y lags {d}..1)")
print(f"train/test split: {train_set.n_samples}/{test_set.n_samples}")
print()

print(f"{'model':>10} {'f':>3} {'weights':>8} {'train mse':>12} {'test mse':>12} {'time [s]':>9}")
results = {}
for f in (3, data.n_features):
    spec = ConvSpec(data.n_features, f)
    result = fit(train_set, spec, RELU_MIMIC)
    tr = mse(predict_batch(result.model, train_set.inputs), train_set.labels)
    te = mse(predict_batch(result.model, test_set.inputs), test_set.labels)
    name = "banded" if f < data.n_features else "dense"
    results[f] = result
    print(f"{name:>10} {f:>3} {spec.n_weights:>8} {tr:>12.3e} {te:>12.3e} "
          f"{result.train_seconds:>9.4f}")
print()
print("the generator's dynamics live inside the bandwidth-3 model class,")
print("so the banded fit reaches numerical zero with a fraction of the weights")
print()

# The trained model is a closed-form quadratic, so the input gradient is
# available exactly at any operating point; here, averaged peaks over the
# test inputs, grouped by lag.
model = results[3].model
peaks = np.zeros(data.n_features)
for x0 in test_set.inputs[::10]:
    peaks = np.maximum(peaks, np.abs(sensitivity(model, x0)))
lags = [f"t-{k}" for k in range(d, 0, -1)]
print("peak |d y_hat / d input| over sampled test points:")
print("  lag:     " + " ".join(f"{v:>7}" for v in lags))
print("  u lags:  " + " ".join(f"{v:7.3f}" for v in peaks[:d]))
print("  y lags:  " + " ".join(f"{v:7.3f}" for v in peaks[d:]))
print()
print("recent lags dominate, matching how the generator weights its terms")
