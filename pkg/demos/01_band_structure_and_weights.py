"""Band structure of a convolutional quadratic model, step by step.

A length-f filter sliding over n inputs only ever multiplies entries that
are at most f - 1 positions apart. Collecting everything the network can
express therefore yields a quadratic form whose matrix is symmetric and
banded. This script walks the bookkeeping: which products survive, how
they are ordered, and how many weights that saves.
"""

import numpy as np

from quadconv import ConvSpec, band_counts, band_index_map, vecf

n, f = 6, 3
spec = ConvSpec(n, f)
print(f"n = {n} inputs, filter length f = {f}")
print(f"patches visited by the filter: K = n - f + 1 = {spec.patch_count}")
print(f"band entries: q = (2n - f + 1) f / 2 = {spec.band_size}")
print(f"trained weights: q + n = {spec.n_weights}")
print()

# The band map enumerates the surviving products x_r * x_c, diagonal by
# diagonal: all squares first, then neighbours, then distance-2 pairs.
m = band_index_map(spec)
print("band ordering (row, col), zero-based:")
for d in range(f):
    pairs = [(r, c) for r, c in m.pairs() if c - r == d]
    print(f"  diagonal {d}: {pairs}")
print()

x = np.arange(1.0, n + 1.0)
print(f"x = {x}")
print(f"vecf(x) = {vecf(x, spec)}")
print("(squares 1..36, then neighbour products 2, 6, 12, 20, 30, ...)")
print()

# A mask of the n x n product matrix shows the unused corners.
mask = np.full((n, n), ".")
mask[m.rows, m.cols] = "#"
mask[m.cols, m.rows] = "#"
print(f"products the model can use (bandwidth {f}):")
for row in mask:
    print("  " + " ".join(row))
print()

print("weight counts: per-patch parametrization vs aggregated banded form")
print(f"{'n':>4} {'f':>3} {'per-patch':>10} {'banded':>8} {'saved':>6}")
for nn, ff in [(12, 5), (12, 3), (64, 7), (128, 9), (360, 7)]:
    counts = band_counts(ConvSpec(nn, ff))
    saved = counts.cqnn_weights - counts.banded_weights
    print(f"{nn:>4} {ff:>3} {counts.cqnn_weights:>10} {counts.banded_weights:>8} {saved:>6}")
print()
print("the two coincide at f = 1 and f = n; the banded form wins in between")
