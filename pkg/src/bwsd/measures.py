"""Run-length distribution of a pair's bit sequence and its distances.

For a pair of documents, the 0/1 sequence of document origins is read as
maximal runs 0^{k_1} 1^{k_2} 0^{k_3} ...; t_k counts the runs of length
exactly k (zero-length boundary runs are never counted) and s is the total
number of runs.  The distribution P(k) = t_k / s yields

  expectation distance:  E(k) - 1
  entropy distance:      -sum over t_k > 0 of (t_k/s) lg(t_k/s)

Both are 0 exactly when every run has length 1, i.e. when the two
documents' suffixes interleave perfectly (equal documents do).

``fold_sorted`` is the single folding recipe: ascending run length,
sequential accumulation, base-2 logs.  The compiled kernels mirror the
exact operation order so every engine and backend produces bit-identical
doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "MEASURE_EXPECTATION",
    "MEASURE_ENTROPY",
    "RunHistogram",
    "runs_from_alpha",
    "measure_expectation",
    "measure_entropy",
    "bwsd_distribution",
    "fold_sorted",
    "normalize_measure",
]

MEASURE_EXPECTATION = 0  # "dm"
MEASURE_ENTROPY = 1  # "de"

_MEASURE_NAMES = {
    "dm": MEASURE_EXPECTATION,
    "expectation": MEASURE_EXPECTATION,
    "de": MEASURE_ENTROPY,
    "entropy": MEASURE_ENTROPY,
}


def normalize_measure(measure) -> int:
    if measure in (MEASURE_EXPECTATION, MEASURE_ENTROPY):
        return int(measure)
    try:
        return _MEASURE_NAMES[str(measure).lower()]
    except KeyError:
        raise ValueError(f"unknown measure {measure!r}") from None


@dataclass
class RunHistogram:
    """Counts of maximal runs by length for one document pair."""

    t: dict[int, int] = field(default_factory=dict)
    k_max_bound: int | None = None

    @property
    def s(self) -> int:
        return sum(self.t.values())

    @property
    def mass(self) -> int:
        """sum of k * t_k; equals the underlying sequence length."""
        return sum(k * c for k, c in self.t.items())

    def sorted_items(self):
        ks = sorted(self.t)
        return (
            np.array(ks, dtype=np.int64),
            np.array([self.t[k] for k in ks], dtype=np.int64),
        )


def runs_from_alpha(alpha) -> RunHistogram:
    """Histogram of maximal run lengths of a 0/1 sequence."""
    a = np.asarray(alpha, dtype=np.uint8)
    n = a.shape[0]
    if n == 0:
        raise ValueError("empty bit sequence")
    breaks = np.flatnonzero(np.diff(a.astype(np.int8)))
    edges = np.concatenate(([-1], breaks, [n - 1]))
    lengths = np.diff(edges)
    counts = np.bincount(lengths)
    t = {int(k): int(c) for k, c in enumerate(counts) if k > 0 and c > 0}
    return RunHistogram(t=t, k_max_bound=n)


def fold_sorted(ks, ts, measure: int) -> float:
    """Distance from (run length, count) pairs sorted by ascending length.

    This is the canonical fold: integer mass/total first, then one float
    division for the expectation, or a sequential entropy accumulation in
    ascending-k order.  Keep in sync with the compiled twin.
    """
    s = 0
    for c in ts:
        s += int(c)
    if s <= 0:
        raise ValueError("histogram with no runs")
    if measure == MEASURE_EXPECTATION:
        mass = 0
        for k, c in zip(ks, ts):
            mass += int(k) * int(c)
        return float(mass) / float(s) - 1.0
    acc = 0.0
    for c in ts:
        p = float(int(c)) / float(s)
        acc += p * math.log2(p)
    return -acc if acc != 0.0 else 0.0


def measure_expectation(h: RunHistogram) -> float:
    """E(k) - 1 over the run-length distribution; always >= 0."""
    ks, ts = h.sorted_items()
    return fold_sorted(ks, ts, MEASURE_EXPECTATION)


def measure_entropy(h: RunHistogram) -> float:
    """Base-2 Shannon entropy of the run-length distribution."""
    ks, ts = h.sorted_items()
    return fold_sorted(ks, ts, MEASURE_ENTROPY)


def bwsd_distribution(h: RunHistogram) -> dict[int, float]:
    """P(k) = t_k / s for the lengths that occur."""
    s = h.s
    return {k: c / s for k, c in sorted(h.t.items())}
