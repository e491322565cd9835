"""Strictly upper-triangular distance matrix storage and serialization.

Values are stored packed (d*(d-1)/2 doubles); the diagonal is zero and the
lower triangle mirrors the upper one.  Writers emit full square matrices
with fixed 6-decimal formatting so outputs diff cleanly across engines,
thread counts and platforms.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

__all__ = ["DistanceMatrix", "tri_offsets", "write_tsv", "write_phylip"]


def tri_offsets(d: int) -> np.ndarray:
    """Packed-row start offsets: row i holds pairs (i, i+1..d-1)."""
    sizes = np.arange(d - 1, -1, -1, dtype=np.int64)
    return np.concatenate(([0], np.cumsum(sizes)))[:d]


@dataclass
class DistanceMatrix:
    names: list[str]
    values: np.ndarray  # float64, length d*(d-1)//2
    _off: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        d = len(self.names)
        expected = d * (d - 1) // 2
        if self.values.shape[0] != expected:
            raise ValueError(
                f"packed triangle for d={d} needs {expected} values, "
                f"got {self.values.shape[0]}"
            )
        self._off = tri_offsets(d) if d else np.zeros(0, dtype=np.int64)

    @property
    def d(self) -> int:
        return len(self.names)

    def get(self, i: int, j: int) -> float:
        if not (0 <= i < self.d and 0 <= j < self.d):
            raise IndexError(f"({i}, {j}) outside a {self.d}x{self.d} matrix")
        if i == j:
            return 0.0
        if i > j:
            i, j = j, i
        return float(self.values[int(self._off[i]) + (j - i - 1)])

    def to_square(self) -> np.ndarray:
        d = self.d
        sq = np.zeros((d, d), dtype=np.float64)
        iu = np.triu_indices(d, k=1)
        sq[iu] = self.values
        sq[(iu[1], iu[0])] = self.values
        return sq


def write_tsv(m: DistanceMatrix, sink: io.TextIOBase) -> None:
    """Header row of names, then d rows of d tab-separated 6-decimal values."""
    sink.write("\t".join(m.names))
    sink.write("\n")
    sq = m.to_square()
    for i in range(m.d):
        sink.write("\t".join(f"{v:.6f}" for v in sq[i]))
        sink.write("\n")


def write_phylip(m: DistanceMatrix, sink: io.TextIOBase) -> None:
    """PHYLIP square format: count line, then one line per document with the
    name padded or truncated to 10 characters."""
    sink.write(f"{m.d}\n")
    sq = m.to_square()
    for i in range(m.d):
        name = m.names[i][:10].ljust(10)
        sink.write(name + " ".join(f"{v:.6f}" for v in sq[i]))
        sink.write("\n")
