"""Suffix array, BWT, document array and occurrence index construction.

The suffix array is produced by the selected backend (induced sorting in
the compiled kernels, prefix doubling in the pure fallback).  A naive
comparison sort is kept here as the test oracle for small texts; all three
routes must agree because the remapped text makes every suffix distinct.
Positions are 0-based throughout; prev uses the sentinel -1 and next uses
the sentinel N, so intervals stay half-open at both ends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import backend
from .corpus import IntText

__all__ = [
    "build_suffix_array",
    "suffix_array_naive",
    "build_bwt",
    "build_document_array",
    "OccIndex",
    "build_occ_index",
    "format_debug_rows",
]


def build_suffix_array(text: IntText) -> np.ndarray:
    """0-based suffix array of the remapped text."""
    return backend().suffix_array(text.symbols)


def suffix_array_naive(symbols) -> np.ndarray:
    """Comparison-sort oracle; quadratic-ish, for small inputs only."""
    sym = [int(v) for v in np.asarray(symbols, dtype=np.int64)]
    n = len(sym)
    order = sorted(range(n), key=lambda i: sym[i:])
    return np.array(order, dtype=np.int32)


def build_bwt(text: IntText, sa: np.ndarray) -> np.ndarray:
    """bwt[i] = symbols[sa[i] - 1], wrapping the first suffix to the final
    terminator."""
    sym = text.symbols
    return np.where(sa > 0, sym[sa - 1], sym[text.n - 1]).astype(np.int32)


def build_document_array(text: IntText, sa: np.ndarray) -> np.ndarray:
    """da[i] = 0-based index of the document containing position sa[i]."""
    ends = text.doc_start + text.doc_len
    return np.searchsorted(ends, sa, side="right").astype(np.int32)


@dataclass
class OccIndex:
    """Per-document occurrence structure over a document array.

    r[i]    rank of da[i] within its document (1..n_c)
    prev[i] largest p < i with da[p] == da[i], else -1
    nxt[i]  smallest p > i with da[p] == da[i], else N
    occ_pos positions grouped by document, occ_off the group offsets
    """

    da: np.ndarray
    d: int
    r: np.ndarray
    prev: np.ndarray
    nxt: np.ndarray
    occ_pos: np.ndarray
    occ_off: np.ndarray
    doc_count: np.ndarray

    @property
    def n(self) -> int:
        return int(self.da.shape[0])

    def occurrences(self, c: int) -> np.ndarray:
        return self.occ_pos[self.occ_off[c] : self.occ_off[c + 1]]


def build_occ_index(da, d: int) -> OccIndex:
    da = np.ascontiguousarray(da, dtype=np.int32)
    n = da.shape[0]
    order = np.argsort(da, kind="stable").astype(np.int32)
    counts = np.bincount(da, minlength=d).astype(np.int64)
    off = np.concatenate(([0], np.cumsum(counts)))
    within = np.arange(n, dtype=np.int64) - np.repeat(off[:-1], counts)
    r = np.empty(n, dtype=np.int32)
    r[order] = (within + 1).astype(np.int32)
    first = within == 0
    last = within == counts.astype(np.int64).repeat(counts) - 1
    prev = np.empty(n, dtype=np.int32)
    prev[order] = np.where(first, -1, np.concatenate(([0], order[:-1]))).astype(
        np.int32
    )
    nxt = np.empty(n, dtype=np.int32)
    nxt[order] = np.where(last, n, np.concatenate((order[1:], [0]))).astype(np.int32)
    return OccIndex(
        da=da, d=d, r=r, prev=prev, nxt=nxt, occ_pos=order, occ_off=off,
        doc_count=counts,
    )


def format_debug_rows(text: IntText, sa, da, bwt, show_da: bool, show_bwt: bool):
    """Rows "i<TAB>DA[i]<TAB>BWT-symbol" (1-based display, terminators as
    $1..$d) for the --dump-da / --dump-bwt diagnostics."""
    d = text.d
    for i in range(text.n):
        cols = [str(i + 1)]
        if show_da:
            cols.append(str(int(da[i]) + 1))
        if show_bwt:
            v = int(bwt[i])
            cols.append(f"${v}" if v <= d else chr(v - d))
        yield "\t".join(cols)
