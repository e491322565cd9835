"""Rank/select views over the document array and range-extremum queries.

Three interchangeable flavors index the document array:

  * ``plain``   - one plain bitvector per document with rank directories
                  (fast queries, d*N bits)
  * ``sparse``  - one Elias-Fano compressed bitvector per document
                  (entropy-sized, O(lg(N/n_i)) rank)
  * ``wavelet`` - a single levelwise wavelet tree over the array
                  (N lg d bits, O(lg d) queries)

All flavors agree on rank_doc/select_doc semantics: rank counts positions
with value c among the first i entries (rank at 0 is 0), select returns the
0-based position of the k-th occurrence (1-based k).

The range-extremum index is an O(N lg N)-bit sparse table with O(1)
queries; ties resolve to the smallest position.  Together with the
prev/next arrays it answers document listing in output-sensitive time.
"""

from __future__ import annotations

import numpy as np

from . import _bits

__all__ = [
    "RsBitvector",
    "SparseBitvector",
    "WaveletTree",
    "RangeExtremumIndex",
    "IndexedDocArray",
    "document_listing",
    "FLAVORS",
]

FLAVORS = ("plain", "sparse", "wavelet")


class RsBitvector:
    """Plain bitvector with two-level rank directory."""

    def __init__(self, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        self.n = int(bits.shape[0])
        self.words = _bits.pack_bits(bits)
        self.blk, self.sb = _bits.build_rank_dirs(self.words)
        self.n1 = _bits.rank1(self.words, self.blk, self.sb, self.n) if self.n else 0

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self.n:
            raise ValueError(f"rank position {i} out of range 0..{self.n}")
        return _bits.rank1(self.words, self.blk, self.sb, i)

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, k: int) -> int:
        return _bits.select1(self.words, self.blk, self.sb, self.n1, k)

    def select0(self, k: int) -> int:
        if not 1 <= k <= self.n - self.n1:
            raise ValueError(f"select0 out of range: k={k}")
        return _bits.select0(self.words, self.blk, self.sb, self.n, k)


class SparseBitvector:
    """Elias-Fano encoded set of positions with the rank/select contract."""

    def __init__(self, positions, n: int):
        positions = np.asarray(positions, dtype=np.int64)
        self.n = int(n)
        self.m = int(positions.shape[0])
        (self.meta, self.hw, self.hblk, self.hsb, self.lw) = _bits.ef_build(
            positions, n
        )

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self.n:
            raise ValueError(f"rank position {i} out of range 0..{self.n}")
        return _bits.ef_rank1(self.meta, self.hw, self.hblk, self.hsb, self.lw, i)

    def select1(self, k: int) -> int:
        return _bits.ef_select1(self.meta, self.hw, self.hblk, self.hsb, self.lw, k)


class WaveletTree:
    """Balanced levelwise wavelet tree over values 0..sigma-1."""

    def __init__(self, values, sigma: int):
        values = np.asarray(values, dtype=np.int64)
        self.n = int(values.shape[0])
        self.sigma = int(sigma)
        if sigma < 2:
            raise ValueError("wavelet tree needs an alphabet of size >= 2")
        self.words, self.blk, self.sb, self.levels = _bits.wt_build(values, sigma)

    def rank(self, c: int, i: int) -> int:
        if not 0 <= c < self.sigma:
            raise ValueError(f"symbol {c} out of range 0..{self.sigma - 1}")
        if not 0 <= i <= self.n:
            raise ValueError(f"rank position {i} out of range 0..{self.n}")
        return _bits.wt_rank(self.words, self.blk, self.sb, self.levels, self.n, c, i)

    def select(self, c: int, k: int) -> int:
        if not 0 <= c < self.sigma:
            raise ValueError(f"symbol {c} out of range 0..{self.sigma - 1}")
        return _bits.wt_select(
            self.words, self.blk, self.sb, self.levels, self.n, c, k
        )


class RangeExtremumIndex:
    """Sparse table answering range-min or range-max POSITION queries in
    O(1); equal values resolve to the smallest position."""

    def __init__(self, values, mode: str = "min"):
        if mode not in ("min", "max"):
            raise ValueError(f"unknown mode {mode!r}")
        self.values = np.ascontiguousarray(values, dtype=np.int32)
        self.mode = mode
        self.n = int(self.values.shape[0])
        self.table = _bits.sparse_table(self.values, maximum=(mode == "max"))

    def query(self, l: int, r: int) -> int:
        """Extremum position over the closed 0-based interval [l, r]."""
        if not 0 <= l <= r < self.n:
            raise ValueError(f"bad interval [{l}, {r}] for length {self.n}")
        return _bits.table_query(self.values, self.table, l, r, self.mode == "max")


class IndexedDocArray:
    """Rank/select access to a document array in one of three flavors."""

    def __init__(self, da, d: int, flavor: str = "plain"):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
        da = np.ascontiguousarray(da, dtype=np.int32)
        self.d = int(d)
        self.n = int(da.shape[0])
        self.flavor = flavor
        order = np.argsort(da, kind="stable").astype(np.int32)
        counts = np.bincount(da, minlength=d).astype(np.int64)
        self.occ_pos = order
        self.occ_off = np.concatenate(([0], np.cumsum(counts)))
        self.doc_count = counts
        if flavor == "plain":
            self._build_plain(da)
        elif flavor == "sparse":
            self._build_sparse()
        else:
            self._build_wavelet(da)

    # -- builders -----------------------------------------------------------

    def _build_plain(self, da):
        d, n = self.d, self.n
        nw = max(1, (n + 63) >> 6)
        words = np.zeros(d * nw, dtype=np.uint64)
        pos = np.arange(n, dtype=np.int64)
        flat = da.astype(np.int64) * nw + (pos >> 6)
        np.bitwise_or.at(words, flat, np.uint64(1) << (pos & 63).astype(np.uint64))
        self.words = words.reshape(d, nw)
        self.blk = np.zeros((d, nw + 1), dtype=np.uint16)
        self.sb = np.zeros((d, (nw >> 3) + 1), dtype=np.uint32)
        for c in range(d):  # row-wise keeps the temporary cumsums small
            self.blk[c], self.sb[c] = _bits.build_rank_dirs(self.words[c])

    def _build_sparse(self):
        metas, hws, hblks, hsbs, lws = [], [], [], [], []
        offs = np.zeros(4, dtype=np.int64)
        for c in range(self.d):
            pos = self.occ_pos[self.occ_off[c] : self.occ_off[c + 1]]
            meta, hw, hblk, hsb, lw = _bits.ef_build(pos, self.n)
            meta[2:6] = offs
            offs += (hw.shape[0], hblk.shape[0], hsb.shape[0], lw.shape[0])
            metas.append(meta)
            hws.append(hw)
            hblks.append(hblk)
            hsbs.append(hsb)
            lws.append(lw)
        self.ef_meta = np.stack(metas)
        self.ef_hw = np.concatenate(hws)
        self.ef_hblk = np.concatenate(hblks)
        self.ef_hsb = np.concatenate(hsbs)
        self.ef_lw = np.concatenate(lws)

    def _build_wavelet(self, da):
        if self.d >= 2:
            self.wt = WaveletTree(da, self.d)
        else:
            self.wt = None

    # -- queries ------------------------------------------------------------

    def _check(self, c: int):
        if not 0 <= c < self.d:
            raise ValueError(f"document {c} out of range 0..{self.d - 1}")

    def rank_doc(self, c: int, i: int) -> int:
        """Occurrences of document c among the first i entries (0 <= i <= N)."""
        self._check(c)
        if not 0 <= i <= self.n:
            raise ValueError(f"rank position {i} out of range 0..{self.n}")
        if self.flavor == "plain":
            return _bits.rank1(self.words[c], self.blk[c], self.sb[c], i)
        if self.flavor == "sparse":
            m = self.ef_meta[c]
            return _bits.ef_rank1(
                m,
                self.ef_hw[m[2] :],
                self.ef_hblk[m[3] :],
                self.ef_hsb[m[4] :],
                self.ef_lw[m[5] :],
                i,
            )
        if self.wt is None:
            return i
        return self.wt.rank(c, i)

    def select_doc(self, c: int, k: int) -> int:
        """0-based position of the k-th occurrence of document c (k >= 1)."""
        self._check(c)
        nc = int(self.doc_count[c])
        if not 1 <= k <= nc:
            raise ValueError(f"select exhausted: k={k}, occurrences={nc}")
        if self.flavor == "plain":
            return _bits.select1(self.words[c], self.blk[c], self.sb[c], nc, k)
        if self.flavor == "sparse":
            m = self.ef_meta[c]
            return _bits.ef_select1(
                m,
                self.ef_hw[m[2] :],
                self.ef_hblk[m[3] :],
                self.ef_hsb[m[4] :],
                self.ef_lw[m[5] :],
                k,
            )
        if self.wt is None:
            return k - 1
        return self.wt.select(c, k)

    def kernel_view(self):
        """Flavor id plus the raw arrays the sweep kernels read."""
        if self.flavor == "plain":
            return 0, (self.words, self.blk, self.sb)
        if self.flavor == "sparse":
            return 1, (self.ef_meta, self.ef_hw, self.ef_hblk, self.ef_hsb, self.ef_lw)
        if self.wt is None:
            empty64 = np.zeros((1, 1), dtype=np.uint64)
            return 2, (
                empty64,
                np.zeros((1, 2), dtype=np.uint16),
                np.zeros((1, 1), dtype=np.uint32),
                0,
            )
        return 2, (self.wt.words, self.wt.blk, self.wt.sb, self.wt.levels)


def document_listing(occ, rmq_prev: RangeExtremumIndex, rmq_next: RangeExtremumIndex,
                     l: int, r: int):
    """Distinct documents in da[l..r] (closed, 0-based) with their leftmost
    and rightmost occurrence, in O(distinct) time.

    Leftmost occurrences p satisfy prev[p] < l and are found by recursing on
    range-min over prev; rightmost occurrences satisfy next[p] > r via
    range-max over next.  Returns [(doc, leftmost, rightmost), ...] ordered
    by leftmost occurrence.
    """
    prev, nxt, da = occ.prev, occ.nxt, occ.da
    found: dict[int, int] = {}
    stack = [(l, r)]
    while stack:
        a, b = stack.pop()
        if a > b:
            continue
        p = rmq_prev.query(a, b)
        if prev[p] < l:
            found[int(da[p])] = p
            stack.append((a, p - 1))
            stack.append((p + 1, b))
    right: dict[int, int] = {}
    stack = [(l, r)]
    while stack:
        a, b = stack.pop()
        if a > b:
            continue
        p = rmq_next.query(a, b)
        if nxt[p] > r:
            right[int(da[p])] = p
            stack.append((a, p - 1))
            stack.append((p + 1, b))
    return sorted(
        ((doc, a, right[doc]) for doc, a in found.items()), key=lambda t: t[1]
    )
