"""Pure-Python kernel backend.

Implements the same interface as the compiled extension (bwsd._kernels):
suffix sorting plus the per-row sweeps of the four engine families, all
over the exact array layouts produced by the bwsd.succinct builders.  The
accounting here is the reference; the compiled twin mirrors it operation
for operation so both backends return identical histograms and, through
the shared fold recipe, bit-identical distances.
"""

from __future__ import annotations

import numpy as np

from . import _bits
from .measures import fold_sorted

TAG = "py"

# stats slots
RANK_CALLS = 0
SELECT_CALLS = 1
LISTING_REPORTS = 2


def suffix_array(sym) -> np.ndarray:
    """Prefix-doubling suffix sort (Manber-Myers) over integer symbols."""
    sym = np.ascontiguousarray(sym, dtype=np.int32)
    n = int(sym.shape[0])
    if n == 0:
        return np.empty(0, dtype=np.int32)
    if int(sym.min()) <= 0:  # value 0 is reserved for the virtual sentinel
        raise ValueError("symbol values must be >= 1")
    if n == 1:
        return np.zeros(1, dtype=np.int32)
    order = np.argsort(sym, kind="stable")
    svals = sym[order].astype(np.int64)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.concatenate(([0], np.cumsum(svals[1:] != svals[:-1])))
    k = 1
    while int(rank[order[-1]]) != n - 1:
        key2 = np.full(n, -1, dtype=np.int64)
        key2[: n - k] = rank[k:]
        order = np.lexsort((key2, rank))
        r1 = rank[order]
        r2 = key2[order]
        bump = np.concatenate(([0], ((r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1]))))
        newrank = np.empty(n, dtype=np.int64)
        newrank[order] = np.cumsum(bump)
        rank = newrank
        k <<= 1
    return order.astype(np.int32)


def fold_measure(ks, ts, measure: int) -> float:
    return fold_sorted(ks, ts, measure)


# ---------------------------------------------------------------------------
# flavor-dispatched rank/select over the kernel views

def _make_rank_select(flavor: int, view):
    if flavor == 0:
        words, blk, sb = view

        def rank(c, i):
            return _bits.rank1(words[c], blk[c], sb[c], i)

        def select(c, k, nc):
            return _bits.select1(words[c], blk[c], sb[c], nc, k)

    else:
        meta, hw, hblk, hsb, lw = view

        def rank(c, i):
            m = meta[c]
            return _bits.ef_rank1(m, hw[m[2] :], hblk[m[3] :], hsb[m[4] :],
                                  lw[m[5] :], i)

        def select(c, k, nc):
            m = meta[c]
            return _bits.ef_select1(m, hw[m[2] :], hblk[m[3] :], hsb[m[4] :],
                                    lw[m[5] :], k)

    return rank, select


def _wt_rank_select(view, n):
    words, blk, sb, levels = view
    if levels == 0:  # single-document collection

        def rank(c, i):
            return i

        def select(c, k, nc):
            return k - 1

        return rank, select

    def rank(c, i):
        return _bits.wt_rank(words, blk, sb, levels, n, c, i)

    def select(c, k, nc):
        return _bits.wt_select(words, blk, sb, levels, n, c, k)

    return rank, select


def _tri_index(tri_off, i, j):
    return int(tri_off[i]) + (j - i - 1)


def _record(t, maxk, j, k):
    t[j, k] += 1
    if k > maxk[j]:
        maxk[j] = k


def _fold_and_clear_row(t, maxk, i, d, measure, out, tri_off, collect, triples):
    for j in range(i + 1, d):
        mk = int(maxk[j])
        row = t[j]
        ks = [k for k in range(1, mk + 1) if row[k]]
        ts = [int(row[k]) for k in ks]
        if collect:
            for k, c in zip(ks, ts):
                triples.append((i, j, k, c))
        out[_tri_index(tri_off, i, j)] = fold_sorted(
            np.array(ks, dtype=np.int64), np.array(ts, dtype=np.int64), measure
        )
        row[1 : mk + 1] = 0
        maxk[j] = 0


# ---------------------------------------------------------------------------
# Algorithm 1: interval sweep over rank/select structures

def alg1_rows(flavor, view, occ_pos, occ_off, doc_len, n, d, rows,
              measure, use_cache, use_hint, collect,
              out, tri_off, scratch, stats):
    """Row sweep: for row i, walk the occurrences of i; per foreign j count
    the js in each half-open interval via rank differences, accumulating
    1-runs and pending 0-runs; trailing blocks are flushed after the last
    occurrence.  Fills out[] and returns (i, j, k, count) triples when
    collect is set."""
    t, maxk, ell, cached, hidx = scratch
    if flavor == 2:
        rank, select = _wt_rank_select(view, n)
    else:
        rank, select = _make_rank_select(flavor, view)
    rank_calls = 0
    select_calls = 0
    triples = [] if collect else None
    for i in map(int, rows):
        ni = int(doc_len[i])
        for j in range(i + 1, d):
            ell[j] = 0
            cached[j] = 0
            hidx[j] = occ_off[j]
        qs_cnt = 0
        for p in range(1, ni + 1):
            q_pos = select(i, p, ni)
            select_calls += 1
            qe_cnt = q_pos + 1
            for j in range(i + 1, d):
                if use_hint:
                    hj = int(hidx[j])
                    if hj >= occ_off[j + 1] or occ_pos[hj] > q_pos:
                        ell[j] += 1
                        continue
                if use_cache:
                    rs = int(cached[j])
                else:
                    rs = rank(j, qs_cnt)
                    rank_calls += 1
                re = rank(j, qe_cnt)
                rank_calls += 1
                k = re - rs
                if use_cache:
                    cached[j] = re
                if use_hint:
                    hidx[j] += k
                if k > 0:
                    if ell[j] > 0:
                        _record(t, maxk, j, int(ell[j]))
                    _record(t, maxk, j, k)
                    ell[j] = 1
                else:
                    ell[j] += 1
            qs_cnt = qe_cnt
        for j in range(i + 1, d):
            nj = int(doc_len[j])
            if use_hint:
                k = nj - (int(hidx[j]) - int(occ_off[j]))
            elif use_cache:
                k = nj - int(cached[j])
            else:
                k = rank(j, n) - rank(j, qs_cnt)
                rank_calls += 2
            if k > 0:
                _record(t, maxk, j, k)
            _record(t, maxk, j, int(ell[j]))
        _fold_and_clear_row(t, maxk, i, d, measure, out, tri_off, collect, triples)
    stats[RANK_CALLS] += rank_calls
    stats[SELECT_CALLS] += select_calls
    return triples


# ---------------------------------------------------------------------------
# document listing via range extremum queries on prev/next

def _listing(da, prev, nxt, prev_vals, prev_tbl, next_vals, next_tbl, l, r):
    """Distinct docs in da[l..r] with leftmost/rightmost positions."""
    left = {}
    stack = [(l, r)]
    while stack:
        a, b = stack.pop()
        if a > b:
            continue
        p = _bits.table_query(prev_vals, prev_tbl, a, b, False)
        if prev[p] < l:
            left[int(da[p])] = p
            stack.append((a, p - 1))
            stack.append((p + 1, b))
    right = {}
    stack = [(l, r)]
    while stack:
        a, b = stack.pop()
        if a > b:
            continue
        p = _bits.table_query(next_vals, next_tbl, a, b, True)
        if nxt[p] > r:
            right[int(da[p])] = p
            stack.append((a, p - 1))
            stack.append((p + 1, b))
    return [(doc, a, right[doc]) for doc, a in left.items()]


# ---------------------------------------------------------------------------
# Algorithm 2: one global sweep, histograms stored per unordered pair

def alg2_docs(da, r_arr, prev, nxt, occ_pos, occ_off,
              prev_vals, prev_tbl, next_vals, next_tbl,
              n, d, docs, stats):
    """Sweep the intervals of the given documents (leading interval plus one
    per occurrence) and emit one packed event pair_id * (n + 2) + k per
    listed foreign run."""
    base = n + 2
    events = []
    reports = 0
    for i in map(int, docs):
        first = int(occ_pos[occ_off[i]])
        intervals = [(0, first - 1)]
        for idx in range(int(occ_off[i]), int(occ_off[i + 1])):
            p = int(occ_pos[idx])
            intervals.append((p + 1, int(nxt[p]) - 1))
        for l, r in intervals:
            if l > r:
                continue
            listed = _listing(da, prev, nxt, prev_vals, prev_tbl,
                              next_vals, next_tbl, l, r)
            reports += len(listed)
            for j, a, b in listed:
                if j == i:
                    continue
                k = int(r_arr[b]) - int(r_arr[a]) + 1
                lo, hi = (i, j) if i < j else (j, i)
                events.append((lo * d + hi) * base + k)
    stats[LISTING_REPORTS] += reports
    return np.array(events, dtype=np.int64)


def alg2_light_rows(da, r_arr, prev, nxt, occ_pos, occ_off,
                    prev_vals, prev_tbl, next_vals, next_tbl,
                    doc_len, n, d, rows, measure, collect,
                    out, tri_off, scratch, stats):
    """One row at a time: foreign 1-runs come from document listing over the
    row's intervals, the interleaved 0-runs of the row document are
    reconstructed from differences of occurrence ordinals, and boundary
    0-runs are flushed after the sweep."""
    t, maxk, last_seen = scratch
    reports = 0
    triples = [] if collect else None
    for i in map(int, rows):
        ni = int(doc_len[i])
        pos = occ_pos[occ_off[i] : occ_off[i + 1]]
        prev_bound = -1
        for t_idx in range(ni + 1):
            l = prev_bound + 1
            r = (int(pos[t_idx]) - 1) if t_idx < ni else n - 1
            if l <= r:
                listed = _listing(da, prev, nxt, prev_vals, prev_tbl,
                                  next_vals, next_tbl, l, r)
                reports += len(listed)
                for j, a, b in listed:
                    if j <= i:
                        continue
                    k = int(r_arr[b]) - int(r_arr[a]) + 1
                    _record(t, maxk, j, k)
                    zero_run = t_idx - int(last_seen[j])
                    if zero_run > 0:
                        _record(t, maxk, j, zero_run)
                    last_seen[j] = t_idx
            if t_idx < ni:
                prev_bound = int(pos[t_idx])
        for j in range(i + 1, d):
            zero_run = ni - int(last_seen[j])
            if zero_run > 0:
                _record(t, maxk, j, zero_run)
            last_seen[j] = 0
        _fold_and_clear_row(t, maxk, i, d, measure, out, tri_off, collect, triples)
    stats[LISTING_REPORTS] += reports
    return triples


# ---------------------------------------------------------------------------
# straightforward baseline: one suffix array per pair

def sf_rows(docsym, docoff, rows, measure, collect, out, tri_off, scratch, stats):
    """Per pair: concatenate the two documents with terminators 1 and 2,
    sort suffixes, read the origin bit sequence off the suffix array and
    fold its run histogram."""
    d = docoff.shape[0] - 1
    triples = [] if collect else None
    for i in map(int, rows):
        xi = docsym[docoff[i] : docoff[i + 1]]
        for j in range(i + 1, d):
            yj = docsym[docoff[j] : docoff[j + 1]]
            nx = xi.shape[0] + 1
            text = np.concatenate(
                (xi, np.array([1], np.int32), yj, np.array([2], np.int32))
            )
            sa = suffix_array(text)
            alpha = sa >= nx
            breaks = np.flatnonzero(np.diff(alpha.astype(np.int8)))
            edges = np.concatenate(([-1], breaks, [alpha.shape[0] - 1]))
            lengths = np.diff(edges)
            counts = np.bincount(lengths)
            ks = np.flatnonzero(counts).astype(np.int64)
            ts = counts[ks].astype(np.int64)
            if collect:
                for k, c in zip(ks, ts):
                    triples.append((i, j, int(k), int(c)))
            out[_tri_index(tri_off, i, j)] = fold_sorted(ks, ts, measure)
    return triples
