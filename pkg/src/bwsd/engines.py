"""The six interchangeable distance-matrix engines.

  sf        - baseline: one suffix array per pair of documents
  bit       - global sweep over one plain rank/select bitvector per document
  bit-sd    - same sweep over Elias-Fano compressed bitvectors
  wt        - same sweep over a single wavelet tree
  rmq       - document listing over prev/next range-extremum structures,
              one global pass, histograms stored per pair
  rmq-light - the listing approach one row at a time with O(d) scratch

All engines accumulate the same integer run histograms per pair and fold
them with one shared recipe, so their matrices are bit-identical.  Rows of
the matrix are distributed over worker threads through a dynamic queue;
shared structures are read-only and every row writes a disjoint slice, so
results do not depend on the thread count.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

import numpy as np

from . import _bits
from ._backend import backend
from .corpus import TextCollection, remap
from .matrix import DistanceMatrix, tri_offsets
from .measures import normalize_measure
from .succinct import IndexedDocArray
from .suffix import build_document_array, build_occ_index, build_suffix_array

__all__ = [
    "ENGINE_NAMES",
    "EngineConfig",
    "EngineStats",
    "compute_matrix",
    "pair_histograms",
    "matrix_from_document_array",
]

ENGINE_NAMES = ("sf", "bit", "bit-sd", "wt", "rmq", "rmq-light")

_ALG1_FLAVORS = {"bit": "plain", "bit-sd": "sparse", "wt": "wavelet"}


@dataclass
class EngineConfig:
    engine: str = "bit-sd"
    measure: str = "dm"
    threads: int = 1
    # Algorithm 1 practical improvements; output-neutral, toggleable.
    rank_cache: bool = True
    next_hint: bool = True

    def __post_init__(self):
        if self.engine not in ENGINE_NAMES:
            raise ValueError(
                f"unknown engine {self.engine!r}; expected one of {ENGINE_NAMES}"
            )
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        normalize_measure(self.measure)


@dataclass
class EngineStats:
    rank_calls: int = 0
    select_calls: int = 0
    listing_reports: int = 0
    build_time: float = 0.0
    compute_time: float = 0.0

    def as_lines(self):
        yield f"rank_calls={self.rank_calls}"
        yield f"select_calls={self.select_calls}"
        yield f"listing_reports={self.listing_reports}"
        yield f"build_time={self.build_time:.6f}"
        yield f"compute_time={self.compute_time:.6f}"


def compute_matrix(collection: TextCollection, cfg: EngineConfig):
    """Distance matrix for every pair in the collection.

    Returns (DistanceMatrix, EngineStats)."""
    matrix, stats, _ = _run(collection, cfg, collect=False)
    return matrix, stats


def pair_histograms(collection: TextCollection, cfg: EngineConfig):
    """Run histograms per pair: {(i, j): {run length: count}} with i < j.

    Debug path; also verifies that every pair's run lengths add up to
    n_i + n_j."""
    _, _, hist = _run(collection, cfg, collect=True)
    text_len = [len(doc) + 1 for doc in collection.docs]
    for (i, j), t in hist.items():
        got = sum(k * c for k, c in t.items())
        want = text_len[i] + text_len[j]
        if got != want:
            raise AssertionError(
                f"pair ({i},{j}): run mass {got} != n_i+n_j = {want}"
            )
    return hist


def matrix_from_document_array(da, d: int, cfg: EngineConfig):
    """Run a global-structure engine directly on a document array (no text).

    Supports every engine except sf, which needs document contents.  Used
    for synthetic document-array experiments."""
    if cfg.engine == "sf":
        raise ValueError("the sf engine needs document contents, not a DA")
    matrix, stats, _ = _run(None, cfg, collect=False, da=np.asarray(da), d=d)
    return matrix, stats


def pair_histograms_from_document_array(da, d: int, cfg: EngineConfig):
    """Run histograms per pair for a raw document-array input."""
    if cfg.engine == "sf":
        raise ValueError("the sf engine needs document contents, not a DA")
    _, _, hist = _run(None, cfg, collect=True, da=np.asarray(da), d=d)
    return hist


# ---------------------------------------------------------------------------

def _run(collection, cfg, collect, da=None, d=None):
    measure = normalize_measure(cfg.measure)
    kern = backend()
    if collection is not None:
        d = collection.d
        names = list(collection.names)
    else:
        d = int(d)
        names = [str(i + 1) for i in range(d)]
    out = np.zeros(d * (d - 1) // 2, dtype=np.float64)
    tri_off = tri_offsets(d)
    stats = EngineStats()

    t0 = time.perf_counter()
    if cfg.engine == "sf":
        setup = _setup_sf(collection, measure, out, tri_off, kern, collect)
    elif cfg.engine in _ALG1_FLAVORS:
        setup = _setup_alg1(collection, cfg, measure, out, tri_off, kern,
                            collect, da, d)
    elif cfg.engine == "rmq":
        setup = _setup_alg2(collection, measure, out, tri_off, kern, da, d)
    else:  # rmq-light
        setup = _setup_alg2_light(collection, measure, out, tri_off, kern,
                                  collect, da, d)
    runner, make_scratch, ids, finish = setup
    stats.build_time = time.perf_counter() - t0

    t1 = time.perf_counter()
    results, stat_arrays = _run_ids(ids, runner, make_scratch, cfg.threads)
    hist = finish(results, collect)
    stats.compute_time = time.perf_counter() - t1

    for arr in stat_arrays:
        stats.rank_calls += int(arr[0])
        stats.select_calls += int(arr[1])
        stats.listing_reports += int(arr[2])
    return DistanceMatrix(names, out), stats, hist


def _run_ids(ids, runner, make_scratch, threads):
    """Dynamic queue of row/document ids over worker threads.

    Workers write to disjoint output regions and keep private scratch, so
    the result is identical for every thread count."""
    ids = list(ids)
    if threads <= 1 or len(ids) <= 1:
        stats = np.zeros(3, dtype=np.int64)
        res = runner(np.array(ids, dtype=np.int32), make_scratch(), stats)
        return ([res] if res is not None else []), [stats]
    results = []
    stat_arrays = []
    cursor = iter(ids)
    lock = threading.Lock()
    gather = threading.Lock()

    def work():
        stats = np.zeros(3, dtype=np.int64)
        scratch = make_scratch()
        local = []
        while True:
            with lock:
                nid = next(cursor, None)
            if nid is None:
                break
            res = runner(np.array([nid], dtype=np.int32), scratch, stats)
            if res is not None:
                local.append(res)
        with gather:
            results.extend(local)
            stat_arrays.append(stats)

    workers = [threading.Thread(target=work) for _ in range(threads)]
    for w in workers:
        w.start()
    for w in workers:
        w.join()
    return results, stat_arrays


def _merge_triples(results, collect):
    """Each (i, j) histogram is produced whole by exactly one row worker."""
    if not collect:
        return None
    hist: dict[tuple[int, int], dict[int, int]] = {}
    for triples in results:
        for i, j, k, c in triples:
            hist.setdefault((int(i), int(j)), {})[int(k)] = int(c)
    return hist


# -- engine setups ----------------------------------------------------------

def _setup_sf(collection, measure, out, tri_off, kern, collect):
    docs = collection.docs
    d = len(docs)
    docoff = np.concatenate(
        ([0], np.cumsum([len(doc) for doc in docs]))
    ).astype(np.int64)
    docsym = np.empty(int(docoff[-1]), dtype=np.int32)
    for i, doc in enumerate(docs):
        raw = np.frombuffer(doc, dtype=np.uint8)
        docsym[docoff[i] : docoff[i + 1]] = raw.astype(np.int32) + 2
    kmax = max(len(doc) + 1 for doc in docs)
    maxpair = 2 * kmax + 1  # pair text plus sentinel

    def make_scratch():
        return (
            np.empty(maxpair, dtype=np.int32),
            np.empty(maxpair, dtype=np.int32),
            np.zeros(kmax + 2, dtype=np.int64),
        )

    def runner(rows, scratch, stats):
        return kern.sf_rows(docsym, docoff, rows, measure, collect,
                            out, tri_off, scratch, stats)

    return runner, make_scratch, range(d - 1), _merge_triples


def _setup_alg1(collection, cfg, measure, out, tri_off, kern, collect, da, d):
    if collection is not None:
        text = remap(collection)
        sa = build_suffix_array(text)
        da = build_document_array(text, sa)
        d = text.d
        doc_len = text.doc_len
        n = text.n
    else:
        da = np.ascontiguousarray(da, dtype=np.int32)
        doc_len = np.bincount(da, minlength=d).astype(np.int64)
        n = int(da.shape[0])
    idx = IndexedDocArray(da, d, flavor=_ALG1_FLAVORS[cfg.engine])
    flavor, view = idx.kernel_view()
    occ_pos, occ_off = idx.occ_pos, idx.occ_off
    kmax = int(doc_len.max())

    def make_scratch():
        return (
            np.zeros((d, kmax + 2), dtype=np.int32),
            np.zeros(d, dtype=np.int32),
            np.zeros(d, dtype=np.int64),
            np.zeros(d, dtype=np.int64),
            np.zeros(d, dtype=np.int64),
        )

    def runner(rows, scratch, stats):
        return kern.alg1_rows(
            flavor, view, occ_pos, occ_off, doc_len, n, d, rows, measure,
            cfg.rank_cache, cfg.next_hint, collect, out, tri_off, scratch,
            stats,
        )

    return runner, make_scratch, range(d - 1), _merge_triples


def _build_listing_structures(collection, da, d):
    if collection is not None:
        text = remap(collection)
        sa = build_suffix_array(text)
        da = build_document_array(text, sa)
        d = text.d
        doc_len = text.doc_len
    else:
        da = np.ascontiguousarray(da, dtype=np.int32)
        doc_len = np.bincount(da, minlength=d).astype(np.int64)
    occ = build_occ_index(da, d)
    prev_tbl = _bits.sparse_table(occ.prev, maximum=False)
    next_tbl = _bits.sparse_table(occ.nxt, maximum=True)
    return occ, prev_tbl, next_tbl, doc_len, d


def _setup_alg2(collection, measure, out, tri_off, kern, da, d):
    occ, prev_tbl, next_tbl, doc_len, d = _build_listing_structures(
        collection, da, d
    )
    n = occ.n
    base = n + 2

    def runner(docs, scratch, stats):
        return kern.alg2_docs(
            occ.da, occ.r, occ.prev, occ.nxt, occ.occ_pos, occ.occ_off,
            occ.prev, prev_tbl, occ.nxt, next_tbl, n, d, docs, stats,
        )

    def finish(event_arrays, collect):
        events = (
            np.concatenate(event_arrays)
            if event_arrays
            else np.empty(0, dtype=np.int64)
        )
        packed, counts = np.unique(events, return_counts=True)
        if packed.shape[0] == 0:
            if out.shape[0] != 0:
                raise AssertionError("no pair events for a non-trivial matrix")
            return {} if collect else None
        pair_ids = packed // base
        ks = (packed % base).astype(np.int64)
        ts = counts.astype(np.int64)
        distinct = np.unique(pair_ids)
        if distinct.shape[0] != out.shape[0]:
            raise AssertionError(
                f"pair store covers {distinct.shape[0]} pairs, "
                f"expected {out.shape[0]}"
            )
        starts = np.concatenate(
            ([0], np.flatnonzero(np.diff(pair_ids)) + 1, [pair_ids.shape[0]])
        )
        hist = {} if collect else None
        fold = backend().fold_measure
        for seg in range(starts.shape[0] - 1):
            lo, hi = int(starts[seg]), int(starts[seg + 1])
            pid = int(pair_ids[lo])
            i, j = pid // d, pid % d
            out[int(tri_off[i]) + (j - i - 1)] = fold(ks[lo:hi], ts[lo:hi], measure)
            if collect:
                hist[(i, j)] = {
                    int(k): int(c) for k, c in zip(ks[lo:hi], ts[lo:hi])
                }
        return hist

    return runner, (lambda: None), range(d), finish


def _setup_alg2_light(collection, measure, out, tri_off, kern, collect, da, d):
    occ, prev_tbl, next_tbl, doc_len, d = _build_listing_structures(
        collection, da, d
    )
    n = occ.n
    kmax = int(doc_len.max())

    def make_scratch():
        return (
            np.zeros((d, kmax + 2), dtype=np.int32),
            np.zeros(d, dtype=np.int32),
            np.zeros(d, dtype=np.int64),
        )

    def runner(rows, scratch, stats):
        return kern.alg2_light_rows(
            occ.da, occ.r, occ.prev, occ.nxt, occ.occ_pos, occ.occ_off,
            occ.prev, prev_tbl, occ.nxt, next_tbl, doc_len, n, d, rows,
            measure, collect, out, tri_off, scratch, stats,
        )

    return runner, make_scratch, range(d - 1), _merge_triples
