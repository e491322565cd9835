"""Compiled kernels against the pure-Python twins: identical outputs."""

import random
import struct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import bwsd._backend as _backend_mod
from bwsd import _kernels_py
from bwsd.corpus import TextCollection
from bwsd.engines import ENGINE_NAMES, EngineConfig, compute_matrix
from bwsd.measures import fold_sorted
from bwsd.suffix import suffix_array_naive

from conftest import random_collection

_kernels = pytest.importorskip("bwsd._kernels")


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=64))
def test_suffix_array_routes_agree(sym):
    sym = np.array(sym, dtype=np.int32)
    a = _kernels.suffix_array(sym)
    b = _kernels_py.suffix_array(sym)
    assert np.array_equal(a, b)
    assert np.array_equal(a, suffix_array_naive(sym))


def test_suffix_array_medium_random():
    rng = random.Random(131)
    for _ in range(10):
        n = rng.randint(500, 4000)
        sym = np.array([rng.randint(1, 5) for _ in range(n)], dtype=np.int32)
        assert np.array_equal(
            _kernels.suffix_array(sym), _kernels_py.suffix_array(sym)
        )


def test_suffix_array_rejects_reserved_symbol():
    bad = np.array([2, 0, 1], dtype=np.int32)
    with pytest.raises(ValueError):
        _kernels.suffix_array(bad)
    with pytest.raises(ValueError):
        _kernels_py.suffix_array(bad)


def test_fold_measure_bitwise_identical():
    rng = random.Random(137)
    for _ in range(500):
        ks = sorted(rng.sample(range(1, 200), rng.randint(1, 8)))
        ts = [rng.randint(1, 1000) for _ in ks]
        ks = np.array(ks, dtype=np.int64)
        ts = np.array(ts, dtype=np.int64)
        for measure in (0, 1):
            c_val = _kernels.fold_measure(ks, ts, measure)
            py_val = _kernels_py.fold_measure(ks, ts, measure)
            ref = fold_sorted(ks, ts, measure)
            assert struct.pack("d", c_val) == struct.pack("d", py_val)
            assert struct.pack("d", c_val) == struct.pack("d", ref)


def _run_with(kern, coll, cfg):
    old = _backend_mod._impl
    _backend_mod._impl = kern
    try:
        m, stats = compute_matrix(coll, cfg)
    finally:
        _backend_mod._impl = old
    return m, stats


@pytest.mark.parametrize("engine", ENGINE_NAMES)
def test_engines_bitwise_identical_across_backends(engine):
    rng = random.Random(139)
    for _ in range(12):
        coll = random_collection(rng, max_d=6, max_len=14)
        for measure in ("dm", "de"):
            cfg = EngineConfig(engine=engine, measure=measure)
            mc, _ = _run_with(_kernels, coll, cfg)
            mp, _ = _run_with(_kernels_py, coll, cfg)
            assert mc.values.tobytes() == mp.values.tobytes(), (
                engine, measure, coll.docs,
            )


def test_stats_counters_match_across_backends():
    rng = random.Random(149)
    docs = [bytes(rng.choice(b"ab") for _ in range(20)) for _ in range(5)]
    coll = TextCollection(docs, [str(i + 1) for i in range(5)])
    for engine in ("bit", "bit-sd", "wt"):
        for cache in (False, True):
            for hint in (False, True):
                cfg = EngineConfig(engine=engine, rank_cache=cache, next_hint=hint)
                _, sc = _run_with(_kernels, coll, cfg)
                _, sp = _run_with(_kernels_py, coll, cfg)
                assert sc.rank_calls == sp.rank_calls
                assert sc.select_calls == sp.select_calls
    for engine in ("rmq", "rmq-light"):
        cfg = EngineConfig(engine=engine)
        _, sc = _run_with(_kernels, coll, cfg)
        _, sp = _run_with(_kernels_py, coll, cfg)
        assert sc.listing_reports == sp.listing_reports
