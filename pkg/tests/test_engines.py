import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bwsd.corpus import TextCollection
from bwsd.engines import (
    ENGINE_NAMES,
    EngineConfig,
    EngineStats,
    compute_matrix,
    matrix_from_document_array,
    pair_histograms,
)

from conftest import naive_matrix, naive_pair_histogram, random_collection

BANANA_ANABA = TextCollection([b"banana", b"anaba"], ["1", "2"])
GLOBAL_ENGINES = ("bit", "bit-sd", "wt", "rmq", "rmq-light")


def block_document_array(lengths):
    """d consecutive blocks, block i of the given length."""
    parts = [np.full(n, i, dtype=np.int32) for i, n in enumerate(lengths)]
    return np.concatenate(parts)


class TestPaperExample:
    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_histogram(self, engine, kernel_backend):
        hist = pair_histograms(BANANA_ANABA, EngineConfig(engine=engine))
        assert hist == {(0, 1): {1: 9, 2: 2}}

    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_distances(self, engine, kernel_backend):
        dm, _ = compute_matrix(BANANA_ANABA, EngineConfig(engine=engine, measure="dm"))
        de, _ = compute_matrix(BANANA_ANABA, EngineConfig(engine=engine, measure="de"))
        assert dm.get(0, 1) == pytest.approx(2 / 11, abs=1e-12)
        assert de.get(0, 1) == pytest.approx(0.6840384356390417, abs=1e-12)


class TestSixWayEquivalence:
    def test_random_collections(self, kernel_backend):
        rng = random.Random(79)
        trials = 40 if kernel_backend == "py" else 120
        for _ in range(trials):
            coll = random_collection(rng)
            for measure in ("dm", "de"):
                ref, _ = compute_matrix(coll, EngineConfig(engine="sf", measure=measure))
                for engine in GLOBAL_ENGINES:
                    got, _ = compute_matrix(coll, EngineConfig(engine=engine, measure=measure))
                    assert np.allclose(ref.values, got.values, atol=1e-12, rtol=0), (
                        engine, measure, coll.docs,
                    )

    def test_sf_matches_independent_oracle(self, kernel_backend):
        rng = random.Random(83)
        for _ in range(25):
            coll = random_collection(rng, max_d=5, max_len=10)
            for measure in ("dm", "de"):
                got, _ = compute_matrix(coll, EngineConfig(engine="sf", measure=measure))
                assert np.allclose(
                    got.values, naive_matrix(coll, measure), atol=1e-12, rtol=0
                )

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(
            st.binary(min_size=0, max_size=12).filter(lambda b: 0 not in b),
            min_size=1,
            max_size=5,
        ),
        st.sampled_from(("dm", "de")),
    )
    def test_property_engines_agree(self, docs, measure):
        coll = TextCollection(docs, [str(i + 1) for i in range(len(docs))])
        ref, _ = compute_matrix(coll, EngineConfig(engine="sf", measure=measure))
        for engine in GLOBAL_ENGINES:
            got, _ = compute_matrix(coll, EngineConfig(engine=engine, measure=measure))
            assert got.values.tobytes() == ref.values.tobytes(), engine


class TestEdgeCases:
    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_identical_documents_score_zero(self, engine):
        coll = TextCollection([b"xyzzy", b"xyzzy"], ["1", "2"])
        for measure in ("dm", "de"):
            m, _ = compute_matrix(coll, EngineConfig(engine=engine, measure=measure))
            assert m.get(0, 1) == 0.0

    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_three_equal_one_byte_docs(self, engine):
        coll = TextCollection([b"a", b"a", b"a"], ["1", "2", "3"])
        m, _ = compute_matrix(coll, EngineConfig(engine=engine))
        assert (m.values == 0.0).all()

    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_single_document(self, engine):
        coll = TextCollection([b"solo"], ["1"])
        m, _ = compute_matrix(coll, EngineConfig(engine=engine))
        assert m.d == 1
        assert m.values.shape == (0,)
        assert m.get(0, 0) == 0.0

    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_empty_documents(self, engine):
        coll = TextCollection([b"", b"ab", b""], ["1", "2", "3"])
        ref, _ = compute_matrix(coll, EngineConfig(engine="sf"))
        m, _ = compute_matrix(coll, EngineConfig(engine=engine))
        assert np.allclose(m.values, ref.values, atol=1e-12, rtol=0)
        assert m.get(0, 2) == 0.0  # two empty docs are identical

    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_all_empty_documents(self, engine):
        coll = TextCollection([b"", b"", b""], ["1", "2", "3"])
        m, _ = compute_matrix(coll, EngineConfig(engine=engine, measure="de"))
        assert (m.values == 0.0).all()

    def test_single_empty_document(self):
        coll = TextCollection([b""], ["1"])
        for engine in ENGINE_NAMES:
            m, _ = compute_matrix(coll, EngineConfig(engine=engine))
            assert m.d == 1 and m.values.shape == (0,)

    def test_high_byte_values(self):
        # content bytes near 255 exercise the top of the shifted alphabet
        coll = TextCollection([b"\xff" * 12, b"\xff" * 5, b"a" * 9],
                              ["1", "2", "3"])
        outputs = set()
        for engine in ENGINE_NAMES:
            m, _ = compute_matrix(coll, EngineConfig(engine=engine, measure="dm"))
            outputs.add(m.values.tobytes())
        assert len(outputs) == 1

    def test_periodic_documents_deep_recursion(self):
        # long shared period forces the suffix sorter through recursion
        coll = TextCollection([b"ab" * 300 + b"x", b"ab" * 300 + b"y"],
                              ["1", "2"])
        outputs = set()
        for engine in ("sf", "bit", "rmq"):
            m, _ = compute_matrix(coll, EngineConfig(engine=engine, measure="de"))
            outputs.add(m.values.tobytes())
        assert len(outputs) == 1

    def test_leading_foreign_block(self):
        # document array 2,2,1,1: the pair runs are exactly two of length 2,
        # which only works out when the leading block is captured
        da = np.array([1, 1, 0, 0], dtype=np.int32)
        for engine in GLOBAL_ENGINES:
            m, _ = matrix_from_document_array(da, 2, EngineConfig(engine=engine, measure="dm"))
            assert m.get(0, 1) == 1.0  # histogram {2: 2} gives E(k)-1 = 1
            m, _ = matrix_from_document_array(da, 2, EngineConfig(engine=engine, measure="de"))
            assert m.get(0, 1) == 0.0


class TestMatrixSymmetry:
    def test_accessor_symmetry_and_diagonal(self):
        rng = random.Random(89)
        coll = random_collection(rng, max_d=6)
        m, _ = compute_matrix(coll, EngineConfig(engine="bit"))
        for i in range(m.d):
            assert m.get(i, i) == 0.0
            for j in range(m.d):
                assert m.get(i, j) == m.get(j, i)


class TestAlg1Optimizations:
    def test_toggles_do_not_change_output(self, kernel_backend):
        rng = random.Random(97)
        for _ in range(10):
            coll = random_collection(rng, max_d=6, max_len=12)
            for engine in ("bit", "bit-sd", "wt"):
                outs = []
                for cache in (False, True):
                    for hint in (False, True):
                        cfg = EngineConfig(engine=engine, measure="de",
                                           rank_cache=cache, next_hint=hint)
                        m, _ = compute_matrix(coll, cfg)
                        outs.append(m.values.tobytes())
                assert len(set(outs)) == 1

    def test_optimizations_reduce_rank_calls(self):
        rng = random.Random(101)
        docs = [bytes(rng.choice(b"ab") for _ in range(30)) for _ in range(6)]
        coll = TextCollection(docs, [str(i + 1) for i in range(6)])
        base_cfg = EngineConfig(engine="bit", rank_cache=False, next_hint=False)
        _, base = compute_matrix(coll, base_cfg)
        _, cached = compute_matrix(coll, EngineConfig(engine="bit", rank_cache=True,
                                                      next_hint=False))
        _, hinted = compute_matrix(coll, EngineConfig(engine="bit", rank_cache=True,
                                                      next_hint=True))
        assert base.rank_calls > cached.rank_calls > hinted.rank_calls
        assert base.select_calls == cached.select_calls == hinted.select_calls


class TestBlockDocumentArray:
    def test_three_blocks(self):
        da = block_document_array([4, 5, 6])
        m, stats = matrix_from_document_array(da, 3, EngineConfig(engine="rmq"))
        assert stats.listing_reports == 3 * 3 - 3
        ref, _ = matrix_from_document_array(da, 3, EngineConfig(engine="bit"))
        assert np.array_equal(m.values, ref.values)

    def test_pair_histogram_structure(self):
        # blocks of distinct lengths: each pair contributes {n_i:1, n_j:1}
        lengths = [3, 5, 8]
        da = block_document_array(lengths)
        for engine in GLOBAL_ENGINES:
            m, _ = matrix_from_document_array(da, 3, EngineConfig(engine=engine, measure="dm"))
            for i in range(3):
                for j in range(i + 1, 3):
                    want = (lengths[i] + lengths[j]) / 2 - 1
                    assert m.get(i, j) == pytest.approx(want, abs=1e-12)

    def test_sf_rejects_document_array_input(self):
        with pytest.raises(ValueError):
            matrix_from_document_array(np.zeros(3, np.int32), 1,
                                       EngineConfig(engine="sf"))


class TestParallel:
    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_thread_counts_agree_bitwise(self, engine):
        rng = random.Random(103)
        docs = [bytes(rng.choice(b"acgt") for _ in range(rng.randint(0, 40)))
                for _ in range(24)]
        coll = TextCollection(docs, [str(i + 1) for i in range(24)])
        base, _ = compute_matrix(coll, EngineConfig(engine=engine, threads=1))
        for p in (2, 4, 8, 32):
            m, _ = compute_matrix(coll, EngineConfig(engine=engine, threads=p))
            assert m.values.tobytes() == base.values.tobytes(), (engine, p)

    def test_oversubscription_small_collection(self):
        coll = TextCollection([b"ab", b"ba"], ["1", "2"])
        m, _ = compute_matrix(coll, EngineConfig(engine="bit", threads=32))
        ref, _ = compute_matrix(coll, EngineConfig(engine="bit", threads=1))
        assert m.values.tobytes() == ref.values.tobytes()


class TestHistogramInvariants:
    @pytest.mark.parametrize("engine", ENGINE_NAMES)
    def test_mass_and_match_against_oracle(self, engine):
        rng = random.Random(107)
        for _ in range(10):
            coll = random_collection(rng, max_d=5, max_len=12)
            hist = pair_histograms(coll, EngineConfig(engine=engine))
            for i in range(coll.d):
                for j in range(i + 1, coll.d):
                    want = naive_pair_histogram(coll.docs[i], coll.docs[j])
                    assert hist[(i, j)] == dict(want), (engine, i, j, coll.docs)

    def test_collect_under_threads(self):
        coll = TextCollection([b"banana", b"anaba", b"ananas"], ["1", "2", "3"])
        ref = pair_histograms(coll, EngineConfig(engine="sf"))
        for engine in ENGINE_NAMES:
            got = pair_histograms(coll, EngineConfig(engine=engine, threads=3))
            assert got == ref, engine


class TestConfigValidation:
    def test_unknown_engine(self):
        with pytest.raises(ValueError):
            EngineConfig(engine="fm-index")

    def test_bad_threads(self):
        with pytest.raises(ValueError):
            EngineConfig(threads=0)

    def test_bad_measure(self):
        with pytest.raises(ValueError):
            EngineConfig(measure="cosine")

    def test_stats_lines(self):
        stats = EngineStats(rank_calls=3, build_time=0.5)
        lines = list(stats.as_lines())
        assert "rank_calls=3" in lines
        assert any(line.startswith("build_time=") for line in lines)
