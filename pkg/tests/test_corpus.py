import numpy as np
import pytest
from hypothesis import given, strategies as st

from bwsd.corpus import (
    CorpusFormatError,
    TextCollection,
    load_auto,
    load_fasta,
    load_lines,
    remap,
    unmap,
)


def write(tmp_path, name, data: bytes):
    p = tmp_path / name
    p.write_bytes(data)
    return p


class TestLoadLines:
    def test_two_documents(self, tmp_path):
        p = write(tmp_path, "pair.txt", b"banana\nanaba\n")
        coll = load_lines(p)
        assert coll.docs == [b"banana", b"anaba"]
        assert coll.names == ["1", "2"]

    def test_single_document(self, tmp_path):
        coll = load_lines(write(tmp_path, "one.txt", b"a"))
        assert coll.docs == [b"a"]

    def test_empty_file_rejected(self, tmp_path):
        with pytest.raises(CorpusFormatError, match="no documents"):
            load_lines(write(tmp_path, "empty.txt", b""))

    def test_blank_lines_skipped(self, tmp_path):
        coll = load_lines(write(tmp_path, "gaps.txt", b"aa\n\n\nbb\n"))
        assert coll.docs == [b"aa", b"bb"]
        assert coll.names == ["1", "2"]

    def test_nul_byte_reports_line(self, tmp_path):
        p = write(tmp_path, "bad.txt", b"ok\nb\x00d\n")
        with pytest.raises(CorpusFormatError, match="line 2"):
            load_lines(p)

    def test_no_trailing_newline(self, tmp_path):
        coll = load_lines(write(tmp_path, "nt.txt", b"xy\nz"))
        assert coll.docs == [b"xy", b"z"]


class TestLoadFasta:
    def test_two_records(self, tmp_path):
        p = write(tmp_path, "p.fa", b">s1\nbanana\n>s2\nanaba\n")
        coll = load_fasta(p)
        assert coll.docs == [b"banana", b"anaba"]
        assert coll.names == ["s1", "s2"]

    def test_wrapped_lines_joined(self, tmp_path):
        coll = load_fasta(write(tmp_path, "w.fa", b">s1\nban\nana\n"))
        assert coll.docs == [b"banana"]

    def test_leading_garbage_rejected(self, tmp_path):
        with pytest.raises(CorpusFormatError, match="before the first '>'"):
            load_fasta(write(tmp_path, "g.fa", b"banana\n"))

    def test_empty_record_kept(self, tmp_path):
        coll = load_fasta(write(tmp_path, "e.fa", b">a\n>b\nCC\n"))
        assert coll.docs == [b"", b"CC"]

    def test_name_up_to_whitespace(self, tmp_path):
        coll = load_fasta(write(tmp_path, "n.fa", b">seq7 extra info\nAA\n"))
        assert coll.names == ["seq7"]

    def test_empty_fasta_rejected(self, tmp_path):
        with pytest.raises(CorpusFormatError, match="no documents"):
            load_fasta(write(tmp_path, "e2.fa", b""))


def test_load_auto_detects_format(tmp_path):
    fa = write(tmp_path, "x.fa", b">s\nAC\n")
    txt = write(tmp_path, "x.txt", b"AC\nGG\n")
    assert load_auto(fa).names == ["s"]
    assert load_auto(txt).names == ["1", "2"]


class TestRemap:
    def test_banana_anaba(self):
        text = remap(TextCollection([b"banana", b"anaba"], ["1", "2"]))
        assert text.n == 13
        assert text.doc_len.tolist() == [7, 6]
        # terminators (1-based offsets 7 and 13) carry values 1 and 2
        assert text.symbols[6] == 1
        assert text.symbols[12] == 2

    def test_single_empty_document(self):
        text = remap(TextCollection([b""], ["1"]))
        assert text.n == 1
        assert text.symbols.tolist() == [1]

    def test_two_identical_one_byte_docs(self):
        text = remap(TextCollection([b"a", b"a"], ["1", "2"]))
        assert text.symbols.tolist() == [ord("a") + 2, 1, ord("a") + 2, 2]

    def test_terminators_below_content(self):
        coll = TextCollection([b"ab", b"", b"c"], ["1", "2", "3"])
        text = remap(coll)
        d = text.d
        term_positions = (text.doc_start + text.doc_len - 1).tolist()
        assert [int(text.symbols[p]) for p in term_positions] == [1, 2, 3]
        content = np.delete(text.symbols, term_positions)
        assert (content >= d + 1).all()

    @given(
        st.lists(
            st.binary(min_size=0, max_size=12).filter(lambda b: 0 not in b),
            min_size=1,
            max_size=6,
        )
    )
    def test_round_trip(self, docs):
        coll = TextCollection(docs, [str(i) for i in range(len(docs))])
        assert unmap(remap(coll)) == docs


def test_collection_rejects_nul():
    with pytest.raises(CorpusFormatError):
        TextCollection([b"a\x00b"], ["1"])


def test_collection_requires_documents():
    with pytest.raises(CorpusFormatError):
        TextCollection([], [])


def test_head_limit():
    coll = TextCollection([b"a", b"b", b"c"], ["1", "2", "3"])
    assert coll.head(2).docs == [b"a", b"b"]
    with pytest.raises(ValueError):
        coll.head(4)
    with pytest.raises(ValueError):
        coll.head(0)
