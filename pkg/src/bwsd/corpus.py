"""Collection ingestion and integer remapping.

A collection of d byte documents is concatenated into one integer text.
Document i (1-based) is terminated by the integer i, so terminators are
mutually distinct and ordered by document index; every content byte b is
shifted to b + d, which keeps all content symbols strictly above every
terminator.  Any integer-alphabet suffix sorter then produces the same
suffix order as the usual $_1 < $_2 < ... < $_d convention.

Byte 0 is reserved and rejected on input so the shift never collides.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CorpusFormatError",
    "TextCollection",
    "IntText",
    "load_lines",
    "load_fasta",
    "load_auto",
    "parse_lines",
    "parse_fasta",
    "remap",
    "unmap",
]


class CorpusFormatError(ValueError):
    """Raised for malformed or empty input files."""


@dataclass
class TextCollection:
    """Ordered documents (terminators not included) plus display names."""

    docs: list[bytes]
    names: list[str]

    def __post_init__(self):
        if len(self.docs) < 1:
            raise CorpusFormatError("no documents")
        if len(self.docs) != len(self.names):
            raise ValueError("docs and names lengths differ")
        for idx, doc in enumerate(self.docs):
            if b"\x00" in doc:
                raise CorpusFormatError(
                    f"document {idx + 1} contains the reserved byte 0"
                )

    @property
    def d(self) -> int:
        return len(self.docs)

    def head(self, limit: int) -> "TextCollection":
        """First `limit` documents."""
        if not 1 <= limit <= self.d:
            raise ValueError(f"docs limit {limit} out of range 1..{self.d}")
        return TextCollection(self.docs[:limit], self.names[:limit])


@dataclass
class IntText:
    """Integer-remapped concatenation of a collection.

    symbols[k] is the integer at 0-based position k; doc_len[i] counts the
    terminator (raw length + 1); doc_start[i] is the 0-based offset of
    document i.  Terminator of document i (0-based) carries value i + 1.
    """

    symbols: np.ndarray  # int32, length N
    d: int
    doc_len: np.ndarray = field(repr=False)  # int64
    doc_start: np.ndarray = field(repr=False)  # int64

    @property
    def n(self) -> int:
        return int(self.symbols.shape[0])


def remap(collection: TextCollection) -> IntText:
    """Concatenate and remap a collection to the integer alphabet."""
    d = collection.d
    doc_len = np.array([len(doc) + 1 for doc in collection.docs], dtype=np.int64)
    doc_start = np.concatenate(([0], np.cumsum(doc_len)[:-1]))
    n = int(doc_len.sum())
    symbols = np.empty(n, dtype=np.int32)
    for i, doc in enumerate(collection.docs):
        s = int(doc_start[i])
        raw = np.frombuffer(doc, dtype=np.uint8)
        symbols[s : s + len(doc)] = raw.astype(np.int32) + d
        symbols[s + len(doc)] = i + 1
    return IntText(symbols=symbols, d=d, doc_len=doc_len, doc_start=doc_start)


def unmap(text: IntText) -> list[bytes]:
    """Inverse of remap: strip terminators and unshift symbol values."""
    docs = []
    for i in range(text.d):
        s = int(text.doc_start[i])
        e = s + int(text.doc_len[i]) - 1
        docs.append((text.symbols[s:e] - text.d).astype(np.uint8).tobytes())
    return docs


def load_lines(path: str | os.PathLike) -> TextCollection:
    """One document per nonempty line; names are 1-based ordinals."""
    with open(path, "rb") as fh:
        return parse_lines(fh.read())


def parse_lines(data: bytes) -> TextCollection:
    docs = []
    for lineno, line in enumerate(data.split(b"\n"), start=1):
        line = line.rstrip(b"\r")
        if not line:
            continue
        if b"\x00" in line:
            raise CorpusFormatError(f"line {lineno} contains the reserved byte 0")
        docs.append(line)
    if not docs:
        raise CorpusFormatError("no documents")
    names = [str(i + 1) for i in range(len(docs))]
    return TextCollection(docs, names)


def load_fasta(path: str | os.PathLike) -> TextCollection:
    """FASTA records; wrapped sequence lines are joined, names come from the
    header text up to the first whitespace.  Empty records are kept as empty
    documents (they become a lone terminator)."""
    with open(path, "rb") as fh:
        return parse_fasta(fh.read())


def parse_fasta(data: bytes) -> TextCollection:
    docs: list[bytes] = []
    names: list[str] = []
    current: list[bytes] | None = None
    for lineno, line in enumerate(data.split(b"\n"), start=1):
        line = line.rstrip(b"\r")
        if line.startswith(b">"):
            if current is not None:
                docs.append(b"".join(current))
            names.append(line[1:].split(None, 1)[0].decode("latin-1") if line[1:] else "")
            current = []
        elif line:
            if current is None:
                raise CorpusFormatError(
                    f"line {lineno}: sequence data before the first '>' header"
                )
            if b"\x00" in line:
                raise CorpusFormatError(
                    f"line {lineno} contains the reserved byte 0"
                )
            current.append(line)
    if current is None:
        raise CorpusFormatError("no documents")
    docs.append(b"".join(current))
    return TextCollection(docs, names)


def load_auto(path: str | os.PathLike) -> TextCollection:
    """FASTA if the file starts with '>', line-delimited otherwise."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(b">"):
        return parse_fasta(data)
    return parse_lines(data)
