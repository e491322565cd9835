"""Pairwise BWT-based string similarity (BWSD) distances.

For every pair in a collection, the distribution of run lengths in the
pair-restricted document array of the shared Burrows-Wheeler transform
yields an expectation distance and an entropy distance.  Six engines
compute the full pairwise matrix and must agree bit for bit; the hot
kernels run compiled when the extension is available and fall back to
pure Python otherwise.
"""

from ._backend import backend_tag, is_compiled
from .corpus import (
    CorpusFormatError,
    IntText,
    TextCollection,
    load_auto,
    load_fasta,
    load_lines,
    remap,
    unmap,
)
from .engines import (
    ENGINE_NAMES,
    EngineConfig,
    EngineStats,
    compute_matrix,
    matrix_from_document_array,
    pair_histograms,
)
from .matrix import DistanceMatrix, write_phylip, write_tsv
from .measures import (
    RunHistogram,
    bwsd_distribution,
    measure_entropy,
    measure_expectation,
    runs_from_alpha,
)

__version__ = "0.1.0"

__all__ = [
    "ENGINE_NAMES",
    "CorpusFormatError",
    "DistanceMatrix",
    "EngineConfig",
    "EngineStats",
    "IntText",
    "RunHistogram",
    "TextCollection",
    "backend_tag",
    "bwsd_distribution",
    "compute_matrix",
    "is_compiled",
    "load_auto",
    "load_fasta",
    "load_lines",
    "matrix_from_document_array",
    "measure_entropy",
    "measure_expectation",
    "pair_histograms",
    "remap",
    "runs_from_alpha",
    "unmap",
    "write_phylip",
    "write_tsv",
]
