"""Shared fixtures and independent oracles.

The oracles here recompute expected values from first principles (tuple
comparison suffix sorting, run scans over bit lists, fractions for the
expectation measure) and never touch the library's own fast paths.
"""

import math
import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

import bwsd._backend as _backend_mod
from bwsd import _kernels_py
from bwsd.corpus import TextCollection


def random_collection(rng: random.Random, max_d=8, max_len=16, max_sigma=4,
                      allow_empty=True, dup_rate=0.4) -> TextCollection:
    d = rng.randint(1, max_d)
    docs = []
    for _ in range(d):
        sigma = rng.randint(1, max_sigma)
        letters = b"acgt"[:sigma]
        lo = 0 if allow_empty else 1
        docs.append(bytes(rng.choice(letters) for _ in range(rng.randint(lo, max_len))))
    if d >= 2 and rng.random() < dup_rate:
        docs[rng.randrange(d)] = docs[rng.randrange(d)]
    return TextCollection(docs, [str(i + 1) for i in range(d)])


def naive_suffix_array(symbols):
    sym = [int(v) for v in symbols]
    return sorted(range(len(sym)), key=lambda i: sym[i:])


def naive_pair_alpha(x: bytes, y: bytes):
    """0/1 origin sequence for the pair collection {x, y}, brute force."""
    sym = [b + 2 for b in x] + [1] + [b + 2 for b in y] + [2]
    nx = len(x) + 1
    return [1 if p >= nx else 0 for p in naive_suffix_array(sym)]


def runs_of(bits):
    runs = []
    i = 0
    while i < len(bits):
        j = i
        while j < len(bits) and bits[j] == bits[i]:
            j += 1
        runs.append(j - i)
        i = j
    return runs


def naive_pair_histogram(x: bytes, y: bytes) -> Counter:
    return Counter(runs_of(naive_pair_alpha(x, y)))


def naive_dm(hist) -> float:
    s = sum(hist.values())
    mass = sum(k * c for k, c in hist.items())
    return float(Fraction(mass, s) - 1)


def naive_de(hist) -> float:
    s = sum(hist.values())
    val = -sum((c / s) * math.log2(c / s) for c in hist.values())
    return abs(val)  # normalizes -0.0 for single-run histograms


def naive_matrix(collection: TextCollection, measure: str) -> np.ndarray:
    fn = naive_dm if measure == "dm" else naive_de
    d = collection.d
    vals = []
    for i in range(d):
        for j in range(i + 1, d):
            vals.append(fn(naive_pair_histogram(collection.docs[i],
                                                collection.docs[j])))
    return np.array(vals, dtype=np.float64)


@pytest.fixture(params=["c", "py"])
def kernel_backend(request):
    """Run the test under each kernel backend."""
    if request.param == "c":
        kern = pytest.importorskip("bwsd._kernels")
    else:
        kern = _kernels_py
    old = _backend_mod._impl
    _backend_mod._impl = kern
    yield request.param
    _backend_mod._impl = old
