#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Generates a synthetic collection, runs each engine under both backends and
prints build/compute times plus the speedup.  The pure backend is slow by
design (it is the readable reference); trim --docs/--length before pointing
this at large inputs.

    python benchmarks/compare_backends.py --docs 60 --length 200
"""

import argparse
import sys
import time

import numpy as np

import bwsd._backend as backend_mod
from bwsd import _kernels_py
from bwsd.corpus import TextCollection
from bwsd.engines import ENGINE_NAMES, EngineConfig, compute_matrix


def synthetic_collection(docs: int, length: int, sigma: int, seed: int):
    rng = np.random.default_rng(seed)
    letters = np.frombuffer(b"acgtmrwsykvhdbn"[:sigma], dtype=np.uint8)
    contents = [rng.choice(letters, size=length).tobytes() for _ in range(docs)]
    return TextCollection(contents, [str(i + 1) for i in range(docs)])


def run_backend(kern, coll, engine, measure, threads):
    old = backend_mod._impl
    backend_mod._impl = kern
    try:
        t0 = time.perf_counter()
        matrix, stats = compute_matrix(
            coll, EngineConfig(engine=engine, measure=measure, threads=threads)
        )
        total = time.perf_counter() - t0
    finally:
        backend_mod._impl = old
    return matrix, stats, total


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--docs", type=int, default=60)
    ap.add_argument("--length", type=int, default=200)
    ap.add_argument("--sigma", type=int, default=4)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--measure", choices=("dm", "de"), default="dm")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--engines", nargs="*", default=list(ENGINE_NAMES))
    ap.add_argument(
        "--skip-pure", action="store_true",
        help="time only the compiled backend",
    )
    args = ap.parse_args(argv)

    try:
        from bwsd import _kernels
    except ImportError:
        print("compiled kernels unavailable; nothing to compare", file=sys.stderr)
        return 1

    coll = synthetic_collection(args.docs, args.length, args.sigma, args.seed)
    n = sum(len(doc) + 1 for doc in coll.docs)
    print(f"collection: d={args.docs} N={n} sigma={args.sigma} "
          f"measure={args.measure} threads={args.threads}")
    header = f"{'engine':<10} {'compiled':>10} {'pure':>10} {'speedup':>8}  match"
    print(header)
    print("-" * len(header))
    for engine in args.engines:
        mc, _, tc = run_backend(_kernels, coll, engine, args.measure, args.threads)
        if args.skip_pure:
            print(f"{engine:<10} {tc:>9.3f}s {'-':>10} {'-':>8}")
            continue
        mp, _, tp = run_backend(
            _kernels_py, coll, engine, args.measure, args.threads
        )
        same = np.array_equal(mc.values, mp.values)
        print(f"{engine:<10} {tc:>9.3f}s {tp:>9.3f}s {tp / tc:>7.1f}x  {same}")
        if not same:
            print(f"  MISMATCH for {engine}", file=sys.stderr)
            return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
