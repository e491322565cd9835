"""Command-line entry point.

Exit codes: 0 ok, 1 usage error, 2 I/O error, 3 input format error.
"""

from __future__ import annotations

import argparse
import sys

from .corpus import CorpusFormatError, load_auto, load_fasta, load_lines, remap
from .engines import ENGINE_NAMES, EngineConfig, compute_matrix
from .matrix import write_phylip, write_tsv
from .suffix import (
    build_bwt,
    build_document_array,
    build_suffix_array,
    format_debug_rows,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_FORMAT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="bwsd",
        description="Pairwise BWT-based similarity distances for a collection "
        "of strings.",
    )
    p.add_argument("--input", "-i", required=True, help="input file")
    p.add_argument(
        "--format",
        choices=("auto", "fasta", "lines"),
        default="auto",
        help="input format (auto: FASTA when the file starts with '>')",
    )
    p.add_argument(
        "--algorithm",
        "-a",
        choices=ENGINE_NAMES,
        default="bit-sd",
        help="engine (default: bit-sd)",
    )
    p.add_argument(
        "--measure",
        "-m",
        choices=("dm", "de", "both"),
        default="dm",
        help="dm: expectation distance, de: entropy distance",
    )
    p.add_argument("--threads", "-t", type=int, default=1, help="worker threads")
    p.add_argument(
        "--docs", type=int, default=None, help="use only the first DOCS documents"
    )
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    p.add_argument(
        "--output-format",
        choices=("tsv", "phylip"),
        default="tsv",
        help="matrix serialization",
    )
    p.add_argument("--stats", action="store_true", help="print diagnostics to stderr")
    p.add_argument(
        "--dump-bwt",
        action="store_true",
        help="dump the global BWT rows to stderr (terminators as $1..$d)",
    )
    p.add_argument(
        "--dump-da",
        action="store_true",
        help="dump the global document array rows to stderr",
    )
    return p


def _load(args):
    loader = {"auto": load_auto, "fasta": load_fasta, "lines": load_lines}[args.format]
    return loader(args.input)


def _write(matrix, path, fmt):
    writer = write_tsv if fmt == "tsv" else write_phylip
    if path is None:
        writer(matrix, sys.stdout)
        return
    with open(path, "w") as fh:
        writer(matrix, fh)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("bwsd: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        collection = _load(args)
    except OSError as exc:
        print(f"bwsd: cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    except CorpusFormatError as exc:
        print(f"bwsd: input format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT

    if args.docs is not None:
        if not 1 <= args.docs <= collection.d:
            print(
                f"bwsd: error: --docs {args.docs} out of range 1..{collection.d}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        collection = collection.head(args.docs)

    if args.dump_bwt or args.dump_da:
        text = remap(collection)
        sa = build_suffix_array(text)
        da = build_document_array(text, sa)
        bwt = build_bwt(text, sa)
        for line in format_debug_rows(text, sa, da, bwt, args.dump_da, args.dump_bwt):
            print(line, file=sys.stderr)

    measures = ("dm", "de") if args.measure == "both" else (args.measure,)
    if args.measure == "both" and args.output is None:
        print(
            "bwsd: error: --measure both needs --output (writes .dm and .de files)",
            file=sys.stderr,
        )
        return EXIT_USAGE

    for measure in measures:
        cfg = EngineConfig(
            engine=args.algorithm, measure=measure, threads=args.threads
        )
        matrix, stats = compute_matrix(collection, cfg)
        path = args.output
        if args.measure == "both":
            path = f"{path}.{measure}"
        try:
            _write(matrix, path, args.output_format)
        except OSError as exc:
            print(f"bwsd: cannot write output: {exc}", file=sys.stderr)
            return EXIT_IO
        if args.stats:
            print(f"engine={args.algorithm}", file=sys.stderr)
            print(f"measure={measure}", file=sys.stderr)
            print(f"threads={args.threads}", file=sys.stderr)
            for line in stats.as_lines():
                print(line, file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
