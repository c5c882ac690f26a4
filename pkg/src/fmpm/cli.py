"""Command-line interface: index, match, bench."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import bench as bench_mod
from .alphabet import is_dna
from .fasta import FastaError, read_fasta
from .index import FmIndex, build_index
from .kernels import ENV_KERNEL, Kernel, resolve_kernel
from .search import collect_hits, exact_search, inexact_search, MatchResult
from .serialize import IndexFormatError, deserialize_index, serialize_index

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CORRUPT = 3

_KERNEL_CHOICES = [k.value for k in Kernel]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; remap to the usage code
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fmpm", description="FM-index pattern matching over DNA")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build an index from a FASTA file")
    p_index.add_argument("fasta", help="input FASTA path")
    p_index.add_argument("-o", "--output", required=True, help="output index path")
    p_index.add_argument(
        "--sanitize",
        action="store_true",
        help="replace non-ACGT characters with A instead of failing",
    )

    p_match = sub.add_parser("match", help="search patterns against an index")
    p_match.add_argument("index", help="index file path")
    group = p_match.add_mutually_exclusive_group(required=True)
    group.add_argument("-p", "--pattern", help="single pattern")
    group.add_argument("-f", "--patterns-file", help="file with one pattern per line")
    p_match.add_argument(
        "-z", "--max-diff", type=int, default=0, help="maximum differences (default 0)"
    )
    p_match.add_argument(
        "--kernel",
        default=None,
        choices=_KERNEL_CHOICES,
        help=f"counting kernel (default: ${ENV_KERNEL} or auto)",
    )
    p_match.add_argument(
        "--max-hits", type=int, default=None, help="report at most N hits per pattern"
    )
    p_match.add_argument(
        "--threads", type=int, default=1, help="worker threads for batch queries"
    )

    p_bench = sub.add_parser("bench", help="time every kernel on one workload")
    p_bench.add_argument("index", help="index file path")
    p_bench.add_argument("--iters", type=int, default=200, help="queries per kernel")
    p_bench.add_argument("--seed", type=int, default=0, help="workload seed")
    p_bench.add_argument(
        "--kernels",
        default=None,
        help="comma-separated kernel list (default: all concrete kernels)",
    )
    return parser


def _load_index(path: str) -> FmIndex:
    with open(path, "rb") as fh:
        return deserialize_index(fh)


def cmd_index(args: argparse.Namespace) -> int:
    with open(args.fasta, "r", encoding="utf-8") as fh:
        records = read_fasta(fh, sanitize=args.sanitize)
    substituted = sum(r.substituted for r in records)
    if substituted:
        print(
            f"sanitized {substituted} non-ACGT character(s) to A "
            f"across {sum(1 for r in records if r.substituted)} record(s)",
            file=sys.stderr,
        )
    reference = "".join(r.sequence for r in records)
    spans = []
    start = 0
    for r in records:
        spans.append((r.name, start, len(r.sequence)))
        start += len(r.sequence)
    index = build_index(reference, spans)
    with open(args.output, "wb") as fh:
        written = serialize_index(index, fh)
    print(
        f"indexed {len(records)} record(s), {index.n} characters, "
        f"{len(index.buckets)} buckets, {written} bytes",
        file=sys.stderr,
    )
    return EXIT_OK


def _match_one(
    index: FmIndex, pattern: str, max_diff: int, kernel: Kernel, max_hits: int | None
):
    if max_diff == 0:
        interval = exact_search(index, pattern, kernel)
        matches = [] if interval.is_empty else [MatchResult(interval, 0)]
    else:
        matches = inexact_search(index, pattern, max_diff, kernel)
    return collect_hits(index, matches, len(pattern), kernel, max_hits)


def cmd_match(args: argparse.Namespace) -> int:
    if args.max_diff < 0:
        raise UsageError("-z must be >= 0")
    if args.max_hits is not None and args.max_hits < 0:
        raise UsageError("--max-hits must be >= 0")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    kernel = resolve_kernel(args.kernel)
    index = _load_index(args.index)
    if args.pattern is not None:
        patterns = [args.pattern]
    else:
        with open(args.patterns_file, "r", encoding="utf-8") as fh:
            patterns = [line.strip() for line in fh if line.strip()]
    for pid, pattern in enumerate(patterns):
        if not pattern:
            raise UsageError(f"pattern {pid} is empty")

    def run(job: tuple[int, str]):
        pid, pattern = job
        if not is_dna(pattern):
            return pid, [], False, True
        hits, truncated = _match_one(index, pattern, args.max_diff, kernel, args.max_hits)
        return pid, hits, truncated, False

    jobs = list(enumerate(patterns))
    if args.threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    out = sys.stdout
    for pid, hits, truncated, degenerate in sorted(results):
        if degenerate:
            print(
                f"pattern {pid} contains non-ACGT characters; reporting zero hits",
                file=sys.stderr,
            )
        if truncated:
            print(f"pattern {pid}: hits truncated to {args.max_hits}", file=sys.stderr)
        for hit in hits:
            out.write(f"{pid}\t{hit.record}\t{hit.offset}\t{hit.diffs}\n")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.iters < 1:
        raise UsageError("--iters must be >= 1")
    index = _load_index(args.index)
    kernels = None
    if args.kernels:
        kernels = [k.strip() for k in args.kernels.split(",") if k.strip()]
    reports = bench_mod.run_bench(index, kernels, iterations=args.iters, seed=args.seed)
    print(bench_mod.format_tsv(reports))
    print(bench_mod.format_summary(reports), file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "index":
            return cmd_index(args)
        if args.command == "match":
            return cmd_match(args)
        return cmd_bench(args)
    except UsageError as exc:
        print(f"fmpm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # bad kernel names, malformed FASTA, empty patterns and the like
        print(f"fmpm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndexFormatError as exc:
        print(f"fmpm: corrupt index: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except OSError as exc:
        print(f"fmpm: {exc}", file=sys.stderr)
        return EXIT_IO


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
