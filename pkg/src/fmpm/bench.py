"""Kernel benchmarking: identical workloads, per-kernel timings, answer checksums."""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass

from .index import FmIndex
from .kernels import CONCRETE_KERNELS, Kernel, count_fn, resolve_kernel
from .search import collect_hits, exact_search, inexact_search, locate_all, reconstruct_reference


@dataclass(frozen=True)
class BenchReport:
    kernel: str
    bucket_counts_per_sec: float
    exact_qps: float
    inexact_qps: float
    wall_seconds: float
    checksum: str


@dataclass(frozen=True)
class _Workload:
    exact_patterns: list[str]
    inexact_patterns: list[str]
    bucket_cases: list[tuple[bytes, int, int]]


def _build_workload(index: FmIndex, iterations: int, seed: int) -> _Workload:
    """Deterministic query mix drawn from the indexed text itself."""
    rng = random.Random(seed)
    text = reconstruct_reference(index, kernel=Kernel.BYTELUT)
    exact_patterns = []
    for _ in range(iterations):
        length = rng.randint(8, min(24, len(text)))
        start = rng.randint(0, len(text) - length)
        pattern = text[start : start + length]
        if rng.random() < 0.5:
            # flip one character so roughly half the queries miss
            pos = rng.randrange(length)
            pattern = (
                pattern[:pos]
                + rng.choice("ACGT".replace(pattern[pos], ""))
                + pattern[pos + 1 :]
            )
        exact_patterns.append(pattern)
    inexact_patterns = exact_patterns[: max(1, iterations // 4)]
    bucket_cases = []
    for _ in range(max(256, iterations)):
        j = rng.randrange(len(index.buckets))
        bucket_cases.append(
            (index.buckets[j].chars, rng.randint(0, 128), rng.randrange(4))
        )
    return _Workload(exact_patterns, inexact_patterns, bucket_cases)


def run_bench(
    index: FmIndex,
    kernels: list[Kernel | str] | None = None,
    iterations: int = 200,
    seed: int = 0,
) -> list[BenchReport]:
    """Run every kernel over one seed-derived workload.

    Answer checksums are computed from located hits only, so they must be
    identical across kernels; throughputs are informational.
    """
    chosen = [resolve_kernel(k) for k in (kernels or list(CONCRETE_KERNELS))]
    workload = _build_workload(index, iterations, seed)
    reports = []
    for kernel in chosen:
        digest = hashlib.sha256()
        begin = time.perf_counter()

        fn = count_fn(kernel)
        t0 = time.perf_counter()
        for chars, prefix_len, symbol in workload.bucket_cases:
            fn(chars, prefix_len, symbol)
        bucket_elapsed = time.perf_counter() - t0

        t0 = time.perf_counter()
        for pattern in workload.exact_patterns:
            interval = exact_search(index, pattern, kernel)
            hits = locate_all(index, interval, 0, len(pattern), kernel)
            digest.update(repr([(h.record, h.offset) for h in hits]).encode())
        exact_elapsed = time.perf_counter() - t0

        t0 = time.perf_counter()
        for pattern in workload.inexact_patterns:
            matches = inexact_search(index, pattern, 1, kernel)
            hits, _ = collect_hits(index, matches, len(pattern), kernel)
            digest.update(repr([(h.record, h.offset, h.diffs) for h in hits]).encode())
        inexact_elapsed = time.perf_counter() - t0

        reports.append(
            BenchReport(
                kernel=kernel.value,
                bucket_counts_per_sec=len(workload.bucket_cases) / max(bucket_elapsed, 1e-9),
                exact_qps=len(workload.exact_patterns) / max(exact_elapsed, 1e-9),
                inexact_qps=len(workload.inexact_patterns) / max(inexact_elapsed, 1e-9),
                wall_seconds=time.perf_counter() - begin,
                checksum=digest.hexdigest(),
            )
        )
    return reports


def format_tsv(reports: list[BenchReport]) -> str:
    lines = []
    for r in reports:
        lines.append(
            f"{r.kernel}\t{r.bucket_counts_per_sec:.0f}\t{r.exact_qps:.1f}"
            f"\t{r.inexact_qps:.1f}\t{r.wall_seconds:.3f}\t{r.checksum}"
        )
    return "\n".join(lines)


def format_summary(reports: list[BenchReport]) -> str:
    """Human-readable table with speedups relative to the slowest kernel."""
    if not reports:
        return "no kernels benchmarked"
    slowest = min(r.bucket_counts_per_sec for r in reports)
    lines = [
        f"{'kernel':<8} {'buckets/s':>12} {'exact q/s':>10} {'inexact q/s':>12} "
        f"{'wall s':>8} {'rel':>6}"
    ]
    for r in reports:
        rel = r.bucket_counts_per_sec / max(slowest, 1e-9)
        lines.append(
            f"{r.kernel:<8} {r.bucket_counts_per_sec:>12.0f} {r.exact_qps:>10.1f} "
            f"{r.inexact_qps:>12.1f} {r.wall_seconds:>8.3f} {rel:>5.1f}x"
        )
    checksums = {r.checksum for r in reports}
    lines.append(
        "answer checksums agree"
        if len(checksums) == 1
        else "WARNING: answer checksums differ across kernels"
    )
    return "\n".join(lines)
