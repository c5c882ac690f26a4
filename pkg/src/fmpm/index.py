"""FM-index construction: C table, occurrence buckets, sampled suffix entries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .alphabet import CODE_OF, SYMBOLS, TERMINATOR, pack_codes
from .kernels import BUCKET_BYTES, BUCKET_CHARS, Kernel, count_bucket_all4
from .suffix import build_suffix_array, bwt_from_sa

SA_STRIDE = 32


@dataclass(frozen=True)
class RecordSpan:
    """One named stretch of the concatenated reference."""

    name: str
    start: int
    length: int


@dataclass(frozen=True)
class OccBucket:
    """Counter block covering 128 transform characters.

    base[s] holds the number of occurrences of symbol s strictly before
    this bucket, counted over the raw packed transform (the terminator is
    packed as code 0 and therefore included in the A lane; queries correct
    for it).  chars is the 32-byte packed block, zero-padded past the end
    of the transform.
    """

    base: tuple[int, int, int, int]
    chars: bytes


@dataclass(frozen=True)
class FmIndex:
    """Succinct FM-index over a concatenated DNA reference.

    All fields are immutable; instances are safe to share across threads.
    c[s] counts reference characters lexicographically below symbol s
    (c[4] == n), sentinel_row is the transform row holding the terminator,
    and sa_samples stores every 32nd suffix-array entry.
    """

    n: int
    c: tuple[int, int, int, int, int]
    buckets: tuple[OccBucket, ...]
    sentinel_row: int
    sa_samples: tuple[int, ...]
    records: tuple[RecordSpan, ...]


def build_c_table(totals: Sequence[int]) -> tuple[int, int, int, int, int]:
    """Exclusive prefix sums of the four symbol totals."""
    if len(totals) != 4 or any(t < 0 for t in totals):
        raise ValueError("expected four non-negative symbol totals")
    c = [0]
    for t in totals:
        c.append(c[-1] + t)
    return tuple(c)


def build_index(
    reference: str, records: Sequence[tuple[str, int, int]] | None = None
) -> FmIndex:
    """Build the full index for a reference string.

    `records` names stretches of the reference as (name, start, length)
    triples; they must tile [0, n) contiguously.  Omitted, the whole
    reference becomes a single record called "ref".
    """
    sa = build_suffix_array(reference)
    bwt, sentinel_row = bwt_from_sa(reference, sa)
    n = len(reference)

    totals = tuple(bwt.count(s) for s in SYMBOLS)
    c = build_c_table(totals)

    codes = [0 if ch == TERMINATOR else CODE_OF[ch] for ch in bwt]
    buckets = []
    base = (0, 0, 0, 0)
    for start in range(0, n + 1, BUCKET_CHARS):
        chunk = codes[start : start + BUCKET_CHARS]
        chars = pack_codes(chunk, pad_to=BUCKET_BYTES)
        buckets.append(OccBucket(base=base, chars=chars))
        inside = count_bucket_all4(chars, len(chunk), kernel=Kernel.SCALAR)
        base = tuple(b + d for b, d in zip(base, inside))

    sa_samples = tuple(sa[i] for i in range(0, n + 1, SA_STRIDE))
    return FmIndex(
        n=n,
        c=c,
        buckets=tuple(buckets),
        sentinel_row=sentinel_row,
        sa_samples=sa_samples,
        records=_normalize_records(records, n),
    )


def _normalize_records(
    records: Sequence[tuple[str, int, int]] | None, n: int
) -> tuple[RecordSpan, ...]:
    if records is None:
        return (RecordSpan(name="ref", start=0, length=n),)
    spans = []
    expected_start = 0
    for name, start, length in records:
        if not name:
            raise ValueError("record name is empty")
        if start != expected_start or length <= 0:
            raise ValueError(
                f"record {name!r} (start={start}, length={length}) does not tile the reference"
            )
        spans.append(RecordSpan(name=name, start=start, length=length))
        expected_start = start + length
    if expected_start != n:
        raise ValueError(f"records cover {expected_start} of {n} characters")
    return tuple(spans)


def check_index(index: FmIndex) -> None:
    """Validate structural invariants; raises ValueError on any violation."""
    n = index.n
    if n <= 0:
        raise ValueError("index covers an empty reference")
    if index.c[0] != 0 or index.c[4] != n:
        raise ValueError(f"C table endpoints wrong: {index.c}")
    if any(a > b for a, b in zip(index.c, index.c[1:])):
        raise ValueError(f"C table not non-decreasing: {index.c}")
    expected_buckets = (n + 1 + BUCKET_CHARS - 1) // BUCKET_CHARS
    if len(index.buckets) != expected_buckets:
        raise ValueError(
            f"expected {expected_buckets} buckets for n={n}, found {len(index.buckets)}"
        )
    if not 0 <= index.sentinel_row <= n:
        raise ValueError(f"sentinel row {index.sentinel_row} outside [0, {n}]")
    if len(index.sa_samples) != n // SA_STRIDE + 1:
        raise ValueError(f"expected {n // SA_STRIDE + 1} samples, found {len(index.sa_samples)}")
    if any(not 0 <= s <= n for s in index.sa_samples):
        raise ValueError("suffix-array sample out of range")

    base = (0, 0, 0, 0)
    remaining = n + 1
    for j, bucket in enumerate(index.buckets):
        if bucket.base != base:
            raise ValueError(f"bucket {j} base {bucket.base} breaks telescoping ({base})")
        if len(bucket.chars) != BUCKET_BYTES:
            raise ValueError(f"bucket {j} block is {len(bucket.chars)} bytes")
        inside_len = min(BUCKET_CHARS, remaining)
        inside = count_bucket_all4(bucket.chars, inside_len, kernel=Kernel.SCALAR)
        padding = count_bucket_all4(bucket.chars, BUCKET_CHARS, kernel=Kernel.SCALAR)
        if padding.a - inside.a != BUCKET_CHARS - inside_len or (
            padding.c != inside.c or padding.g != inside.g or padding.t != inside.t
        ):
            raise ValueError(f"bucket {j} padding fields are not zero")
        base = tuple(b + d for b, d in zip(base, inside))
        remaining -= inside_len

    _normalize_records([(r.name, r.start, r.length) for r in index.records], n)
