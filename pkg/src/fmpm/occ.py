"""Index-level occurrence queries on top of the bucket kernels."""

from __future__ import annotations

from typing import NamedTuple

from .alphabet import A
from .index import FmIndex
from .kernels import BUCKET_CHARS, Kernel, OccCounts, all4_fn, count_fn, resolve_kernel

_ZERO = OccCounts(0, 0, 0, 0)


class OccPair(NamedTuple):
    """Occurrence counts at the two positions an interval update needs."""

    at_low: OccCounts
    at_high: OccCounts


def occ(index: FmIndex, symbol: int, k: int, kernel: Kernel | str | None = None) -> int:
    """Occurrences of `symbol` in transform rows 0..k, inclusive.

    k == -1 is the defined empty-prefix base case and returns 0.  The
    terminator is packed as code 0, so the raw A count is corrected down
    by one once the prefix covers the sentinel row.
    """
    if not 0 <= symbol < 4:
        raise ValueError(f"symbol code {symbol} outside [0, 4)")
    if k < 0:
        if k == -1:
            return 0
        raise ValueError(f"position {k} below -1")
    if k > index.n:
        raise ValueError(f"position {k} beyond transform end {index.n}")
    j, r = divmod(k, BUCKET_CHARS)
    bucket = index.buckets[j]
    count = bucket.base[symbol] + count_fn(kernel)(bucket.chars, r + 1, symbol)
    if symbol == A and index.sentinel_row <= k:
        count -= 1
    return count


def occ_all(index: FmIndex, k: int, kernel: Kernel | str | None = None) -> OccCounts:
    """All four occurrence counts at position k (k == -1 gives zeros)."""
    if k == -1:
        return _ZERO
    if not 0 <= k <= index.n:
        raise ValueError(f"position {k} outside [-1, {index.n}]")
    j, r = divmod(k, BUCKET_CHARS)
    bucket = index.buckets[j]
    inside = all4_fn(kernel)(bucket.chars, r + 1)
    counts = [b + d for b, d in zip(bucket.base, inside)]
    if index.sentinel_row <= k:
        counts[A] -= 1
    return OccCounts(*counts)


def occ_pair_all(
    index: FmIndex, low: int, high: int, kernel: Kernel | str | None = None
) -> OccPair:
    """Counts for all symbols at two positions, low <= high.

    The workhorse of interval updates, which need Occ at k-1 and l for
    every candidate symbol.  When both positions land in the same bucket
    its packed block is fetched once and scanned for both prefixes.
    """
    if low > high:
        raise ValueError(f"pair positions out of order: {low} > {high}")
    kernel = resolve_kernel(kernel)
    if low == high:
        at = occ_all(index, high, kernel)
        return OccPair(at_low=at, at_high=at)
    if low < 0:
        if low != -1:
            raise ValueError(f"position {low} below -1")
        return OccPair(at_low=_ZERO, at_high=occ_all(index, high, kernel))
    if high > index.n:
        raise ValueError(f"position {high} beyond transform end {index.n}")
    j_low, r_low = divmod(low, BUCKET_CHARS)
    j_high, r_high = divmod(high, BUCKET_CHARS)
    if j_low != j_high:
        return OccPair(
            at_low=occ_all(index, low, kernel), at_high=occ_all(index, high, kernel)
        )
    bucket = index.buckets[j_low]
    all4 = all4_fn(kernel)
    inside_low = all4(bucket.chars, r_low + 1)
    inside_high = all4(bucket.chars, r_high + 1)
    counts_low = [b + d for b, d in zip(bucket.base, inside_low)]
    counts_high = [b + d for b, d in zip(bucket.base, inside_high)]
    if index.sentinel_row <= low:
        counts_low[A] -= 1
    if index.sentinel_row <= high:
        counts_high[A] -= 1
    return OccPair(at_low=OccCounts(*counts_low), at_high=OccCounts(*counts_high))


def bwt_char_at(index: FmIndex, i: int) -> int | None:
    """Symbol code stored at transform row i, or None at the sentinel row."""
    if not 0 <= i <= index.n:
        raise ValueError(f"row {i} outside [0, {index.n}]")
    if i == index.sentinel_row:
        return None
    j, r = divmod(i, BUCKET_CHARS)
    return (index.buckets[j].chars[r >> 2] >> ((r & 3) << 1)) & 3
