"""Backward search, bounded-difference search, and position recovery."""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterable, NamedTuple

from .alphabet import SYMBOLS, encode, is_dna
from .index import FmIndex, SA_STRIDE
from .kernels import BUCKET_CHARS, Kernel, count_fn, resolve_kernel
from .occ import occ, occ_pair_all


class BwmInterval(NamedTuple):
    """Inclusive row range [k, l] of the sorted rotation matrix.

    Empty when k > l.  `degenerate` marks the empty result returned for
    patterns containing characters outside ACGT.
    """

    k: int
    l: int
    degenerate: bool = False

    @property
    def is_empty(self) -> bool:
        return self.k > self.l

    @property
    def width(self) -> int:
        return 0 if self.k > self.l else self.l - self.k + 1


class MatchResult(NamedTuple):
    """One surviving interval of the bounded-difference search."""

    interval: BwmInterval
    diffs_used: int


class Hit(NamedTuple):
    """A located occurrence, mapped to its record."""

    record: str
    offset: int
    global_pos: int
    diffs: int


def init_interval(index: FmIndex, symbol: int) -> BwmInterval:
    """Row range of rotations starting with `symbol`: [c[s]+1, c[s+1]].

    The +1 skips the terminator row, which sorts before everything.
    """
    if not 0 <= symbol < 4:
        raise ValueError(f"symbol code {symbol} outside [0, 4)")
    return BwmInterval(k=index.c[symbol] + 1, l=index.c[symbol + 1])


def extend_backward(
    index: FmIndex,
    interval: BwmInterval,
    symbol: int,
    kernel: Kernel | str | None = None,
) -> BwmInterval:
    """Narrow an interval to rotations prefixed by one more symbol."""
    if interval.is_empty:
        raise ValueError("cannot extend an empty interval")
    pair = occ_pair_all(index, interval.k - 1, interval.l, kernel)
    c = index.c[symbol]
    return BwmInterval(k=c + pair.at_low[symbol] + 1, l=c + pair.at_high[symbol])


def exact_search(
    index: FmIndex, pattern: str, kernel: Kernel | str | None = None
) -> BwmInterval:
    """Interval of rows whose rotations start with `pattern`.

    Runs right to left, one interval update per character, stopping as
    soon as the interval empties.  A pattern with characters outside ACGT
    yields an empty interval flagged degenerate rather than an error.
    """
    if not pattern:
        raise ValueError("pattern is empty")
    if not is_dna(pattern):
        return BwmInterval(k=1, l=0, degenerate=True)
    kernel = resolve_kernel(kernel)
    codes = encode(pattern)
    interval = init_interval(index, codes[-1])
    for symbol in reversed(codes[:-1]):
        if interval.is_empty:
            break
        interval = extend_backward(index, interval, symbol, kernel)
    return interval


def inexact_search(
    index: FmIndex,
    pattern: str,
    max_diff: int,
    kernel: Kernel | str | None = None,
) -> list[MatchResult]:
    """All intervals reachable within `max_diff` edits of `pattern`.

    Explores the edit branches (skip a pattern character, insert a
    reference character, match, mismatch) with an explicit work stack;
    every branch spends one unit of budget except a match.  Branch
    intervals are computed fresh from the interval the loop entered with,
    and empty intervals are pruned: extending an empty interval can never
    repopulate it.  Results are deduplicated by interval, keeping the
    smallest difference count, and sorted for determinism.
    """
    if max_diff < 0:
        raise ValueError(f"difference budget {max_diff} is negative")
    if not pattern:
        raise ValueError("pattern is empty")
    if not is_dna(pattern):
        return []
    kernel = resolve_kernel(kernel)
    codes = encode(pattern)
    c = index.c
    best: dict[tuple[int, int], int] = {}
    # (next pattern position, remaining budget, k, l); the full row range
    # [0, n] makes the first extension coincide with init_interval.
    stack = [(len(codes) - 1, max_diff, 0, index.n)]
    while stack:
        i, budget, k, l = stack.pop()
        if i < 0:
            used = max_diff - budget
            key = (k, l)
            prev = best.get(key)
            if prev is None or used < prev:
                best[key] = used
            continue
        if budget > 0:
            # skip: consume the pattern character without extending
            stack.append((i - 1, budget - 1, k, l))
        pair = occ_pair_all(index, k - 1, l, kernel)
        want = codes[i]
        for symbol in range(4):
            base = c[symbol]
            k2 = base + pair.at_low[symbol] + 1
            l2 = base + pair.at_high[symbol]
            if k2 > l2:
                continue
            if budget > 0:
                # insert: extend by a reference character, keep the pattern position
                stack.append((i, budget - 1, k2, l2))
            if symbol == want:
                stack.append((i - 1, budget, k2, l2))
            elif budget > 0:
                stack.append((i - 1, budget - 1, k2, l2))
    return sorted(
        (
            MatchResult(interval=BwmInterval(k=k, l=l), diffs_used=used)
            for (k, l), used in best.items()
        ),
        key=lambda m: (m.interval.k, m.interval.l, m.diffs_used),
    )


def psi_inverse(index: FmIndex, i: int, kernel: Kernel | str | None = None) -> int | None:
    """Row of the suffix one position earlier in the text, None at the sentinel.

    The sentinel row corresponds to suffix-array value 0, which has no
    predecessor; callers see None instead of an exception.
    """
    stepped = psi_inverse_fused(index, i, kernel)
    return None if stepped is None else stepped[1]


def psi_inverse_fused(
    index: FmIndex, i: int, kernel: Kernel | str | None = None
) -> tuple[int, int] | None:
    """(symbol at row i, predecessor row) with a single bucket access."""
    if not 0 <= i <= index.n:
        raise ValueError(f"row {i} outside [0, {index.n}]")
    if i == index.sentinel_row:
        return None
    j, r = divmod(i, BUCKET_CHARS)
    bucket = index.buckets[j]
    symbol = (bucket.chars[r >> 2] >> ((r & 3) << 1)) & 3
    count = bucket.base[symbol] + count_fn(kernel)(bucket.chars, r + 1, symbol)
    if symbol == 0 and index.sentinel_row <= i:
        count -= 1
    return symbol, index.c[symbol] + count


def locate_row(index: FmIndex, i: int, kernel: Kernel | str | None = None) -> int:
    """Text position of row i, walking to the nearest sampled row.

    Steps backward through the text until reaching a row whose
    suffix-array entry is stored (every 32nd row) or the sentinel row
    (position 0), then adds back the number of steps taken.
    """
    kernel = resolve_kernel(kernel)
    steps = 0
    while True:
        if i == index.sentinel_row:
            return steps
        if i % SA_STRIDE == 0:
            return index.sa_samples[i // SA_STRIDE] + steps
        stepped = psi_inverse_fused(index, i, kernel)
        assert stepped is not None
        i = stepped[1]
        steps += 1
        if steps > index.n + 1:
            raise RuntimeError("predecessor walk did not terminate; index is corrupt")


def locate_all(
    index: FmIndex,
    interval: BwmInterval,
    diffs: int,
    pattern_len: int,
    kernel: Kernel | str | None = None,
) -> list[Hit]:
    """Map every row of an interval to a record-relative hit.

    Hits whose span cannot fit inside a single record are dropped: a
    match using d differences covers at least pattern_len - d reference
    characters, so anything forced across a record boundary (or past the
    end of the reference) is an artifact of concatenation.
    """
    if interval.is_empty:
        return []
    kernel = resolve_kernel(kernel)
    starts = [r.start for r in index.records]
    min_span = max(pattern_len - diffs, 0)
    hits = []
    for row in range(interval.k, interval.l + 1):
        pos = locate_row(index, row, kernel)
        if pos >= index.n:
            continue
        which = bisect_right(starts, pos) - 1
        record = index.records[which]
        offset = pos - record.start
        if offset + min_span > record.length:
            continue
        hits.append(Hit(record=record.name, offset=offset, global_pos=pos, diffs=diffs))
    hits.sort(key=lambda h: h.global_pos)
    return hits


def collect_hits(
    index: FmIndex,
    matches: Iterable[MatchResult],
    pattern_len: int,
    kernel: Kernel | str | None = None,
    max_hits: int | None = None,
) -> tuple[list[Hit], bool]:
    """Merge hits from several intervals, keeping the fewest diffs per position.

    Returns the sorted hits and whether `max_hits` truncated them.
    """
    kernel = resolve_kernel(kernel)
    best: dict[int, Hit] = {}
    for match in sorted(matches, key=lambda m: m.diffs_used):
        for hit in locate_all(index, match.interval, match.diffs_used, pattern_len, kernel):
            prev = best.get(hit.global_pos)
            if prev is None or hit.diffs < prev.diffs:
                best[hit.global_pos] = hit
    hits = sorted(best.values(), key=lambda h: h.global_pos)
    truncated = max_hits is not None and len(hits) > max_hits
    if truncated:
        hits = hits[:max_hits]
    return hits, truncated


def reconstruct_reference(index: FmIndex, kernel: Kernel | str | None = None) -> str:
    """Rebuild the reference by walking predecessors from the last row.

    Row 0 always holds the rotation starting with the terminator, whose
    preceding character is the last of the text; n fused steps recover
    the whole reference right to left.
    """
    kernel = resolve_kernel(kernel)
    out = []
    row = 0
    for _ in range(index.n):
        stepped = psi_inverse_fused(index, row, kernel)
        if stepped is None:
            raise RuntimeError("hit the sentinel row early; index is corrupt")
        symbol, row = stepped
        out.append(SYMBOLS[symbol])
    return "".join(reversed(out))
