"""Occurrence-counting kernels over one 128-character packed bucket.

A bucket stores 128 two-bit symbols in 32 bytes.  Every kernel answers the
same question: how many times does a symbol occur among the first
`prefix_len` characters of the bucket?  Four implementations are provided:

* scalar    - per-character unpacking; the ground-truth oracle.
* bytelut   - 256-entry per-byte count tables.
* nibble    - three-phase half-byte pipeline (lookup, extraction,
              aggregation) run on plain 64-bit integers, one 8-byte group
              at a time, mirroring in-register lane arithmetic.
* simd      - the same pipeline vectorized with numpy uint8/uint64 lanes.

The nibble pipeline works on complemented low-nibble counts so that a
sum-of-absolute-differences against the high-nibble counts folds both
halves into one reduction: each looked-up low byte holds 255 - c_lo and
each high byte holds c_hi, so |lo - hi| = 255 - (c_lo + c_hi), giving
2040 - group_count per 8-byte group and 8160 - bucket_count overall.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from .alphabet import A

BUCKET_CHARS = 128
BUCKET_BYTES = 32

_GROUP_BYTES = 8
_NIBBLE_MASK = 0x0F0F0F0F0F0F0F0F
_LOW2_MASK = 0x0303030303030303
_HIGH6_FILL = 0xFCFCFCFCFCFCFCFC
# 8 bytes * 255 and 32 bytes * 255: the SAD value of an all-zero count
_GROUP_SAD_CEILING = 2040
_BUCKET_SAD_CEILING = 8160


class OccCounts(NamedTuple):
    """Per-symbol counts in A, C, G, T order (indexable by symbol code)."""

    a: int
    c: int
    g: int
    t: int


class NibbleTables(NamedTuple):
    """16-entry lookup tables indexed by a half-byte (two packed symbols).

    hi[v] packs the counts of each symbol s among the two 2-bit fields of v
    into bits [2s, 2s+1].  lo[v] is the bitwise complement of the same
    packed byte, pre-complemented so the extraction phase can produce
    255 - count without extra work.
    """

    lo: bytes
    hi: bytes

    @staticmethod
    def build() -> "NibbleTables":
        hi = bytearray(16)
        for v in range(16):
            packed = 0
            for code in (v & 3, (v >> 2) & 3):
                packed += 1 << (code << 1)
            hi[v] = packed
        lo = bytes(~b & 0xFF for b in hi)
        return NibbleTables(lo=lo, hi=bytes(hi))


TABLES = NibbleTables.build()


def _build_byte_tables() -> tuple[list[list[int]], list[int]]:
    per_symbol = [[0] * 256 for _ in range(4)]
    packed = [0] * 256
    for b in range(256):
        for shift in (0, 2, 4, 6):
            code = (b >> shift) & 3
            per_symbol[code][b] += 1
        packed[b] = sum(per_symbol[s][b] << (s << 3) for s in range(4))
    return per_symbol, packed


# _BYTE_COUNTS[s][b]: occurrences of symbol s among the 4 fields of byte b.
# _BYTE_COUNTS_PACKED[b]: the same four counts packed 8 bits per symbol.
_BYTE_COUNTS, _BYTE_COUNTS_PACKED = _build_byte_tables()

_NP_LO = np.frombuffer(TABLES.lo, dtype=np.uint8)
_NP_HI = np.frombuffer(TABLES.hi, dtype=np.uint8)
_NP_FILL = np.uint64(_HIGH6_FILL)
_NP_KEEP = np.uint64(_LOW2_MASK)


@dataclass
class KernelTrace:
    """Intermediate values of one nibble-kernel invocation, for tests.

    Filled only when passed explicitly; production calls skip all of it.
    Words are little-endian 64-bit views of each 8-byte group.
    """

    masked_words: list[int] = field(default_factory=list)
    lookup_lo_words: list[int] = field(default_factory=list)
    lookup_hi_words: list[int] = field(default_factory=list)
    group_sads: list[int] = field(default_factory=list)
    sad_total: int = 0
    raw_count: int = 0
    count: int = 0


def _check_bucket(block: bytes, prefix_len: int) -> None:
    if len(block) != BUCKET_BYTES:
        raise ValueError(f"bucket block must be {BUCKET_BYTES} bytes, got {len(block)}")
    if not 0 <= prefix_len <= BUCKET_CHARS:
        raise ValueError(f"prefix_len {prefix_len} outside [0, {BUCKET_CHARS}]")


def mask_bucket(block: bytes, prefix_len: int) -> bytes:
    """Zero every 2-bit field at positions >= prefix_len (symbol A)."""
    if prefix_len >= BUCKET_CHARS:
        return bytes(block)
    full, rem = divmod(prefix_len, 4)
    out = bytearray(BUCKET_BYTES)
    out[:full] = block[:full]
    if rem:
        out[full] = block[full] & ((1 << (rem << 1)) - 1)
    return bytes(out)


def count_bucket_scalar(block: bytes, prefix_len: int, symbol: int) -> int:
    """Reference count: unpack and compare one character at a time."""
    _check_bucket(block, prefix_len)
    count = 0
    for j in range(prefix_len):
        if (block[j >> 2] >> ((j & 3) << 1)) & 3 == symbol:
            count += 1
    return count


def count_bucket_bytelut(block: bytes, prefix_len: int, symbol: int) -> int:
    """Count via a 256-entry per-byte table plus a short tail loop."""
    _check_bucket(block, prefix_len)
    full, rem = divmod(prefix_len, 4)
    table = _BYTE_COUNTS[symbol]
    count = sum(map(table.__getitem__, block[:full]))
    if rem:
        b = block[full]
        for f in range(rem):
            if (b >> (f << 1)) & 3 == symbol:
                count += 1
    return count


def count_bucket_nibble(
    block: bytes,
    prefix_len: int,
    symbol: int,
    trace: KernelTrace | None = None,
) -> int:
    """Three-phase half-byte count over four 8-byte groups.

    Phase 1 (lookup): each byte's low nibble indexes the complemented
    count table and its high nibble the plain one, yielding two 64-bit
    words per group.  Phase 2 (extraction): both words shift right by
    2*symbol so the wanted count lands in bits [0,1] of every byte; the
    complemented word is topped up with ones, the plain word masked to
    its low two bits.  Phase 3 (aggregation): a per-group SAD equals
    2040 - group_count, so the bucket count is 8160 minus the SAD total.
    Positions masked off as padding decode as symbol A and are subtracted
    again at the end.
    """
    _check_bucket(block, prefix_len)
    masked = mask_bucket(block, prefix_len)
    lo_t, hi_t = TABLES
    shift = symbol << 1
    sad_total = 0
    for g in range(0, BUCKET_BYTES, _GROUP_BYTES):
        lo_w = 0
        hi_w = 0
        for i in range(_GROUP_BYTES):
            b = masked[g + i]
            off = i << 3
            lo_w |= lo_t[b & 0x0F] << off
            hi_w |= hi_t[b >> 4] << off
        # 64-bit-wide shifts; bits bleeding across byte lanes are wiped
        # by the fill/mask step, which only keeps bits [0,1] meaningful.
        shifted_lo = (lo_w >> shift) | _HIGH6_FILL
        shifted_hi = (hi_w >> shift) & _LOW2_MASK
        sad = 0
        for off in range(0, 64, 8):
            sad += abs(((shifted_lo >> off) & 0xFF) - ((shifted_hi >> off) & 0xFF))
        sad_total += sad
        if trace is not None:
            trace.masked_words.append(int.from_bytes(masked[g : g + _GROUP_BYTES], "little"))
            trace.lookup_lo_words.append(lo_w)
            trace.lookup_hi_words.append(hi_w)
            trace.group_sads.append(sad)
    raw = _BUCKET_SAD_CEILING - sad_total
    count = raw - (BUCKET_CHARS - prefix_len) if symbol == A else raw
    if trace is not None:
        trace.sad_total = sad_total
        trace.raw_count = raw
        trace.count = count
    return count


def count_bucket_simd(block: bytes, prefix_len: int, symbol: int) -> int:
    """Nibble pipeline vectorized over numpy lanes (little-endian layout)."""
    _check_bucket(block, prefix_len)
    masked = mask_bucket(block, prefix_len)
    data = np.frombuffer(masked, dtype=np.uint8)
    lo = _NP_LO[data & 0x0F]
    hi = _NP_HI[data >> 4]
    shift = np.uint64(symbol << 1)
    lo_lanes = (lo.view("<u8") >> shift) | _NP_FILL
    hi_lanes = (hi.view("<u8") >> shift) & _NP_KEEP
    diffs = np.abs(
        lo_lanes.view(np.uint8).astype(np.int16) - hi_lanes.view(np.uint8).astype(np.int16)
    )
    raw = _BUCKET_SAD_CEILING - int(diffs.sum())
    return raw - (BUCKET_CHARS - prefix_len) if symbol == A else raw


def _all4_scalar(block: bytes, prefix_len: int) -> OccCounts:
    counts = [0, 0, 0, 0]
    for j in range(prefix_len):
        counts[(block[j >> 2] >> ((j & 3) << 1)) & 3] += 1
    return OccCounts(*counts)


def _all4_bytelut(block: bytes, prefix_len: int) -> OccCounts:
    full, rem = divmod(prefix_len, 4)
    # one byte per symbol lane; 32 bytes * count<=4 stays below 256
    packed = sum(map(_BYTE_COUNTS_PACKED.__getitem__, block[:full]))
    counts = [(packed >> (s << 3)) & 0xFF for s in range(4)]
    if rem:
        b = block[full]
        for f in range(rem):
            counts[(b >> (f << 1)) & 3] += 1
    return OccCounts(*counts)


def _all4_nibble(block: bytes, prefix_len: int) -> OccCounts:
    """One lookup pass, four independent extractions, then aggregation."""
    masked = mask_bucket(block, prefix_len)
    lo_t, hi_t = TABLES
    sads = [0, 0, 0, 0]
    for g in range(0, BUCKET_BYTES, _GROUP_BYTES):
        lo_w = 0
        hi_w = 0
        for i in range(_GROUP_BYTES):
            b = masked[g + i]
            off = i << 3
            lo_w |= lo_t[b & 0x0F] << off
            hi_w |= hi_t[b >> 4] << off
        for s in range(4):
            sh = s << 1
            shifted_lo = (lo_w >> sh) | _HIGH6_FILL
            shifted_hi = (hi_w >> sh) & _LOW2_MASK
            sad = 0
            for off in range(0, 64, 8):
                sad += abs(((shifted_lo >> off) & 0xFF) - ((shifted_hi >> off) & 0xFF))
            sads[s] += sad
    counts = [_BUCKET_SAD_CEILING - s for s in sads]
    counts[A] -= BUCKET_CHARS - prefix_len
    return OccCounts(*counts)


def _all4_simd(block: bytes, prefix_len: int) -> OccCounts:
    masked = mask_bucket(block, prefix_len)
    data = np.frombuffer(masked, dtype=np.uint8)
    lo = _NP_LO[data & 0x0F].view("<u8")
    hi = _NP_HI[data >> 4].view("<u8")
    counts = []
    for s in range(4):
        shift = np.uint64(s << 1)
        lo_lanes = (lo >> shift) | _NP_FILL
        hi_lanes = (hi >> shift) & _NP_KEEP
        diffs = np.abs(
            lo_lanes.view(np.uint8).astype(np.int16)
            - hi_lanes.view(np.uint8).astype(np.int16)
        )
        counts.append(_BUCKET_SAD_CEILING - int(diffs.sum()))
    counts[A] -= BUCKET_CHARS - prefix_len
    return OccCounts(*counts)


class Kernel(str, Enum):
    SCALAR = "scalar"
    BYTELUT = "bytelut"
    NIBBLE = "nibble"
    SIMD = "simd"
    AUTO = "auto"


# Kernels selectable by name; AUTO resolves before dispatch.
CONCRETE_KERNELS = (Kernel.SCALAR, Kernel.BYTELUT, Kernel.NIBBLE, Kernel.SIMD)

ENV_KERNEL = "FMPM_KERNEL"

_COUNT_FNS: dict[Kernel, Callable[[bytes, int, int], int]] = {
    Kernel.SCALAR: count_bucket_scalar,
    Kernel.BYTELUT: count_bucket_bytelut,
    Kernel.NIBBLE: count_bucket_nibble,
    Kernel.SIMD: count_bucket_simd,
}

_ALL4_FNS: dict[Kernel, Callable[[bytes, int], OccCounts]] = {
    Kernel.SCALAR: _all4_scalar,
    Kernel.BYTELUT: _all4_bytelut,
    Kernel.NIBBLE: _all4_nibble,
    Kernel.SIMD: _all4_simd,
}


def resolve_kernel(kernel: Kernel | str | None = None) -> Kernel:
    """Normalize a kernel selection to a concrete kernel.

    None consults the FMPM_KERNEL environment variable, falling back to
    auto.  Auto resolves to the byte-table kernel: per-call dispatch
    overhead makes the numpy lane kernel slower than table lookups for
    single 32-byte buckets, so the lane path must be asked for by name.
    """
    if type(kernel) is Kernel:
        return Kernel.BYTELUT if kernel is Kernel.AUTO else kernel
    if kernel is None:
        kernel = os.environ.get(ENV_KERNEL) or Kernel.AUTO
    try:
        kernel = Kernel(kernel)
    except ValueError:
        names = ", ".join(k.value for k in Kernel)
        raise ValueError(f"unknown kernel {kernel!r}; expected one of: {names}") from None
    if kernel is Kernel.AUTO:
        return Kernel.BYTELUT
    return kernel


def count_fn(kernel: Kernel | str | None = None) -> Callable[[bytes, int, int], int]:
    return _COUNT_FNS[resolve_kernel(kernel)]


def all4_fn(kernel: Kernel | str | None = None) -> Callable[[bytes, int], OccCounts]:
    return _ALL4_FNS[resolve_kernel(kernel)]


def count_bucket_all4(
    block: bytes, prefix_len: int, kernel: Kernel | str | None = None
) -> OccCounts:
    """All four symbol counts for one bucket prefix in a single pass."""
    _check_bucket(block, prefix_len)
    return all4_fn(kernel)(block, prefix_len)
