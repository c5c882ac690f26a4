"""Binary index file format (.fmi).

Little-endian throughout, CRC32 of everything before the trailer:

    magic        4s   "FMPM"
    version      u16  1
    flags        u16  0 (reserved)
    n            u64  reference length
    bucket_size  u32  128 (layout witness, fixed in version 1)
    sa_stride    u32  32  (layout witness, fixed in version 1)
    sentinel_row u64
    c            5*u64
    bucket_count u64
    buckets      bucket_count * (4*u64 base + 32 bytes packed chars)
    sample_count u64
    sa_samples   sample_count * u64
    record_count u32
    records      record_count * (u32 name_len + name utf-8 + u64 start + u64 length)
    crc32        u32  over all preceding bytes
"""

from __future__ import annotations

import struct
import zlib
from typing import BinaryIO

from .index import FmIndex, OccBucket, RecordSpan, SA_STRIDE
from .kernels import BUCKET_BYTES, BUCKET_CHARS

MAGIC = b"FMPM"
VERSION = 1


class IndexFormatError(Exception):
    """Base class for malformed index streams."""


class BadMagicError(IndexFormatError):
    pass


class VersionMismatchError(IndexFormatError):
    pass


class TruncatedStreamError(IndexFormatError):
    pass


class ChecksumError(IndexFormatError):
    pass


class _CrcWriter:
    def __init__(self, sink: BinaryIO):
        self._sink = sink
        self.crc = 0
        self.written = 0

    def write(self, data: bytes) -> None:
        self.crc = zlib.crc32(data, self.crc)
        self._sink.write(data)
        self.written += len(data)


class _CrcReader:
    def __init__(self, source: BinaryIO):
        self._source = source
        self.crc = 0

    def read(self, size: int, what: str) -> bytes:
        data = self._source.read(size)
        if len(data) != size:
            raise TruncatedStreamError(
                f"stream ended inside {what}: wanted {size} bytes, got {len(data)}"
            )
        self.crc = zlib.crc32(data, self.crc)
        return data


def serialize_index(index: FmIndex, sink: BinaryIO) -> int:
    """Write the index to a binary stream; returns the byte count."""
    w = _CrcWriter(sink)
    w.write(MAGIC)
    w.write(struct.pack("<HH", VERSION, 0))
    w.write(struct.pack("<QIIQ", index.n, BUCKET_CHARS, SA_STRIDE, index.sentinel_row))
    w.write(struct.pack("<5Q", *index.c))
    w.write(struct.pack("<Q", len(index.buckets)))
    for bucket in index.buckets:
        w.write(struct.pack("<4Q", *bucket.base))
        w.write(bucket.chars)
    w.write(struct.pack("<Q", len(index.sa_samples)))
    if index.sa_samples:
        w.write(struct.pack(f"<{len(index.sa_samples)}Q", *index.sa_samples))
    w.write(struct.pack("<I", len(index.records)))
    for record in index.records:
        name = record.name.encode("utf-8")
        w.write(struct.pack("<I", len(name)))
        w.write(name)
        w.write(struct.pack("<QQ", record.start, record.length))
    trailer = struct.pack("<I", w.crc)
    sink.write(trailer)
    return w.written + len(trailer)


def deserialize_index(source: BinaryIO) -> FmIndex:
    """Read an index written by serialize_index, verifying the checksum."""
    r = _CrcReader(source)
    magic = r.read(4, "magic")
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}; not an index file")
    version, _flags = struct.unpack("<HH", r.read(4, "header"))
    if version != VERSION:
        raise VersionMismatchError(f"unsupported version {version}; expected {VERSION}")
    n, bucket_size, sa_stride, sentinel_row = struct.unpack("<QIIQ", r.read(24, "header"))
    if bucket_size != BUCKET_CHARS or sa_stride != SA_STRIDE:
        raise IndexFormatError(
            f"unsupported layout: bucket_size={bucket_size}, sa_stride={sa_stride}"
        )
    c = struct.unpack("<5Q", r.read(40, "C table"))
    (bucket_count,) = struct.unpack("<Q", r.read(8, "bucket count"))
    expected_buckets = (n + 1 + BUCKET_CHARS - 1) // BUCKET_CHARS
    if bucket_count != expected_buckets:
        raise IndexFormatError(
            f"bucket count {bucket_count} does not match n={n} (expected {expected_buckets})"
        )
    buckets = []
    for _ in range(bucket_count):
        base = struct.unpack("<4Q", r.read(32, "bucket base"))
        chars = r.read(BUCKET_BYTES, "bucket chars")
        buckets.append(OccBucket(base=base, chars=chars))
    (sample_count,) = struct.unpack("<Q", r.read(8, "sample count"))
    if sample_count != n // SA_STRIDE + 1:
        raise IndexFormatError(f"sample count {sample_count} does not match n={n}")
    samples = struct.unpack(f"<{sample_count}Q", r.read(8 * sample_count, "samples"))
    (record_count,) = struct.unpack("<I", r.read(4, "record count"))
    records = []
    for _ in range(record_count):
        (name_len,) = struct.unpack("<I", r.read(4, "record name length"))
        name = r.read(name_len, "record name").decode("utf-8")
        start, length = struct.unpack("<QQ", r.read(16, "record span"))
        records.append(RecordSpan(name=name, start=start, length=length))
    computed = r.crc
    trailer = source.read(4)
    if len(trailer) != 4:
        raise TruncatedStreamError("stream ended inside checksum trailer")
    (stored,) = struct.unpack("<I", trailer)
    if stored != computed:
        raise ChecksumError(f"checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")
    return FmIndex(
        n=n,
        c=c,
        buckets=tuple(buckets),
        sentinel_row=sentinel_row,
        sa_samples=samples,
        records=tuple(records),
    )
