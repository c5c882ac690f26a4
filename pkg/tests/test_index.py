import random

import pytest

from fmpm.alphabet import TERMINATOR
from fmpm.index import (
    FmIndex,
    RecordSpan,
    SA_STRIDE,
    build_c_table,
    build_index,
    check_index,
)
from fmpm.kernels import BUCKET_BYTES, BUCKET_CHARS, Kernel, count_bucket_all4
from fmpm.suffix import build_suffix_array, bwt_from_sa

from oracles import random_dna


def test_c_table_examples():
    assert build_c_table([2, 1, 1, 0]) == (0, 2, 3, 4, 4)
    assert build_c_table([1, 1, 1, 1]) == (0, 1, 2, 3, 4)
    assert build_c_table([0, 0, 0, 0]) == (0, 0, 0, 0, 0)


def test_c_table_rejects_bad_totals():
    with pytest.raises(ValueError):
        build_c_table([1, 2, 3])
    with pytest.raises(ValueError):
        build_c_table([1, -1, 0, 0])


def test_build_index_small_reference():
    index = build_index("ACAG")
    assert index.n == 4
    assert index.c == (0, 2, 3, 4, 4)
    assert index.sentinel_row == 1
    assert len(index.buckets) == 1
    assert index.sa_samples == (4,)
    assert index.records == (RecordSpan(name="ref", start=0, length=4),)
    check_index(index)


def test_build_index_single_character():
    index = build_index("A")
    assert index.n == 1
    assert index.c == (0, 1, 1, 1, 1)
    assert index.sa_samples == (1,)
    check_index(index)


def test_bucket_contents_match_bwt():
    text = random_dna(random.Random(31), 300)
    index = build_index(text)
    bwt, sentinel_row = bwt_from_sa(text, build_suffix_array(text))
    assert index.sentinel_row == sentinel_row
    read_back = []
    for j, bucket in enumerate(index.buckets):
        for r in range(min(BUCKET_CHARS, 301 - j * BUCKET_CHARS)):
            read_back.append((bucket.chars[r >> 2] >> ((r & 3) << 1)) & 3)
    codes = [0 if ch == TERMINATOR else "ACGT".index(ch) for ch in bwt]
    assert read_back == codes


def test_base_telescoping_across_buckets():
    text = random_dna(random.Random(32), 200)
    index = build_index(text)
    assert len(index.buckets) == 2
    assert index.buckets[0].base == (0, 0, 0, 0)
    inside = count_bucket_all4(index.buckets[0].chars, BUCKET_CHARS, Kernel.SCALAR)
    assert index.buckets[1].base == tuple(inside)
    check_index(index)


def test_sample_stride():
    text = random_dna(random.Random(33), 167)
    index = build_index(text)
    sa = build_suffix_array(text)
    assert index.sa_samples == tuple(sa[i] for i in range(0, 168, SA_STRIDE))


def test_records_validation():
    with pytest.raises(ValueError):
        build_index("ACGT", [("r1", 0, 3)])
    with pytest.raises(ValueError):
        build_index("ACGT", [("r1", 0, 2), ("r2", 3, 1)])
    with pytest.raises(ValueError):
        build_index("ACGT", [("", 0, 4)])
    index = build_index("ACGTACGT", [("r1", 0, 3), ("r2", 3, 5)])
    assert [r.name for r in index.records] == ["r1", "r2"]
    check_index(index)


def test_check_index_catches_tampering():
    index = build_index(random_dna(random.Random(34), 150))
    broken = FmIndex(
        n=index.n,
        c=index.c,
        buckets=(
            index.buckets[0],
            index.buckets[1].__class__(base=(0, 0, 0, 0), chars=index.buckets[1].chars),
        ),
        sentinel_row=index.sentinel_row,
        sa_samples=index.sa_samples,
        records=index.records,
    )
    with pytest.raises(ValueError, match="telescoping"):
        check_index(broken)
    broken = FmIndex(
        n=index.n,
        c=(0, 1, 2, 3, 5),
        buckets=index.buckets,
        sentinel_row=index.sentinel_row,
        sa_samples=index.sa_samples,
        records=index.records,
    )
    with pytest.raises(ValueError):
        check_index(broken)


def test_final_bucket_padding_is_zero():
    # 128 chars + terminator: second bucket holds one real character
    text = random_dna(random.Random(35), BUCKET_CHARS)
    index = build_index(text)
    assert len(index.buckets) == 2
    tail = index.buckets[1]
    assert len(tail.chars) == BUCKET_BYTES
    assert set(tail.chars[1:]) == {0}
    check_index(index)
