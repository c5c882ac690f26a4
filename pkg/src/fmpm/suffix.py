"""Suffix array construction and the Burrows-Wheeler transform."""

from __future__ import annotations

from typing import Sequence

from .alphabet import TERMINATOR, encode


def suffix_array_naive(reference: str) -> list[int]:
    """Comparison-sort oracle: sort all suffixes of reference + terminator.

    Materializes every suffix, so keep inputs small (a few thousand chars).
    ASCII ordering of '$' < 'A' < 'C' < 'G' < 'T' matches the code order.
    """
    _validate(reference)
    text = reference.upper() + TERMINATOR
    return sorted(range(len(text)), key=lambda i: text[i:])


def build_suffix_array(reference: str) -> list[int]:
    """Suffix array of reference + terminator via prefix doubling.

    O(n log^2 n); agrees with suffix_array_naive on every input (checked by
    the test suite on references up to a few thousand characters).
    """
    codes = _validate(reference)
    # terminator ranks below every symbol
    rank = [c + 1 for c in codes]
    rank.append(0)
    n = len(rank)
    sa = sorted(range(n), key=rank.__getitem__)
    tmp = [0] * n
    width = 1
    while True:
        key = [
            (rank[i], rank[i + width] if i + width < n else -1) for i in range(n)
        ]
        sa.sort(key=key.__getitem__)
        tmp[sa[0]] = 0
        for j in range(1, n):
            tmp[sa[j]] = tmp[sa[j - 1]] + (key[sa[j]] != key[sa[j - 1]])
        rank, tmp = tmp, rank
        if rank[sa[-1]] == n - 1:
            return sa
        width <<= 1


def bwt_from_sa(reference: str, sa: Sequence[int]) -> tuple[str, int]:
    """Burrows-Wheeler transform of reference + terminator.

    Row i holds the character preceding suffix sa[i], the terminator for
    the row whose suffix starts at position 0.  Returns the transform and
    the row index holding the terminator.
    """
    text = reference.upper()
    if len(sa) != len(text) + 1:
        raise ValueError(
            f"suffix array length {len(sa)} does not match reference length {len(text)}"
        )
    out = []
    sentinel_row = -1
    for i, pos in enumerate(sa):
        if pos == 0:
            out.append(TERMINATOR)
            sentinel_row = i
        else:
            out.append(text[pos - 1])
    if sentinel_row < 0:
        raise ValueError("suffix array holds no entry for position 0")
    return "".join(out), sentinel_row


def _validate(reference: str) -> list[int]:
    if not reference:
        raise ValueError("reference is empty")
    return encode(reference)
