"""Independent reference implementations used to cross-check the package."""

from __future__ import annotations

import random


def random_dna(rng: random.Random, n: int) -> str:
    return "".join(rng.choice("ACGT") for _ in range(n))


def random_bucket(rng: random.Random) -> bytes:
    return bytes(rng.getrandbits(8) for _ in range(32))


def scan_positions(text: str, pattern: str) -> list[int]:
    """Every start position of pattern in text, by direct scanning."""
    out = []
    start = text.find(pattern)
    while start != -1:
        out.append(start)
        start = text.find(pattern, start + 1)
    return out


def hamming_positions(text: str, pattern: str, max_diff: int) -> list[int]:
    """Positions whose equal-length window is within max_diff substitutions."""
    m = len(pattern)
    out = []
    for pos in range(len(text) - m + 1):
        diffs = 0
        for a, b in zip(pattern, text[pos : pos + m]):
            if a != b:
                diffs += 1
                if diffs > max_diff:
                    break
        if diffs <= max_diff:
            out.append(pos)
    return out


def min_anchored_edit_distance(pattern: str, window: str, band: int) -> int:
    """Min edit distance from pattern to any window prefix of plausible length.

    Both strings anchored at their starts; banded at `band`, so any
    distance above it comes back as band + 1.  Prefix lengths considered
    are len(pattern) +- band, clipped to the window.
    """
    m, w = len(pattern), len(window)
    inf = band + 1
    prev = [j if j <= band else inf for j in range(w + 1)]
    for i in range(1, m + 1):
        cur = [i if i <= band else inf] + [inf] * w
        lo = max(1, i - band)
        hi = min(w, i + band)
        for j in range(lo, hi + 1):
            cost = prev[j - 1] + (pattern[i - 1] != window[j - 1])
            if prev[j] + 1 < cost:
                cost = prev[j] + 1
            if cur[j - 1] + 1 < cost:
                cost = cur[j - 1] + 1
            cur[j] = cost if cost < inf else inf
        prev = cur
    lo = max(0, m - band)
    hi = min(w, m + band)
    return min(prev[lo : hi + 1], default=inf)


def bwt_prefix_counts(bwt: str, symbol_char: str, k: int) -> int:
    """Occurrences of symbol_char in bwt[0..k] by direct counting."""
    return bwt[: k + 1].count(symbol_char)
