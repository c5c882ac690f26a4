"""2-bit DNA alphabet: symbol codes, text encoding, packed storage."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

SYMBOLS = "ACGT"
A, C, G, T = 0, 1, 2, 3

# Code order matches lexicographic order (A < C < G < T), which the
# suffix sort and the C table both rely on.
CODE_OF = {ch: i for i, ch in enumerate(SYMBOLS)}
CODE_OF.update({ch.lower(): i for i, ch in enumerate(SYMBOLS)})

# End-of-text marker, lexicographically below every symbol (ASCII '$' < 'A').
TERMINATOR = "$"

CHARS_PER_BYTE = 4


class AlphabetError(ValueError):
    """A character outside A/C/G/T (either case) was encountered."""


def encode(text: str) -> list[int]:
    """Map a DNA string to symbol codes, rejecting anything outside ACGT."""
    codes = []
    get = CODE_OF.get
    for i, ch in enumerate(text):
        code = get(ch)
        if code is None:
            raise AlphabetError(
                f"invalid character {ch!r} at position {i}; expected one of ACGT"
            )
        codes.append(code)
    return codes


def decode(codes: Iterable[int]) -> str:
    return "".join(SYMBOLS[c] for c in codes)


def is_dna(text: str) -> bool:
    """True when every character of `text` is A/C/G/T (either case)."""
    return all(ch in CODE_OF for ch in text)


@dataclass(frozen=True)
class PackedText:
    """2-bit packed character sequence, four characters per byte.

    Character j occupies bits [2*(j % 4), 2*(j % 4) + 1] of byte j // 4,
    so earlier characters sit in lower-order bits.  Unused trailing fields
    of the last byte are zero.
    """

    data: bytes
    length: int

    def __post_init__(self) -> None:
        expected = (self.length + CHARS_PER_BYTE - 1) // CHARS_PER_BYTE
        if len(self.data) != expected:
            raise ValueError(
                f"packed size {len(self.data)} does not match length {self.length}"
            )

    def char_code(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(f"position {j} out of range for length {self.length}")
        return (self.data[j >> 2] >> ((j & 3) << 1)) & 3


def pack_codes(codes: Sequence[int], pad_to: int | None = None) -> bytes:
    """Pack 2-bit symbol codes into bytes, low-order fields first.

    `pad_to` extends the result with zero bytes up to a fixed block size.
    """
    out = bytearray((len(codes) + CHARS_PER_BYTE - 1) // CHARS_PER_BYTE)
    for j, code in enumerate(codes):
        out[j >> 2] |= (code & 3) << ((j & 3) << 1)
    if pad_to is not None:
        if len(out) > pad_to:
            raise ValueError(f"{len(codes)} characters do not fit in {pad_to} bytes")
        out.extend(b"\x00" * (pad_to - len(out)))
    return bytes(out)


def pack_2bit(chars: str) -> PackedText:
    """Pack a DNA string; see PackedText for the bit layout."""
    return PackedText(data=pack_codes(encode(chars)), length=len(chars))


def unpack_2bit(packed: PackedText) -> str:
    return "".join(SYMBOLS[packed.char_code(j)] for j in range(packed.length))
