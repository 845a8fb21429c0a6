"""Alphabet mapping, sentinel policy and record-structured text ingestion.

Internal codes are plain ints.  A regular byte keeps its own value as its code
(0..255), so the byte order is the code order.  Record sentinels are negative:
``sentinel(i) = i - 2**32`` for record ``i >= 1``, which places every sentinel
below every byte and orders sentinels by record number.  ``END`` sits below all
sentinels and terminates texts that carry no sentinel of their own (the
reversed-orientation index).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ByteNotInAlphabet, EmptyInput, OutOfBounds

SENTINEL_BASE = 1 << 32
END = -SENTINEL_BASE


def sentinel(record: int) -> int:
    if record < 1 or record >= SENTINEL_BASE:
        raise ValueError(f"record number out of range: {record}")
    return record - SENTINEL_BASE


def is_special(code: int) -> bool:
    """True for sentinels and the END marker."""
    return code < 0


def record_of(code: int) -> int:
    """Record number of a sentinel code (0 for END)."""
    return code + SENTINEL_BASE


def render(code: int) -> str:
    if code == END:
        return "^"
    if code < 0:
        return f"${record_of(code)}"
    return chr(code)


def render_all(codes: Iterable[int]) -> str:
    return "".join(render(c) for c in codes)


@dataclass(frozen=True)
class Alphabet:
    """Regular symbols (``None`` accepts every byte) plus per-record sentinels."""

    symbols: frozenset[int] | None = None

    @classmethod
    def of(cls, symbols: bytes | str) -> Alphabet:
        if isinstance(symbols, str):
            symbols = symbols.encode()
        return cls(frozenset(symbols))

    def code(self, byte: int, offset: int = 0) -> int:
        if self.symbols is not None and byte not in self.symbols:
            raise ByteNotInAlphabet(byte, offset)
        return byte

    def encode(self, data: bytes, offset: int = 0) -> list[int]:
        if self.symbols is None:
            return list(data)
        return [self.code(b, offset + i) for i, b in enumerate(data)]


@dataclass(frozen=True)
class Text:
    """A sentinel-terminated sequence of codes with its record boundaries.

    ``records`` holds the 1-based positions of the sentinels, ascending.
    """

    symbols: tuple[int, ...]
    records: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.symbols or not is_special(self.symbols[-1]):
            raise ValueError("text must end with a sentinel")

    @classmethod
    def from_records(cls, records: Sequence[bytes], alphabet: Alphabet | None = None,
                     first_record: int = 1) -> Text:
        alphabet = alphabet or Alphabet()
        symbols: list[int] = []
        ends: list[int] = []
        offset = 0
        for k, rec in enumerate(records):
            symbols.extend(alphabet.encode(rec, offset))
            symbols.append(sentinel(first_record + k))
            ends.append(len(symbols))
            offset += len(rec)
        if not symbols:
            raise EmptyInput("no records")
        return cls(tuple(symbols), tuple(ends))

    @classmethod
    def from_string(cls, s: str | bytes) -> Text:
        """Convenience: one record, sentinel(1) appended."""
        if isinstance(s, str):
            s = s.encode()
        return cls.from_records([s])

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def n(self) -> int:
        return len(self.symbols)

    def access(self, i: int) -> int:
        if not 1 <= i <= len(self.symbols):
            raise OutOfBounds(f"position {i} outside 1..{len(self.symbols)}")
        return self.symbols[i - 1]

    def decode(self) -> list[bytes]:
        out = []
        start = 0
        for end in self.records:
            out.append(bytes(self.symbols[start:end - 1]))
            start = end
        return out


def ingest(raw: bytes, format: str = "plain", alphabet: Alphabet | None = None,
           separator: int | None = None) -> Text:
    """Parse ``raw`` into a Text with one sentinel per record.

    ``plain`` takes the stream verbatim as a single record, or splits it on
    ``separator`` when one is given.  ``fasta-lite`` starts a record at every
    line beginning with ``>`` and concatenates the other lines with their line
    terminators removed.
    """
    if format == "plain":
        if separator is None:
            records = [raw] if raw else []
        else:
            records = [r for r in raw.split(bytes([separator])) if r]
    elif format in ("fasta-lite", "fasta"):
        records = _fasta_records(raw)
    else:
        raise ValueError(f"unknown input format {format!r}")
    if not records or any(not r for r in records):
        raise EmptyInput("input has no symbols" if not records else "input contains an empty record")
    return Text.from_records(records, alphabet)


def _fasta_records(raw: bytes) -> list[bytes]:
    records: list[bytearray] = []
    current: bytearray | None = None
    for line in raw.splitlines():
        if line.startswith(b">"):
            current = bytearray()
            records.append(current)
            continue
        if current is None:
            # sequence before any header forms its own record
            current = bytearray()
            records.append(current)
        current.extend(line)
    return [bytes(r) for r in records]
