"""Online LZ77 parsing over a growing index of the reversed prefix.

After reading ``T[1..j]`` the index holds ``U = T[j] T[j-1] .. T[1] END``.  The
current phrase ``T[i..j]`` read backwards is a prefix of suffixes of ``U``, so
extending the phrase by one symbol is one backward step.  End-anchored
positions in ``U`` coincide with forward positions in ``T``, so the SA value
kept at the head of the interval converts directly into a source position.

Source convention: among the earlier occurrences of the phrase body the parser
reports the one whose reversed prefix ``T[t] .. T[1] END`` is lexicographically
smallest (``t`` the occurrence's last position), i.e. the toehold one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import Finalized, InconsistentEffects, MissingSentinel
from .toehold import AugmentedRlbwt
from .text import END, is_special, record_of, sentinel
from .varint import read_svarint, read_uvarint, write_svarint, write_uvarint


@dataclass(frozen=True)
class Lz77Phrase:
    source: int | None   # 1-based start of an earlier occurrence, None if novel
    length: int          # including the mismatch symbol
    mismatch: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("phrase length must be positive")
        if (self.source is None) != (self.length == 1):
            raise ValueError("source is absent exactly for single-symbol phrases")


class Lz77Parser:
    """Feed symbols left to right; a phrase comes out when the match breaks."""

    def __init__(self, seed: int = 0x5EED):
        self.index = AugmentedRlbwt(seed)
        self.index.prepend(END)
        self.j = 0              # symbols consumed
        self.start = 1          # current phrase start
        self.m = 0              # matched length of the current phrase
        # interval of the reversed phrase in the BWT before the latest
        # prepend, and the end-anchored SA value at its head
        self._lo = self._hi = 0
        self._sa = 0
        self._kp = 0            # row of the newest suffix
        self._last: int | None = None
        self.finalized = False

    def feed(self, c: int) -> Lz77Phrase | None:
        if self.finalized:
            raise Finalized("parser already finalized")
        idx = self.index
        if self.m == 0:
            lo, hi = 1, idx.n
            sa = idx.runs.run_at(1)[0].head_sa
        else:
            # occurrences ending at the newest position join the interval
            kp = self._kp
            if not self._lo <= kp <= self._hi + 1:
                raise InconsistentEffects("newest suffix fell outside the tracked interval")
            lo, hi = self._lo, self._hi + 1
            sa = self._sa
            if kp == lo:
                sa = idx.n - 1
        out = None
        nlo, nhi, nsa = idx._step_e(lo, hi, sa, c)
        if nsa is None:
            src = self._sa - self.m + 1 if self.m else None
            out = Lz77Phrase(src, self.m + 1, c)
            self.m = 0
            self.start = self.j + 2
        else:
            self._lo, self._hi, self._sa = nlo, nhi, nsa
            self.m += 1
        _, self._kp = idx.prepend(c)
        self.j += 1
        self._last = c
        return out

    def finalize(self) -> None:
        if self.finalized:
            return
        if self._last is None or not is_special(self._last):
            raise MissingSentinel("text must end with a sentinel before finalizing")
        if self.m:
            raise InconsistentEffects("open phrase after a sentinel")
        self.finalized = True


def parse(symbols: Iterable[int], seed: int = 0x5EED) -> list[Lz77Phrase]:
    p = Lz77Parser(seed)
    out = [ph for ph in map(p.feed, symbols) if ph is not None]
    p.finalize()
    return out


def parse_iter(symbols: Iterable[int], seed: int = 0x5EED) -> Iterator[Lz77Phrase]:
    p = Lz77Parser(seed)
    for c in symbols:
        ph = p.feed(c)
        if ph is not None:
            yield ph
    p.finalize()


def decode(phrases: Iterable[Lz77Phrase]) -> list[int]:
    out: list[int] = []
    for ph in phrases:
        if ph.source is not None:
            s = ph.source - 1
            if s < 0 or s >= len(out):
                raise ValueError(f"phrase source {ph.source} out of range")
            for k in range(ph.length - 1):   # sources may overlap the phrase
                out.append(out[s + k])
        out.append(ph.mismatch)
    return out


# -- serialization ---------------------------------------------------------

def _sym_field(c: int) -> str:
    return f"${record_of(c)}" if is_special(c) else str(c)


def _parse_sym(field: str) -> int:
    if field.startswith("$"):
        return sentinel(int(field[1:]))
    v = int(field)
    if not 0 <= v <= 255:
        raise ValueError(f"mismatch byte out of range: {v}")
    return v


def to_tsv(phrases: Iterable[Lz77Phrase]) -> str:
    """One ``source<TAB>length<TAB>mismatch`` row per phrase; source 0 means none."""
    return "".join(f"{ph.source or 0}\t{ph.length}\t{_sym_field(ph.mismatch)}\n" for ph in phrases)


def from_tsv(data: str) -> list[Lz77Phrase]:
    out = []
    for line in data.splitlines():
        if not line.strip():
            continue
        src, length, sym = line.split("\t")
        out.append(Lz77Phrase(int(src) or None, int(length), _parse_sym(sym)))
    return out


MAGIC = b"RZ77"


def to_binary(phrases: Iterable[Lz77Phrase]) -> bytes:
    buf = bytearray(MAGIC)
    for ph in phrases:
        write_uvarint(buf, ph.source or 0)
        write_uvarint(buf, ph.length)
        write_svarint(buf, ph.mismatch)
    return bytes(buf)


def from_binary(data: bytes) -> list[Lz77Phrase]:
    if data[:4] != MAGIC:
        raise ValueError("not an LZ77 phrase stream")
    out = []
    pos = 4
    while pos < len(data):
        src, pos = read_uvarint(data, pos)
        length, pos = read_uvarint(data, pos)
        sym, pos = read_svarint(data, pos)
        out.append(Lz77Phrase(src or None, length, sym))
    return out
