"""Binary index files.

Layout: ``b"RRIX"``, a version byte, a flags byte, then seven sections, each
prefixed by its byte length as u64.  All fixed-width integers are little
endian.  SA values are stored end-anchored, the same way the index keeps them.

==========  ===============================================================
alphabet    u32 count, then one i64 per symbol code, ascending
runs        u64 n, u64 r, then per run: varint alphabet slot, varint length
hole        u64 row of the whole text
heads       r x u64 head samples
tails       r x u64 tail samples
boundary    u64 count, then (u64 x, u64 y) pairs, ascending by x
thresholds  u64 count, then (u64 run index, u64 row) pairs
==========  ===============================================================
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

from .errors import IndexFormatError
from .ms import FrozenIndex, compute_thresholds, lcp_array
from .oracle import naive_bwt, naive_sa
from .rindex import DynamicIndex
from .text import END, is_special
from .varint import read_uvarint, write_uvarint

MAGIC = b"RRIX"
VERSION = 1
HAS_BOUNDARY = 1
HAS_THRESHOLDS = 2
REVERSED = 4


@dataclass
class IndexImage:
    """Everything an index file holds, in file order."""

    flags: int
    runs: list[tuple[int, int]]
    hole: int
    heads: list[int]
    tails: list[int]
    boundary: list[tuple[int, int]] = field(default_factory=list)
    thresholds: list[tuple[int, int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return sum(ln for _, ln in self.runs)

    @property
    def r(self) -> int:
        return len(self.runs)

    @property
    def reversed(self) -> bool:
        return bool(self.flags & REVERSED)

    @property
    def alphabet(self) -> list[int]:
        return sorted({s for s, _ in self.runs})


# -- images from live structures ------------------------------------------------

def image_of(idx: DynamicIndex, reversed: bool = False) -> IndexImage:
    runs = list(idx.runs.runs())
    return IndexImage(
        flags=HAS_BOUNDARY | (REVERSED if reversed else 0),
        runs=[(run.sym, run.length) for run in runs],
        hole=idx.hole,
        heads=[run.head_sa for run in runs],
        tails=[run.tail_sa for run in runs],
        boundary=sorted((-k, ey) for k, ey in idx.boundary),
    )


def index_of(img: IndexImage, seed: int = 0x5EED) -> DynamicIndex:
    if not img.flags & HAS_BOUNDARY:
        raise IndexFormatError("file carries no boundary set; not a dynamic index")
    idx = DynamicIndex(seed)
    for (sym, length), h, t in zip(img.runs, img.heads, img.tails):
        run = idx.runs.append_run(sym, length)
        run.head_sa, run.tail_sa = h, t
    idx.hole = img.hole
    idx.terminal = idx.runs.symbol_at(img.hole)
    for ex, ey in img.boundary:
        idx.boundary.insert(-ex, ey)
    return idx


def frozen_image(f: FrozenIndex) -> IndexImage:
    n = f.n
    hole = _hole_row(f)
    thresholds = []
    for sym, thr in f.thresholds.items():
        for run, row in zip(f._runs_of[sym], thr):
            thresholds.append((run, row))
    return IndexImage(
        flags=HAS_THRESHOLDS,
        runs=list(zip(f.run_syms, f.run_lens)),
        hole=hole,
        heads=[n - s for s in f.head_sa],
        tails=[n - s for s in f.tail_sa],
        thresholds=sorted(thresholds),
    )


def _hole_row(f: FrozenIndex) -> int:
    # the terminal closes the text, so its singleton run sits at the row of SA = 1
    for head, sym in zip(f.run_heads, f.run_syms):
        if sym == f.text[-1]:
            return head
    raise IndexFormatError("no terminal run")


def frozen_of(img: IndexImage, text: list[int]) -> FrozenIndex:
    n = img.n
    heads = []
    pos = 1
    for _, ln in img.runs:
        heads.append(pos)
        pos += ln
    thresholds: dict[int, list[int]] = {}
    for run, row in sorted(img.thresholds):
        thresholds.setdefault(img.runs[run][0], []).append(row)
    for sym in {s for s, _ in img.runs}:
        if not is_special(sym):
            thresholds.setdefault(sym, [])
    return FrozenIndex(text, [s for s, _ in img.runs], heads, [ln for _, ln in img.runs],
                       [n - e for e in img.heads], [n - e for e in img.tails], thresholds)


def offline_image(text: list[int], reversed: bool = False, thresholds: bool = False) -> IndexImage:
    """Image computed from a brute-force suffix sort instead of online construction."""
    n = len(text)
    sa = naive_sa(text)
    bwt = naive_bwt(text)
    runs: list[tuple[int, int]] = []
    heads: list[int] = []
    tails: list[int] = []
    for row, (c, s) in enumerate(zip(bwt, sa), 1):
        if runs and runs[-1][0] == c:
            runs[-1] = (c, runs[-1][1] + 1)
            tails[-1] = n - s
        else:
            runs.append((c, 1))
            heads.append(n - s)
            tails.append(n - s)
    hole = sa.index(1) + 1
    boundary = sorted((n - sa[k], n - sa[k + 1]) for k in range(n - 1) if bwt[k] != bwt[k + 1])
    img = IndexImage(HAS_BOUNDARY | (REVERSED if reversed else 0), runs, hole, heads, tails, boundary)
    if thresholds:
        thr = compute_thresholds(runs, lcp_array(text, sa))
        slots: dict[int, list[int]] = {}
        for i, (c, _) in enumerate(runs):
            slots.setdefault(c, []).append(i)
        img.thresholds = sorted((run, row) for c, rows in thr.items() for run, row in zip(slots[c], rows))
        img.flags |= HAS_THRESHOLDS
    return img


# -- bytes ------------------------------------------------------------------------

def _section(out: bytearray, payload: bytes) -> None:
    out += struct.pack("<Q", len(payload))
    out += payload


def dumps(img: IndexImage) -> bytes:
    alphabet = img.alphabet
    slot = {c: i for i, c in enumerate(alphabet)}
    out = bytearray(MAGIC)
    out += bytes([VERSION, img.flags])
    _section(out, struct.pack("<I", len(alphabet)) + b"".join(struct.pack("<q", c) for c in alphabet))
    runs = bytearray(struct.pack("<QQ", img.n, img.r))
    for sym, ln in img.runs:
        write_uvarint(runs, slot[sym])
        write_uvarint(runs, ln)
    _section(out, bytes(runs))
    _section(out, struct.pack("<Q", img.hole))
    _section(out, struct.pack(f"<{img.r}Q", *img.heads))
    _section(out, struct.pack(f"<{img.r}Q", *img.tails))
    _section(out, struct.pack("<Q", len(img.boundary)) +
             b"".join(struct.pack("<QQ", x, y) for x, y in img.boundary))
    _section(out, struct.pack("<Q", len(img.thresholds)) +
             b"".join(struct.pack("<QQ", a, b) for a, b in img.thresholds))
    return bytes(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise IndexFormatError("truncated index file")
        chunk = self.data[self.pos:self.pos + k]
        self.pos += k
        return chunk

    def section(self) -> bytes:
        (length,) = struct.unpack("<Q", self.take(8))
        return self.take(length)


def _unpack(fmt: str, payload: bytes, what: str) -> tuple:
    try:
        if struct.calcsize(fmt) != len(payload):
            raise IndexFormatError(f"{what} section has the wrong length")
        return struct.unpack(fmt, payload)
    except struct.error:
        raise IndexFormatError(f"{what} section is malformed") from None


def loads(data: bytes) -> IndexImage:
    rd = _Reader(data)
    if rd.take(4) != MAGIC:
        raise IndexFormatError("bad magic: not an index file")
    version, flags = rd.take(2)
    if version != VERSION:
        raise IndexFormatError(f"unsupported format version {version}")
    if flags & ~(HAS_BOUNDARY | HAS_THRESHOLDS | REVERSED):
        raise IndexFormatError(f"unknown flag bits {flags:#x}")

    sec = rd.section()
    if len(sec) < 4:
        raise IndexFormatError("alphabet section too short")
    (sigma,) = struct.unpack("<I", sec[:4])
    alphabet = list(_unpack(f"<{sigma}q", sec[4:], "alphabet"))
    if alphabet != sorted(set(alphabet)):
        raise IndexFormatError("alphabet not strictly ascending")

    sec = rd.section()
    if len(sec) < 16:
        raise IndexFormatError("run section too short")
    n, r = struct.unpack("<QQ", sec[:16])
    runs = []
    pos = 16
    try:
        for _ in range(r):
            s, pos = read_uvarint(sec, pos)
            ln, pos = read_uvarint(sec, pos)
            if s >= sigma or ln == 0:
                raise IndexFormatError("bad run entry")
            runs.append((alphabet[s], ln))
    except ValueError as exc:
        raise IndexFormatError(str(exc)) from None
    if pos != len(sec) or sum(ln for _, ln in runs) != n:
        raise IndexFormatError("run section inconsistent with declared n")
    if any(a[0] == b[0] for a, b in zip(runs, runs[1:])):
        raise IndexFormatError("adjacent runs share a symbol")

    (hole,) = _unpack("<Q", rd.section(), "hole")
    heads = list(_unpack(f"<{r}Q", rd.section(), "head sample"))
    tails = list(_unpack(f"<{r}Q", rd.section(), "tail sample"))

    sec = rd.section()
    (nb,) = _unpack("<Q", sec[:8], "boundary count")
    flat = _unpack(f"<{2 * nb}Q", sec[8:], "boundary")
    boundary = list(zip(flat[0::2], flat[1::2]))

    sec = rd.section()
    (nt,) = _unpack("<Q", sec[:8], "threshold count")
    flat = _unpack(f"<{2 * nt}Q", sec[8:], "threshold")
    thresholds = list(zip(flat[0::2], flat[1::2]))
    if rd.pos != len(data):
        raise IndexFormatError("trailing bytes after the last section")

    img = IndexImage(flags, runs, hole, heads, tails, boundary, thresholds)
    _validate(img)
    return img


def _validate(img: IndexImage) -> None:
    n, r = img.n, img.r
    if n == 0:
        raise IndexFormatError("empty index")
    if not 1 <= img.hole <= n:
        raise IndexFormatError("hole outside the text")
    pos = 1
    terminal = None
    for sym, ln in img.runs:
        if pos <= img.hole < pos + ln:
            terminal = sym
            if ln != 1 or not is_special(sym):
                raise IndexFormatError("hole is not a singleton sentinel run")
        pos += ln
    if sum(ln for sym, ln in img.runs if sym == terminal) != 1:
        raise IndexFormatError("terminal symbol occurs more than once")
    if img.reversed and terminal != END:
        raise IndexFormatError("reversed index must end with the END marker")
    if any(not 0 <= e < n for e in img.heads + img.tails):
        raise IndexFormatError("sample outside the text")
    if img.flags & HAS_BOUNDARY:
        if len(img.boundary) != r - 1:
            raise IndexFormatError("boundary set size differs from r - 1")
        xs = [x for x, _ in img.boundary]
        if xs != sorted(set(xs)):
            raise IndexFormatError("boundary keys not strictly ascending")
    elif img.boundary:
        raise IndexFormatError("boundary pairs present but flag unset")
    if not img.flags & HAS_THRESHOLDS and img.thresholds:
        raise IndexFormatError("thresholds present but flag unset")
    if any(not 0 <= a < r or not 1 <= b <= n for a, b in img.thresholds):
        raise IndexFormatError("threshold entry out of range")


def save(path, img: IndexImage) -> None:
    with open(path, "wb") as fh:
        fh.write(dumps(img))


def load(path) -> IndexImage:
    with open(path, "rb") as fh:
        return loads(fh.read())
