"""LEB128-style variable-length integers."""
from __future__ import annotations


def write_uvarint(buf: bytearray, v: int) -> None:
    if v < 0:
        raise ValueError("unsigned varint cannot be negative")
    while True:
        b = v & 0x7F
        v >>= 7
        if v:
            buf.append(b | 0x80)
        else:
            buf.append(b)
            return


def read_uvarint(data: bytes, pos: int) -> tuple[int, int]:
    v = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise ValueError("truncated varint")
        b = data[pos]
        pos += 1
        v |= (b & 0x7F) << shift
        if not b & 0x80:
            return v, pos
        shift += 7
        if shift > 70:
            raise ValueError("varint too long")


def write_svarint(buf: bytearray, v: int) -> None:
    # zigzag
    write_uvarint(buf, (v << 1) if v >= 0 else ((-v << 1) - 1))


def read_svarint(data: bytes, pos: int) -> tuple[int, int]:
    u, pos = read_uvarint(data, pos)
    return (u >> 1) if not u & 1 else -((u + 1) >> 1), pos
