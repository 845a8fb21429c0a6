"""Brute-force reference implementations.

Everything here works on plain lists of codes by direct suffix comparison and
exhaustive search.  Nothing is shared with the index code, so the two can be
checked against each other.
"""
from __future__ import annotations

from typing import Sequence

from .text import END

Seq = Sequence[int]


def _as_str(*seqs: Seq) -> list[str]:
    """Map codes to characters (consistently across ``seqs``) for fast substring search."""
    table: dict[int, str] = {}
    out = []
    for seq in seqs:
        chars = []
        for c in seq:
            ch = table.get(c)
            if ch is None:
                ch = table[c] = chr(0x100 + len(table))
            chars.append(ch)
        out.append("".join(chars))
    return out


def naive_sa(T: Seq) -> list[int]:
    """1-based suffix array by comparison sort (the text ends with a unique minimal-enough sentinel)."""
    T = list(T)
    return [i + 1 for i in sorted(range(len(T)), key=lambda i: T[i:])]


def naive_bwt(T: Seq) -> list[int]:
    T = list(T)
    return [T[s - 2] if s > 1 else T[-1] for s in naive_sa(T)]


def run_count(seq: Seq) -> int:
    return sum(1 for i in range(len(seq)) if i == 0 or seq[i] != seq[i - 1])


def naive_occurrences(T: Seq, P: Seq) -> list[int]:
    T, P = list(T), list(P)
    m = len(P)
    return [i + 1 for i in range(len(T) - m + 1) if T[i:i + m] == P]


def naive_boundaries(T: Seq) -> list[tuple[int, int]]:
    """Pairs ``(SA[k], SA[k+1])`` at every run boundary of the BWT, sorted by the first value."""
    sa = naive_sa(T)
    bwt = naive_bwt(T)
    return sorted((sa[k], sa[k + 1]) for k in range(len(bwt) - 1) if bwt[k] != bwt[k + 1])


def lcp(a: Seq, b: Seq) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def naive_lcp(T: Seq) -> list[int]:
    """``L[i]`` = LCP of the suffixes at SA[i-1] and SA[i] (0 for i = 1), 0-based list."""
    T = list(T)
    sa = naive_sa(T)
    return [0] + [lcp(T[sa[i - 1] - 1:], T[sa[i] - 1:]) for i in range(1, len(sa))]


# -- LZ77 -------------------------------------------------------------------

def naive_lz77(T: Seq) -> list[tuple[int | None, int, int]]:
    """Greedy parse as ``(source, length, mismatch)`` triples.

    The body of each phrase is the longest prefix of the remaining text with an
    earlier start; among the earliest-possible candidates the source is the one
    whose reversed prefix ``T[t] .. T[1] END`` is smallest, ``t`` being the last
    position of the occurrence.
    """
    T = list(T)
    (U,) = _as_str(T)
    n = len(T)
    out = []
    i = 0
    while i < n:
        m = 0
        # an occurrence of length m+1 starting before i lies inside U[:i+m]
        while i + m + 1 < n and U.find(U[i:i + m + 1], 0, i + m) != -1:
            m += 1
        if m == 0:
            out.append((None, 1, T[i]))
        else:
            body = U[i:i + m]
            starts = [s for s in range(i) if U.startswith(body, s)]
            best = min(starts, key=lambda s: T[s + m - 1::-1] + [END])
            out.append((best + 1, m + 1, T[i + m]))
        i += m + 1
    return out


def lz77_decode(phrases) -> list[int]:
    out: list[int] = []
    for src, length, c in phrases:
        for k in range(length - 1):
            out.append(out[src - 1 + k])
        out.append(c)
    return out


# -- matching statistics ----------------------------------------------------

def naive_ms(S: Seq, T: Seq) -> tuple[list[int], list[int]]:
    """For each ``i`` the longest ``S[i..]`` prefix occurring in ``T`` and its leftmost position.

    Positions whose symbol does not occur get ``(0, 0)``.
    """
    A, B = _as_str(S, T)
    ps, ls = [], []
    for i in range(len(A)):
        k = 0
        while i + k < len(A) and A[i:i + k + 1] in B:
            k += 1
        ps.append(B.find(A[i:i + k]) + 1 if k else 0)
        ls.append(k)
    return ps, ls


def naive_mems(S: Seq, T: Seq, min_len: int = 1) -> list[tuple[int, int]]:
    """Substrings of S (start, length) that occur in T and extend in neither direction."""
    A, B = _as_str(S, T)
    out = []
    for a in range(len(A)):
        for b in range(a + 1, len(A) + 1):
            if A[a:b] not in B:
                break
            if b - a < min_len:
                continue
            left = a > 0 and A[a - 1:b] in B
            right = b < len(A) and A[a:b + 1] in B
            if not left and not right:
                out.append((a + 1, b - a))
    return out


def naive_minimal_absent(S: Seq, T: Seq) -> list[tuple[int, int]]:
    """Substrings of S (start, length) absent from T whose two maximal proper substrings occur."""
    A, B = _as_str(S, T)
    out = []
    for a in range(len(A)):
        for b in range(a + 1, len(A) + 1):
            if A[a:b] in B:
                continue
            if b - a == 1 or (A[a + 1:b] in B and A[a:b - 1] in B):
                out.append((a + 1, b - a))
            break   # every longer substring from a contains this one
    return out
