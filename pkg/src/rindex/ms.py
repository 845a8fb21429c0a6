"""Matching statistics, MEMs and minimal absent substrings over a static index.

The frozen index is a forward-orientation RLBWT with head/tail SA samples, plus
one threshold per pair of consecutive runs of the same symbol.  Inside the gap
between such runs, rows up to the threshold share at least as long a prefix
with the earlier run's last suffix as with the later run's first suffix; rows
past it lean to the later run.  Ties go to the earlier run.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import SymbolAbsent, SymbolAbsentFromText, UnterminatedText
from .rindex import DynamicIndex
from .text import Text, is_special


class Side(str, Enum):
    PRECEDING = "preceding"
    FOLLOWING = "following"


def lcp_array(text: Sequence[int], sa: Sequence[int]) -> list[int]:
    """Kasai et al.: ``L[i]`` = LCP of rows ``i-1`` and ``i`` (1-based rows, ``L[1] = 0``).

    Returned list is indexed by row, with a dummy slot at index 0.
    """
    n = len(text)
    rank = [0] * (n + 1)
    for row, s in enumerate(sa, 1):
        rank[s] = row
    L = [0] * (n + 1)
    h = 0
    for s in range(1, n + 1):
        row = rank[s]
        if row > 1:
            s2 = sa[row - 2]
            while s + h <= n and s2 + h <= n and text[s + h - 1] == text[s2 + h - 1]:
                h += 1
            L[row] = h
            if h:
                h -= 1
        else:
            h = 0
    return L


def run_layout(bwt_runs: Sequence[tuple[int, int]]) -> list[tuple[int, int, int]]:
    """``(symbol, head, tail)`` per run."""
    out = []
    pos = 1
    for sym, length in bwt_runs:
        out.append((sym, pos, pos + length - 1))
        pos += length
    return out


def compute_thresholds(bwt_runs: Sequence[tuple[int, int]], lcp: Sequence[int]) -> dict[int, list[int]]:
    """Threshold row per consecutive same-symbol run pair, keyed by symbol.

    For the gap between a run ending at ``h`` and the next run of the same
    symbol starting at ``j`` the threshold is the largest ``i`` in ``[h, j-1]``
    whose suffix shares at least as much with row ``h`` as with row ``j``.
    """
    by_sym: dict[int, list[tuple[int, int]]] = {}
    for sym, head, tail in run_layout(bwt_runs):
        by_sym.setdefault(sym, []).append((head, tail))
    out: dict[int, list[int]] = {}
    for sym, spans in by_sym.items():
        if is_special(sym):
            continue
        thr = []
        for (_, h), (j, _) in zip(spans, spans[1:]):
            # toward j: min(L[i+1..j]) for i in [h..j-1]
            width = j - h
            to_j = [0] * width
            m = lcp[j]
            for i in range(j - 1, h - 1, -1):
                to_j[i - h] = m
                if i > h:
                    m = min(m, lcp[i])
            best = h
            to_h = None   # row h itself matches itself fully
            for i in range(h + 1, j):
                to_h = lcp[i] if to_h is None else min(to_h, lcp[i])
                if to_h >= to_j[i - h]:
                    best = i
            thr.append(best)
        out[sym] = thr
    return out


@dataclass
class MatchingStatistics:
    p: list[int]
    ls: list[int]
    comparisons: int = 0

    def __len__(self) -> int:
        return len(self.p)

    def rows(self) -> list[tuple[int, int, int]]:
        return [(i + 1, p, l) for i, (p, l) in enumerate(zip(self.p, self.ls))]


@dataclass
class FrozenIndex:
    """Static forward index: runs, samples, thresholds and the text itself."""

    text: list[int]
    run_syms: list[int]
    run_heads: list[int]
    run_lens: list[int]
    head_sa: list[int]
    tail_sa: list[int]
    thresholds: dict[int, list[int]]
    C: dict[int, int] = field(default_factory=dict)
    _heads_of: dict[int, list[int]] = field(default_factory=dict, repr=False)
    _runs_of: dict[int, list[int]] = field(default_factory=dict, repr=False)
    _cum_of: dict[int, list[int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        totals: dict[int, int] = {}
        for idx, (sym, head, length) in enumerate(zip(self.run_syms, self.run_heads, self.run_lens)):
            self._heads_of.setdefault(sym, []).append(head)
            self._runs_of.setdefault(sym, []).append(idx)
            self._cum_of.setdefault(sym, []).append(totals.get(sym, 0))
            totals[sym] = totals.get(sym, 0) + length
        acc = 0
        for sym in sorted(totals):
            self.C[sym] = acc
            acc += totals[sym]

    # -- construction --------------------------------------------------------

    @classmethod
    def freeze(cls, source: Text | DynamicIndex | Sequence[int], seed: int = 0x5EED) -> FrozenIndex:
        if isinstance(source, DynamicIndex):
            idx = source
            if idx.terminal is None or idx.n == 0:
                raise UnterminatedText("empty index")
            text = idx.text()
        else:
            text = list(source.symbols if isinstance(source, Text) else source)
            if not text or not is_special(text[-1]):
                raise UnterminatedText("text must end with a sentinel")
            idx = DynamicIndex.from_text(text, seed)
        sa = idx.sa()
        pairs = idx.runs.run_pairs()
        heads = [h for _, h, _ in run_layout(pairs)]
        thresholds = compute_thresholds(pairs, lcp_array(text, sa))
        return cls(text, [s for s, _ in pairs], heads, [ln for _, ln in pairs],
                   idx.head_samples(), idx.tail_samples(), thresholds)

    # -- basic queries -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.text)

    @property
    def r(self) -> int:
        return len(self.run_syms)

    def access(self, i: int) -> int:
        return self.text[i - 1]

    def run_of(self, i: int) -> int:
        return bisect_right(self.run_heads, i) - 1

    def symbol_at(self, i: int) -> int:
        return self.run_syms[self.run_of(i)]

    def occurs(self, c: int) -> bool:
        return c in self._heads_of

    def rank(self, c: int, i: int) -> int:
        heads = self._heads_of.get(c)
        if not heads:
            return 0
        t = bisect_right(heads, i) - 1
        if t < 0:
            return 0
        run = self._runs_of[c][t]
        return self._cum_of[c][t] + min(self.run_lens[run], i - heads[t] + 1)

    def lf(self, i: int) -> int:
        c = self.symbol_at(i)
        return self.C[c] + self.rank(c, i)

    def query_threshold(self, i: int, c: int) -> Side:
        """Which neighbouring run of ``c`` is lexicographically closer to row ``i``."""
        heads = self._heads_of.get(c)
        if not heads:
            raise SymbolAbsent(f"symbol {c} does not occur")
        t = bisect_right(heads, i) - 1
        if t < 0:
            return Side.FOLLOWING
        if t == len(heads) - 1:
            return Side.PRECEDING
        return Side.PRECEDING if i <= self.thresholds[c][t] else Side.FOLLOWING

    # -- matching statistics -----------------------------------------------------

    def compute_ps(self, S: Sequence[int], strict: bool = False) -> list[int]:
        """Positions ``p`` right to left; absent symbols give 0 and restart the scan."""
        m = len(S)
        p = [0] * m
        q = 1
        sa = self.head_sa[0]
        for i in range(m - 1, -1, -1):
            c = S[i]
            if not self.occurs(c):
                if strict:
                    raise SymbolAbsentFromText(f"query symbol {c} at {i + 1} does not occur in the text")
                q, sa = 1, self.head_sa[0]
                continue
            run = self.run_of(q)
            if self.run_syms[run] != c:
                heads = self._heads_of[c]
                t = bisect_right(heads, q) - 1
                if self.query_threshold(q, c) is Side.PRECEDING:
                    target = self._runs_of[c][t]
                    q = self.run_heads[target] + self.run_lens[target] - 1
                    sa = self.tail_sa[target]
                else:
                    target = self._runs_of[c][t + 1]
                    q = self.run_heads[target]
                    sa = self.head_sa[target]
            p[i] = sa - 1
            q = self.C[c] + self.rank(c, q)
            sa -= 1
        return p

    def compute_ls(self, S: Sequence[int], p: Sequence[int]) -> tuple[list[int], int]:
        """Lengths from positions, reusing ``l[i-1] - 1``; returns the lengths and the comparison count."""
        m, n = len(S), self.n
        T = self.text
        ls = [0] * m
        prev = 1
        compares = 0
        for i in range(m):
            if p[i] == 0:
                ls[i] = prev = 0
                continue
            l = max(prev - 1, 0)
            a, b = i + l, p[i] - 1 + l
            while a < m and b < n:
                compares += 1
                if S[a] != T[b]:
                    break
                l += 1
                a += 1
                b += 1
            ls[i] = prev = l
        return ls, compares

    def matching_statistics(self, S: Sequence[int], strict: bool = False) -> MatchingStatistics:
        p = self.compute_ps(S, strict)
        ls, compares = self.compute_ls(S, p)
        return MatchingStatistics(p, ls, compares)


def mems(ms: MatchingStatistics, min_len: int = 1) -> list[tuple[int, int, int]]:
    """Left-maximal entries as ``(query_pos, text_pos, length)``."""
    out = []
    floor = max(1, min_len)
    for i, (p, l) in enumerate(zip(ms.p, ms.ls)):
        if l < floor:
            continue
        if i == 0 or ms.ls[i - 1] != l + 1:
            out.append((i + 1, p, l))
    return out


def minimal_absent(S: Sequence[int], ms: MatchingStatistics) -> list[tuple[int, int]]:
    """Minimal substrings of ``S`` absent from the text, as ``(start, length)``.

    ``S[a .. a+l_a]`` is absent by definition of ``l_a``; it is minimal exactly
    when ``S[a+1 .. a+l_a]`` occurs, i.e. when ``l_{a+1} >= l_a``.
    """
    m = len(S)
    ls = ms.ls
    if any(l == 0 for l in ls):
        a = ls.index(0)
        raise SymbolAbsentFromText(f"query symbol {S[a]} at {a + 1} does not occur in the text")
    out = []
    for a in range(m):
        l = ls[a]
        if a + l >= m:
            continue
        nxt = ls[a + 1] if a + 1 < m else 0
        if nxt >= l:
            out.append((a + 1, l + 1))
    return out
