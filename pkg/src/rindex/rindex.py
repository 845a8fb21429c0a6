"""The dynamic r-index: counting and locating over a text that grows at the front.

Besides the run samples, the index keeps one pair per run boundary: the SA
values on both sides of it.  A predecessor query over the left values turns
``SA[k]`` into ``SA[k+1]`` in O(log r), which is all ``locate`` needs after
the toehold search has produced the SA value at the head of the interval.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from sortedcontainers import SortedDict

from .errors import InconsistentEffects, NoPredecessor
from .text import END, Text, is_special
from .toehold import AugmentedRlbwt


class BoundarySet:
    """Ordered map ``x -> y`` with inclusive predecessor search on ``x``."""

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        self._map = SortedDict()
        for x, y in pairs:
            self.insert(x, y)

    def __len__(self) -> int:
        return len(self._map)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._map.items())

    def __contains__(self, x: int) -> bool:
        return x in self._map

    def insert(self, x: int, y: int) -> None:
        if x in self._map:
            raise InconsistentEffects(f"boundary key {x} already present")
        self._map[x] = y

    def delete(self, x: int) -> None:
        try:
            del self._map[x]
        except KeyError:
            raise InconsistentEffects(f"boundary key {x} missing") from None

    def pred(self, p: int) -> tuple[int, int]:
        i = self._map.bisect_right(p)
        if i == 0:
            raise NoPredecessor(f"no boundary pair with key <= {p}")
        return self._map.peekitem(i - 1)


class DynamicIndex(AugmentedRlbwt):
    """r-index over a sentinel-terminated text, extended one symbol at a time.

    Boundary pairs are stored end-anchored with the key negated, so the front
    order predecessor becomes a plain predecessor on keys.
    """

    def __init__(self, seed: int = 0x5EED):
        super().__init__(seed)
        self.boundary = BoundarySet()

    @classmethod
    def from_text(cls, text: Text | Sequence[int], seed: int = 0x5EED) -> DynamicIndex:
        idx = cls(seed)
        idx.extend_text(text.symbols if isinstance(text, Text) else text)
        return idx

    @classmethod
    def reversed_of(cls, symbols: Sequence[int], seed: int = 0x5EED) -> DynamicIndex:
        """Index of ``reverse(symbols) + END``, built by reading ``symbols`` left to right."""
        idx = cls(seed)
        idx.prepend(END)
        for c in symbols:
            idx.prepend(c)
        return idx

    def _pair_add(self, ex: int, ey: int) -> None:
        self.boundary.insert(-ex, ey)

    def _pair_remove(self, ex: int) -> None:
        self.boundary.delete(-ex)

    def extend(self, c: int) -> None:
        self.prepend(c)

    # -- queries -----------------------------------------------------------

    def pred_B(self, p: int) -> tuple[int, int]:
        """Boundary pair ``(x, y)`` in front coordinates with the largest ``x <= p``."""
        k, ey = self.boundary.pred(-self.to_end(p))
        return self.to_front(-k), self.to_front(ey)

    def _next_e(self, e: int) -> int:
        k, ey = self.boundary.pred(-e)
        return ey + e + k

    def next_sa(self, sa_k: int) -> int:
        return self.to_front(self._next_e(self.to_end(sa_k)))

    def boundary_pairs(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted((n + k, n - ey) for k, ey in self.boundary)

    def count(self, pattern: Sequence[int]) -> int:
        if len(pattern) > self.n:
            return 0
        return self.search(pattern).size

    def locate_all(self, pattern: Sequence[int]) -> list[int]:
        if len(pattern) > self.n:
            return []
        if not pattern:
            return list(range(1, self.n + 1))
        cur = self.toehold_search(pattern)
        if cur.empty:
            return []
        e = self.to_end(cur.sa_first)
        out = [e]
        for _ in range(cur.size - 1):
            e = self._next_e(e)
            out.append(e)
        n = self.n
        return sorted(n - x for x in out)

    def locate_one(self, pattern: Sequence[int]) -> int | None:
        cur = self.toehold_search(pattern)
        return None if cur.empty else cur.sa_first

    def sa(self) -> list[int]:
        """Full suffix array, recovered by chaining boundary predecessors."""
        first, _ = self.runs.run_at(1)
        e = first.head_sa
        out = [e]
        for _ in range(self.n - 1):
            e = self._next_e(e)
            out.append(e)
        n = self.n
        return [n - x for x in out]

    def text(self) -> list[int]:
        """Recover the indexed text by walking LF from the terminal's suffix."""
        n = self.n
        out = [0] * n
        out[n - 1] = self.terminal
        i = self.C(self.terminal) + 1
        for pos in range(n - 2, -1, -1):
            c = self.runs.symbol_at(i)
            out[pos] = c
            i = self.C(c) + self.runs.rank(c, i)
        return out

    def sentinel_count(self) -> int:
        return sum(1 for c in self.runs.counts.symbols() if is_special(c))

    def check(self) -> None:
        """Structural self-check: run layout, |B| = r - 1 and sample consistency."""
        self.runs.check()
        assert len(self.boundary) == max(self.r - 1, 0), "boundary set size"
        prev = None
        for run in self.runs.runs():
            if prev is not None:
                assert self.boundary.pred(-prev.tail_sa) == (-prev.tail_sa, run.head_sa), \
                    "boundary pair mismatch"
            prev = run
