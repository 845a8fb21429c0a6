"""RLBWT of a growing text, maintained under prepending one symbol at a time.

The text always ends with a unique terminal symbol, the first symbol ever
prepended.  Its single BWT occurrence marks the *hole*: the row of the whole
text, whose cyclic predecessor is the terminal.  Prepending ``c`` rewrites the
hole to ``c`` and re-inserts the terminal at ``C(c) + rank_c(hole - 1) + 1``.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import HolePosition, OutOfBounds, SentinelReuse
from .runs import InsertEffect, ReplaceEffect, RunSequence
from .text import is_special


class Interval(NamedTuple):
    """Closed BWT interval; empty when ``lo > hi``."""

    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    @property
    def size(self) -> int:
        return max(0, self.hi - self.lo + 1)


class DynamicRlbwt:
    def __init__(self, seed: int = 0x5EED):
        self.runs = RunSequence(seed)
        self.hole = 0
        self.terminal: int | None = None

    @property
    def n(self) -> int:
        return len(self.runs)

    @property
    def r(self) -> int:
        return self.runs.run_count

    def __len__(self) -> int:
        return len(self.runs)

    def C(self, c: int) -> int:
        return self.runs.less_than(c)

    def bwt(self) -> list[int]:
        return self.runs.to_list()

    def full(self) -> Interval:
        return Interval(1, self.n)

    # -- queries -----------------------------------------------------------

    def lf(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise OutOfBounds(f"position {i} outside 1..{self.n}")
        if i == self.hole:
            raise HolePosition("LF is undefined at the row of the whole text")
        c = self.runs.symbol_at(i)
        return self.C(c) + self.runs.rank(c, i)

    def backward_step(self, interval: Interval, c: int) -> Interval:
        """Interval of ``cP`` from the interval of ``P``."""
        lo, hi = interval
        if lo > hi:
            return interval
        if not (1 <= lo and hi <= self.n):
            raise OutOfBounds(f"interval [{lo}..{hi}] outside 1..{self.n}")
        base = self.C(c)
        if c == self.terminal:
            # only the one-symbol suffix starts with the terminal
            if lo == 1 and hi == self.n:
                return Interval(base + 1, base + 1)
            return Interval(base + 1, base)
        if self.runs.count(c) == 0:
            return Interval(base + 1, base)
        return Interval(base + self.runs.rank(c, lo - 1) + 1, base + self.runs.rank(c, hi))

    def search(self, pattern: Sequence[int]) -> Interval:
        iv = self.full()
        for c in reversed(pattern):
            iv = self.backward_step(iv, c)
            if iv.empty:
                break
        return iv

    # -- updates -----------------------------------------------------------

    def _check_prepend(self, c: int) -> None:
        if self.n == 0:
            if not is_special(c):
                raise ValueError("the first prepended symbol must be a sentinel")
        elif is_special(c) and self.runs.count(c):
            raise SentinelReuse(f"sentinel {c} already occurs in the text")

    def _target(self, c: int) -> int:
        """Row the terminal moves to once ``c`` is prepended."""
        return self.C(c) + self.runs.rank(c, self.hole - 1) + 1

    def _start(self, c: int) -> InsertEffect:
        eff = self.runs.insert(1, c)
        self.terminal = c
        self.hole = 1
        return eff

    def prepend_effects(self, c: int) -> tuple[int, int, ReplaceEffect | None, InsertEffect]:
        self._check_prepend(c)
        if self.n == 0:
            return 0, 1, None, self._start(c)
        old = self.hole
        target = self._target(c)
        replaced = self.runs.replace(old, c)
        inserted = self.runs.insert(target, self.terminal)
        self.hole = target
        return old, target, replaced, inserted

    def prepend(self, c: int) -> tuple[int, int]:
        """Prepend ``c``; returns the old and the new hole position."""
        old, new, _, _ = self.prepend_effects(c)
        return old, new

    def extend_text(self, symbols: Sequence[int]) -> None:
        """Prepend ``symbols`` right to left, so the text grows by ``symbols`` at the front."""
        for c in reversed(symbols):
            self.prepend(c)
