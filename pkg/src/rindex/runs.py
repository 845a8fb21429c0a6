"""Dynamic run-length sequence with positional access and per-symbol rank/select.

Runs live in one treap ordered by sequence position (augmented with subtree
length, run count and a bitmask of the symbols present below each node).  Every
symbol additionally owns a treap of its own runs in sequence order, augmented
with subtree length, so ``rank`` and ``select`` cost O(log r):

* ``rank(c, i)`` finds the run holding ``i``, walks to the nearest ``c``-run at
  or before it using the bitmasks, and reads that run's prefix count from the
  per-symbol treap.
* ``select(c, k)`` descends the per-symbol treap and converts the run found
  back to a position in the main treap.

All positions are 1-based.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from sortedcontainers import SortedList

from .errors import NoSuchOccurrence, NotSingletonRun, OutOfBounds


class Run:
    """A maximal block of one symbol.

    ``head_sa`` / ``tail_sa`` are owned by the sampling layer; the sequence
    itself never reads or writes them.
    """

    __slots__ = ("sym", "length", "head_sa", "tail_sa",
                 "left", "right", "parent", "prio", "total", "size", "mask", "bit", "cnode")

    def __init__(self, sym: int, length: int):
        self.sym = sym
        self.length = length
        self.head_sa = -1
        self.tail_sa = -1
        self.left: Run | None = None
        self.right: Run | None = None
        self.parent: Run | None = None
        self.prio = 0.0
        self.total = length
        self.size = 1
        self.mask = 0
        self.bit = 0
        self.cnode: _SymNode | None = None

    def __repr__(self) -> str:
        return f"Run(sym={self.sym}, length={self.length})"


class _SymNode:
    __slots__ = ("run", "length", "left", "right", "parent", "prio", "total")

    def __init__(self, run: Run):
        self.run = run
        self.length = run.length
        self.left: _SymNode | None = None
        self.right: _SymNode | None = None
        self.parent: _SymNode | None = None
        self.prio = 0.0
        self.total = run.length


class _Treap:
    """Implicit-key treap with parent pointers; nodes carry ``length``/``total``."""

    def __init__(self, rng: random.Random):
        self.root = None
        self._rng = rng
        self.visits = 0

    def _pull(self, x) -> None:
        t = x.length
        if x.left is not None:
            t += x.left.total
        if x.right is not None:
            t += x.right.total
        x.total = t

    def _grow_path(self, y, x) -> None:
        v = 0
        ln = x.length
        while y is not None:
            y.total += ln
            y = y.parent
            v += 1
        self.visits += v

    def _rotate_up(self, x) -> None:
        p = x.parent
        g = p.parent
        if p.left is x:
            b = x.right
            p.left = b
            x.right = p
        else:
            b = x.left
            p.right = b
            x.left = p
        if b is not None:
            b.parent = p
        p.parent = x
        x.parent = g
        if g is None:
            self.root = x
        elif g.left is p:
            g.left = x
        else:
            g.right = x
        self._pull(p)
        self._pull(x)
        self.visits += 1

    def insert_after(self, anchor, x) -> None:
        """Insert ``x`` immediately after ``anchor`` (``None``: at the front)."""
        x.left = x.right = None
        x.prio = self._rng.random()
        self._pull(x)
        if self.root is None:
            x.parent = None
            self.root = x
            return
        if anchor is None:
            y = self.root
            while y.left is not None:
                y = y.left
                self.visits += 1
            y.left = x
        elif anchor.right is None:
            y = anchor
            y.right = x
        else:
            y = anchor.right
            while y.left is not None:
                y = y.left
                self.visits += 1
            y.left = x
        x.parent = y
        self._grow_path(y, x)
        while x.parent is not None and x.parent.prio < x.prio:
            self._rotate_up(x)

    def remove(self, x) -> None:
        while x.left is not None or x.right is not None:
            if x.left is None:
                c = x.right
            elif x.right is None:
                c = x.left
            else:
                c = x.left if x.left.prio > x.right.prio else x.right
            self._rotate_up(c)
        p = x.parent
        if p is None:
            self.root = None
        elif p.left is x:
            p.left = None
        else:
            p.right = None
        x.parent = None
        v = 0
        while p is not None:
            self._pull(p)
            p = p.parent
            v += 1
        self.visits += v

    def add_length(self, x, delta: int) -> None:
        x.length += delta
        v = 0
        while x is not None:
            x.total += delta
            x = x.parent
            v += 1
        self.visits += v

    def find(self, pos: int):
        """Node covering ``pos`` (1-based) and the 1-based offset inside it."""
        x = self.root
        v = 0
        while True:
            v += 1
            left = x.left
            lt = left.total if left is not None else 0
            if pos <= lt:
                x = left
            elif pos <= lt + x.length:
                self.visits += v
                return x, pos - lt
            else:
                pos -= lt + x.length
                x = x.right

    def offset_of(self, x) -> int:
        """Number of symbols strictly before node ``x``."""
        s = x.left.total if x.left is not None else 0
        v = 0
        while x.parent is not None:
            p = x.parent
            if p.right is x:
                s += p.length
                if p.left is not None:
                    s += p.left.total
            x = p
            v += 1
        self.visits += v
        return s

    @staticmethod
    def successor(x):
        if x.right is not None:
            x = x.right
            while x.left is not None:
                x = x.left
            return x
        while x.parent is not None and x.parent.right is x:
            x = x.parent
        return x.parent

    @staticmethod
    def predecessor(x):
        if x.left is not None:
            x = x.left
            while x.right is not None:
                x = x.right
            return x
        while x.parent is not None and x.parent.left is x:
            x = x.parent
        return x.parent

    def first(self):
        x = self.root
        if x is None:
            return None
        while x.left is not None:
            x = x.left
        return x

    def last(self):
        x = self.root
        if x is None:
            return None
        while x.right is not None:
            x = x.right
        return x

    def __iter__(self):
        x = self.first()
        while x is not None:
            yield x
            x = self.successor(x)

    def height(self) -> int:
        if self.root is None:
            return 0
        best = 0
        stack = [(self.root, 1)]
        while stack:
            x, d = stack.pop()
            best = max(best, d)
            if x.left is not None:
                stack.append((x.left, d + 1))
            if x.right is not None:
                stack.append((x.right, d + 1))
        return best


class _RunTreap(_Treap):
    """Main treap: also keeps the run count and symbol bitmask per subtree."""

    def _pull(self, x) -> None:
        t = x.length
        s = 1
        m = x.bit
        left = x.left
        if left is not None:
            t += left.total
            s += left.size
            m |= left.mask
        right = x.right
        if right is not None:
            t += right.total
            s += right.size
            m |= right.mask
        x.total = t
        x.size = s
        x.mask = m

    def _grow_path(self, y, x) -> None:
        bit = x.bit
        ln = x.length
        while y is not None:
            y.total += ln
            y.size += 1
            y.mask |= bit
            y = y.parent
            self.visits += 1

    def refresh_path(self, x) -> None:
        while x is not None:
            self._pull(x)
            x = x.parent
            self.visits += 1

    def index_of(self, x) -> int:
        s = x.left.size if x.left is not None else 0
        while x.parent is not None:
            p = x.parent
            if p.right is x:
                s += 1 + (p.left.size if p.left is not None else 0)
            x = p
        return s + 1

    def prev_with(self, x: Run, sym: int, bit: int) -> Run | None:
        """Nearest run strictly before ``x`` holding ``sym``."""
        v = 0
        if x.left is not None and x.left.mask & bit:
            return self._rightmost_with(x.left, sym, bit)
        while x.parent is not None:
            p = x.parent
            v += 1
            if p.right is x:
                if p.sym == sym:
                    self.visits += v
                    return p
                if p.left is not None and p.left.mask & bit:
                    self.visits += v
                    return self._rightmost_with(p.left, sym, bit)
            x = p
        self.visits += v
        return None

    def next_with(self, x: Run, sym: int, bit: int) -> Run | None:
        """Nearest run strictly after ``x`` holding ``sym``."""
        v = 0
        if x.right is not None and x.right.mask & bit:
            return self._leftmost_with(x.right, sym, bit)
        while x.parent is not None:
            p = x.parent
            v += 1
            if p.left is x:
                if p.sym == sym:
                    self.visits += v
                    return p
                if p.right is not None and p.right.mask & bit:
                    self.visits += v
                    return self._leftmost_with(p.right, sym, bit)
            x = p
        self.visits += v
        return None

    def _rightmost_with(self, x: Run, sym: int, bit: int) -> Run:
        while True:
            self.visits += 1
            if x.right is not None and x.right.mask & bit:
                x = x.right
            elif x.sym == sym:
                return x
            else:
                x = x.left

    def _leftmost_with(self, x: Run, sym: int, bit: int) -> Run:
        while True:
            self.visits += 1
            if x.left is not None and x.left.mask & bit:
                x = x.left
            elif x.sym == sym:
                return x
            else:
                x = x.right


class SymbolCounts:
    """Per-symbol totals backing ``C(c)``, the count of symbols smaller than ``c``.

    Bytes go to a Fenwick tree; negative codes (sentinels) to a sorted multiset.
    """

    def __init__(self) -> None:
        self._count: dict[int, int] = {}
        self._present = SortedList()
        self._fen = [0] * 257
        self._special = SortedList()

    def add(self, c: int, delta: int) -> None:
        old = self._count.get(c, 0)
        new = old + delta
        if new < 0:
            raise ValueError(f"count of {c} would become negative")
        if new:
            self._count[c] = new
        else:
            self._count.pop(c, None)
        if old == 0 and new > 0:
            self._present.add(c)
        elif old > 0 and new == 0:
            self._present.remove(c)
        if c < 0:
            if delta == 1:
                self._special.add(c)
            elif delta > 0:
                self._special.update([c] * delta)
            else:
                for _ in range(-delta):
                    self._special.remove(c)
        else:
            i = c + 1
            while i <= 256:
                self._fen[i] += delta
                i += i & -i

    def count(self, c: int) -> int:
        return self._count.get(c, 0)

    def less_than(self, c: int) -> int:
        if c <= 0:
            return self._special.bisect_left(c)
        i = min(c, 256)
        s = 0
        while i > 0:
            s += self._fen[i]
            i -= i & -i
        return len(self._special) + s

    def next_above(self, c: int) -> int | None:
        i = self._present.bisect_right(c)
        return self._present[i] if i < len(self._present) else None

    def prev_below(self, c: int) -> int | None:
        i = self._present.bisect_left(c)
        return self._present[i - 1] if i > 0 else None

    def symbols(self) -> list[int]:
        return list(self._present)


class InsertKind(str, Enum):
    EXTENDED = "extended-existing-run"
    NEW_RUN = "new-run-between"
    SPLIT = "split-run"


class MergeKind(str, Enum):
    NONE = "none"
    LEFT = "merge-left"
    RIGHT = "merge-right"
    BOTH = "merge-both"


@dataclass
class InsertEffect:
    kind: InsertKind
    run: Run
    left: Run | None = None    # run before the insertion (left fragment on split)
    right: Run | None = None   # run after the insertion (right fragment on split)


@dataclass
class ReplaceEffect:
    kind: MergeKind
    run: Run                   # run now holding the replaced position
    replaced: Run              # the singleton run that was rewritten
    left: Run | None = None    # neighbours as they were before the replace
    right: Run | None = None


class RunSequence:
    def __init__(self, seed: int = 0x5EED):
        self._rng = random.Random(seed)
        self._tree = _RunTreap(self._rng)
        self._sym_trees: dict[int, _Treap] = {}
        self._bits: dict[int, int] = {}
        self.counts = SymbolCounts()

    # -- bookkeeping -------------------------------------------------------

    def __len__(self) -> int:
        root = self._tree.root
        return root.total if root is not None else 0

    @property
    def run_count(self) -> int:
        root = self._tree.root
        return root.size if root is not None else 0

    @property
    def visits(self) -> int:
        return self._tree.visits + sum(t.visits for t in self._sym_trees.values())

    def height(self) -> int:
        return self._tree.height()

    def sym_tree_height(self) -> int:
        return max((t.height() for t in self._sym_trees.values()), default=0)

    def less_than(self, c: int) -> int:
        """``C(c)``: number of symbols in the sequence smaller than ``c``."""
        return self.counts.less_than(c)

    def count(self, c: int) -> int:
        return self.counts.count(c)

    def _bit(self, sym: int) -> int:
        if sym < 0:
            # sentinels (typically one run each) bypass the bitmasks and are
            # found by position in their own tree instead
            return 0
        b = self._bits.get(sym)
        if b is None:
            b = self._bits[sym] = 1 << len(self._bits)
        return b

    def _sym_tree(self, sym: int) -> _Treap:
        t = self._sym_trees.get(sym)
        if t is None:
            t = self._sym_trees[sym] = _Treap(self._rng)
        return t

    def _new_run(self, sym: int, length: int, after: Run | None) -> Run:
        run = Run(sym, length)
        run.bit = self._bit(sym)
        self._tree.insert_after(after, run)
        self._attach_sym(run)
        return run

    def _attach_sym(self, run: Run) -> None:
        node = _SymNode(run)
        run.cnode = node
        if run.bit:
            prev = self._tree.prev_with(run, run.sym, run.bit)
        else:
            prev = self._last_run_from(run.sym, self.head_of(run) - 1)
        self._sym_tree(run.sym).insert_after(prev.cnode if prev is not None else None, node)

    def _drop_run(self, run: Run) -> None:
        self._tree.remove(run)
        self._sym_trees[run.sym].remove(run.cnode)
        run.cnode = None

    def _resize(self, run: Run, delta: int) -> None:
        self._tree.add_length(run, delta)
        self._sym_trees[run.sym].add_length(run.cnode, delta)

    def _check_pos(self, i: int, hi: int) -> None:
        if not 1 <= i <= hi:
            raise OutOfBounds(f"position {i} outside 1..{hi}")

    # -- queries -----------------------------------------------------------

    def run_at(self, i: int) -> tuple[Run, int]:
        """Run covering position ``i`` and that run's head position."""
        self._check_pos(i, len(self))
        run, off = self._tree.find(i)
        return run, i - off + 1

    def head_of(self, run: Run) -> int:
        return self._tree.offset_of(run) + 1

    def symbol_at(self, i: int) -> int:
        self._check_pos(i, len(self))
        return self._tree.find(i)[0].sym

    def run_bounds(self, i: int) -> tuple[int, int, int]:
        run, head = self.run_at(i)
        return self._tree.index_of(run), head, head + run.length - 1

    def _last_run_from(self, c: int, i: int) -> Run | None:
        """Last run of ``c`` whose head is at or before ``i`` (searched by position)."""
        tree = self._sym_trees.get(c)
        node = tree.root if tree is not None else None
        best = None
        while node is not None:
            if self.head_of(node.run) <= i:
                best = node
                node = node.right
            else:
                node = node.left
        return best.run if best is not None else None

    def _prefix_count(self, run: Run) -> int:
        return self._sym_trees[run.sym].offset_of(run.cnode)

    def rank(self, c: int, i: int) -> int:
        if i == 0:
            return 0
        self._check_pos(i, len(self))
        if c < 0:
            run = self._last_run_from(c, i)
            if run is None:
                return 0
            return self._prefix_count(run) + min(run.length, i - self.head_of(run) + 1)
        bit = self._bits.get(c)
        if bit is None:
            return 0
        run, off = self._tree.find(i)
        if run.sym == c:
            return self._prefix_count(run) + off
        prev = self._tree.prev_with(run, c, bit)
        if prev is None:
            return 0
        return self._prefix_count(prev) + prev.length

    def locate(self, c: int, k: int) -> tuple[Run, int, int]:
        """Run holding the ``k``-th ``c``, its position and 1-based offset in the run."""
        tree = self._sym_trees.get(c)
        if tree is None or tree.root is None or not 1 <= k <= tree.root.total:
            raise NoSuchOccurrence(f"symbol {c} has no occurrence number {k}")
        node, off = tree.find(k)
        run = node.run
        return run, self._tree.offset_of(run) + off, off

    def select(self, c: int, k: int) -> int:
        return self.locate(c, k)[1]

    def next_occurrence(self, c: int, i: int) -> tuple[Run, int, int] | None:
        """First ``c`` at a position ``>= i``, as returned by ``locate``."""
        before = self.rank(c, i - 1)
        if before >= self.counts.count(c):
            return None
        return self.locate(c, before + 1)

    def prev_occurrence(self, c: int, i: int) -> tuple[Run, int, int] | None:
        """Last ``c`` at a position ``<= i``, as returned by ``locate``."""
        upto = self.rank(c, i)
        if upto == 0:
            return None
        return self.locate(c, upto)

    def first_run_of(self, c: int) -> Run | None:
        tree = self._sym_trees.get(c)
        node = tree.first() if tree is not None else None
        return node.run if node is not None else None

    def last_run_of(self, c: int) -> Run | None:
        tree = self._sym_trees.get(c)
        node = tree.last() if tree is not None else None
        return node.run if node is not None else None

    def prev_run(self, run: Run) -> Run | None:
        return _Treap.predecessor(run)

    def next_run(self, run: Run) -> Run | None:
        return _Treap.successor(run)

    def runs(self) -> Iterator[Run]:
        return iter(self._tree)

    def run_pairs(self) -> list[tuple[int, int]]:
        return [(r.sym, r.length) for r in self._tree]

    def append_run(self, sym: int, length: int) -> Run:
        """Bulk-load helper: add a whole run at the end (no merging)."""
        last = self._tree.last()
        if last is not None and last.sym == sym:
            raise ValueError("appended run repeats the previous symbol")
        self.counts.add(sym, length)
        return self._new_run(sym, length, last)

    def to_list(self) -> list[int]:
        out: list[int] = []
        for r in self._tree:
            out.extend([r.sym] * r.length)
        return out

    # -- updates -----------------------------------------------------------

    def insert(self, i: int, c: int, count: bool = True) -> InsertEffect:
        """Insert ``c`` so that it lands at position ``i`` (1 <= i <= n+1).

        ``count=False`` leaves the symbol totals alone, for callers that
        balance them themselves.
        """
        n = len(self)
        self._check_pos(i, n + 1)
        if count:
            self.counts.add(c, 1)
        if n == 0:
            return InsertEffect(InsertKind.NEW_RUN, self._new_run(c, 1, None))
        if i == n + 1:
            z, head = None, n + 1
            p = self._tree.last()
        else:
            z, off = self._tree.find(i)
            head = i - off + 1
            p = z if i > head else self._tree.predecessor(z)
        if z is not None and i > head:
            if z.sym == c:
                self._resize(z, 1)
                return InsertEffect(InsertKind.EXTENDED, z, z, z)
            left_len = i - head
            right_len = z.length - left_len
            self._resize(z, -right_len)
            mid = self._new_run(c, 1, z)
            right = Run(z.sym, right_len)
            right.bit = z.bit
            self._tree.insert_after(mid, right)
            right.cnode = _SymNode(right)
            self._sym_trees[z.sym].insert_after(z.cnode, right.cnode)
            return InsertEffect(InsertKind.SPLIT, mid, z, right)
        if p is not None and p.sym == c:
            self._resize(p, 1)
            return InsertEffect(InsertKind.EXTENDED, p, p, z)
        if z is not None and z.sym == c:
            self._resize(z, 1)
            return InsertEffect(InsertKind.EXTENDED, z, p, z)
        return InsertEffect(InsertKind.NEW_RUN, self._new_run(c, 1, p), p, z)

    def replace(self, i: int, c: int, run: Run | None = None, count: bool = True) -> ReplaceEffect:
        """Rewrite the singleton run at ``i`` to ``c``, merging with equal neighbours.

        ``run`` may be passed when the caller already holds the run at ``i``.
        """
        self._check_pos(i, len(self))
        z = run if run is not None else self._tree.find(i)[0]
        if z.length != 1:
            raise NotSingletonRun(f"position {i} lies in a run of length {z.length}")
        if z.sym == c:
            raise ValueError("replacement symbol equals the current symbol")
        left = self._tree.predecessor(z)
        right = self._tree.successor(z)
        if count:
            self.counts.add(z.sym, -1)
            self.counts.add(c, 1)
        merge_l = left is not None and left.sym == c
        merge_r = right is not None and right.sym == c
        if merge_l and merge_r:
            self._drop_run(z)
            self._drop_run(right)
            self._resize(left, 1 + right.length)
            return ReplaceEffect(MergeKind.BOTH, left, z, left, right)
        if merge_l:
            self._drop_run(z)
            self._resize(left, 1)
            return ReplaceEffect(MergeKind.LEFT, left, z, left, right)
        if merge_r:
            self._drop_run(z)
            self._resize(right, 1)
            return ReplaceEffect(MergeKind.RIGHT, right, z, left, right)
        self._sym_trees[z.sym].remove(z.cnode)
        z.sym = c
        z.bit = self._bit(c)
        self._tree.refresh_path(z)
        self._attach_sym(z)
        return ReplaceEffect(MergeKind.NONE, z, z, left, right)

    # -- diagnostics -------------------------------------------------------

    def check(self) -> None:
        """Assert the structural invariants by full traversal."""
        prev = None
        total = 0
        per_sym: dict[int, int] = {}
        for run in self._tree:
            assert run.length >= 1, "empty run"
            assert prev is None or prev.sym != run.sym, "adjacent runs share a symbol"
            total += run.length
            per_sym[run.sym] = per_sym.get(run.sym, 0) + run.length
            prev = run
        assert total == len(self)
        for sym, tree in self._sym_trees.items():
            got = sum(node.length for node in tree)
            assert got == per_sym.get(sym, 0) == self.counts.count(sym)
            order = [node.run for node in tree]
            assert [r for r in self._tree if r.sym == sym] == order
