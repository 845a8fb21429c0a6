"""SA samples at run heads and tails, kept exact while the text grows at the front.

Samples are stored end-anchored: a suffix starting at front position ``s`` of a
text of length ``n`` is recorded as ``e = n - s``.  Prepending a symbol leaves
every existing ``e`` unchanged, so only the runs touched by an update need new
samples.  Conversion to 1-based front positions happens at the API boundary.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentEffects, MissingSaNext, OutOfBounds
from .rlbwt import DynamicRlbwt, Interval
from .runs import InsertKind, MergeKind


@dataclass(frozen=True)
class ToeholdCursor:
    """Backward-search state: interval, SA value at its head, symbols matched."""

    lo: int
    hi: int
    sa_first: int | None
    matched: int = 0
    prior: ToeholdCursor | None = None

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def size(self) -> int:
        return max(0, self.hi - self.lo + 1)


class AugmentedRlbwt(DynamicRlbwt):
    """Dynamic RLBWT whose runs carry exact head/tail SA samples."""

    # -- coordinates ---------------------------------------------------------

    def to_front(self, e: int) -> int:
        return self.n - e

    def to_end(self, s: int) -> int:
        return self.n - s

    def head_samples(self) -> list[int]:
        n = self.n
        return [n - run.head_sa for run in self.runs.runs()]

    def tail_samples(self) -> list[int]:
        n = self.n
        return [n - run.tail_sa for run in self.runs.runs()]

    # -- boundary-pair hooks (used by the full index) ----------------------------

    def _pair_add(self, ex: int, ey: int) -> None:
        pass

    def _pair_remove(self, ex: int) -> None:
        pass

    # -- neighbouring suffixes ---------------------------------------------------

    def _above(self, c: int) -> int | None:
        """Smallest symbol above ``c`` that starts a suffix (terminal included)."""
        cand = self.runs.counts.next_above(c)
        t = self.terminal
        if t is not None and t > c and (cand is None or t < cand):
            return t
        return cand

    def _below(self, c: int) -> int | None:
        cand = self.runs.counts.prev_below(c)
        t = self.terminal
        if t is not None and t < c and (cand is None or t > cand):
            return t
        return cand

    def _succ_e(self, k: int, c: int, sa_next: int | None) -> int | None:
        """End-anchored start of the smallest suffix above ``c`` + suffix at row ``k``."""
        if c != self.terminal and k < self.n:
            hit = self.runs.next_occurrence(c, k + 1)
            if hit is not None:
                run, pos, off = hit
                if pos == k + 1:
                    if sa_next is None:
                        raise MissingSaNext("SA value at k+1 is required")
                    return sa_next + 1
                if off != 1:
                    raise InconsistentEffects("first occurrence is not a run head")
                return run.head_sa + 1
        above = self._above(c)
        if above is None:
            return None
        if above == self.terminal:
            return 0
        return self.runs.first_run_of(above).head_sa + 1

    def _pred_e(self, k: int, c: int, sa_prev: int | None) -> int | None:
        """Mirror of ``_succ_e``: the largest suffix below ``c`` + suffix at row ``k``."""
        if c != self.terminal and k > 1:
            hit = self.runs.prev_occurrence(c, k - 1)
            if hit is not None:
                run, pos, off = hit
                if pos == k - 1:
                    if sa_prev is None:
                        raise MissingSaNext("SA value at k-1 is required")
                    return sa_prev + 1
                if off != run.length:
                    raise InconsistentEffects("last occurrence is not a run tail")
                return run.tail_sa + 1
        below = self._below(c)
        if below is None:
            return None
        if below == self.terminal:
            return 0
        return self.runs.last_run_of(below).tail_sa + 1

    def track_successor(self, sa_next: int | None, k: int, c: int) -> int | None:
        """Front position of the smallest suffix exceeding ``c`` + the suffix at row ``k``."""
        if not 1 <= k <= self.n:
            raise OutOfBounds(f"position {k} outside 1..{self.n}")
        if k < self.n and sa_next is None:
            raise MissingSaNext("sa_next must be given unless k = n")
        e = self._succ_e(k, c, None if sa_next is None else self.to_end(sa_next))
        return None if e is None else self.to_front(e)

    def track_predecessor(self, sa_prev: int | None, k: int, c: int) -> int | None:
        """Front position of the largest suffix below ``c`` + the suffix at row ``k``."""
        if not 1 <= k <= self.n:
            raise OutOfBounds(f"position {k} outside 1..{self.n}")
        if k > 1 and sa_prev is None:
            raise MissingSaNext("sa_prev must be given unless k = 1")
        e = self._pred_e(k, c, None if sa_prev is None else self.to_end(sa_prev))
        return None if e is None else self.to_front(e)

    # -- update ------------------------------------------------------------------

    def prepend(self, c: int) -> tuple[int, int]:
        self._check_prepend(c)
        e_new = self.n
        if e_new == 0:
            run = self._start(c).run
            run.head_sa = run.tail_sa = 0
            return 0, 1
        runs = self.runs
        k = self.hole
        kp = self._target(c)
        hole_run = runs.first_run_of(self.terminal)
        left = runs.prev_run(hole_run)
        right = runs.next_run(hole_run)
        e_z = hole_run.head_sa
        sa_prev = left.tail_sa if left is not None else None
        sa_next = right.head_sa if right is not None else None

        # step A: the hole takes c.  The terminal leaves here and comes back
        # in step B, so only c's total changes.
        runs.counts.add(c, 1)
        rep = runs.replace(k, c, hole_run, count=False)
        if rep.kind is MergeKind.LEFT:
            self._pair_remove(left.tail_sa)
            left.tail_sa = e_z
        elif rep.kind is MergeKind.RIGHT:
            self._pair_remove(e_z)
            right.head_sa = e_z
        elif rep.kind is MergeKind.BOTH:
            self._pair_remove(left.tail_sa)
            self._pair_remove(e_z)
            left.tail_sa = right.tail_sa

        # step B: the terminal re-enters at kp
        e_pred = e_succ = None
        if kp <= len(runs):
            _, head = runs.run_at(kp)
            if head < kp:
                # kp falls strictly inside a run: it will split
                e_pred = self._pred_e(k, c, sa_prev)
                e_succ = self._succ_e(k, c, sa_next)
                if e_pred is None or e_succ is None:
                    raise InconsistentEffects("split without both neighbouring suffixes")
        ins = runs.insert(kp, self.terminal, count=False)
        self.hole = kp
        mid = ins.run
        mid.head_sa = mid.tail_sa = e_new
        if ins.kind is InsertKind.SPLIT:
            lrun, rrun = ins.left, ins.right
            rrun.tail_sa = lrun.tail_sa
            rrun.head_sa = e_succ
            lrun.tail_sa = e_pred
            self._pair_add(e_pred, e_new)
            self._pair_add(e_new, e_succ)
        elif ins.kind is InsertKind.NEW_RUN:
            if e_pred is not None:
                raise InconsistentEffects("expected a split, got a new run")
            p, q = ins.left, ins.right
            if p is not None and q is not None:
                self._pair_remove(p.tail_sa)
            if p is not None:
                self._pair_add(p.tail_sa, e_new)
            if q is not None:
                self._pair_add(e_new, q.head_sa)
        else:
            raise InconsistentEffects("terminal merged into an existing run")
        return k, kp

    # -- toehold search --------------------------------------------------------

    def toehold_start(self) -> ToeholdCursor:
        first, _ = self.runs.run_at(1)
        return ToeholdCursor(1, self.n, self.to_front(first.head_sa))

    def _step_e(self, lo: int, hi: int, e: int, c: int) -> tuple[int, int, int | None]:
        """Backward step on end-anchored state; ``e`` is the sample at ``lo``."""
        base = self.C(c)
        if c == self.terminal:
            if lo == 1 and hi == self.n:
                return base + 1, base + 1, 0
            return base + 1, base, None
        r1 = self.runs.rank(c, lo - 1)
        r2 = self.runs.rank(c, hi)
        if r2 <= r1:
            return base + 1, base, None
        run, pos, _ = self.runs.locate(c, r1 + 1)
        e2 = e + 1 if pos == lo else run.head_sa + 1
        return base + r1 + 1, base + r2, e2

    def toehold_step(self, cur: ToeholdCursor, c: int) -> ToeholdCursor:
        if cur.empty:
            return cur
        lo, hi, e = self._step_e(cur.lo, cur.hi, self.to_end(cur.sa_first), c)
        if e is None:
            return ToeholdCursor(lo, hi, None, cur.matched, prior=cur)
        return ToeholdCursor(lo, hi, self.to_front(e), cur.matched + 1)

    def toehold_search(self, pattern) -> ToeholdCursor:
        cur = self.toehold_start()
        for c in reversed(pattern):
            cur = self.toehold_step(cur, c)
            if cur.empty:
                break
        return cur

    # -- diagnostics -------------------------------------------------------------

    def check_samples(self, sa: list[int]) -> None:
        """Compare every sample with a reference SA (1-based front values)."""
        pos = 1
        for run in self.runs.runs():
            assert self.to_front(run.head_sa) == sa[pos - 1], f"head sample at {pos}"
            tail = pos + run.length - 1
            assert self.to_front(run.tail_sa) == sa[tail - 1], f"tail sample at {tail}"
            pos = tail + 1
