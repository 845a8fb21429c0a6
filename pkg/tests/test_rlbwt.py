import random

import pytest

from rindex.errors import HolePosition, OutOfBounds, SentinelReuse
from rindex.oracle import naive_bwt, naive_occurrences, naive_sa, run_count
from rindex.rlbwt import DynamicRlbwt, Interval
from rindex.text import render_all, sentinel

from .conftest import codes, random_text, text_of

GATTACAT = text_of("GATTACAT")


@pytest.fixture
def idx():
    d = DynamicRlbwt()
    d.extend_text(GATTACAT)
    return d


def test_prepend_to_empty():
    d = DynamicRlbwt()
    assert d.prepend(sentinel(1)) == (0, 1)
    assert d.bwt() == [sentinel(1)] and d.hole == 1


def test_build_example(idx):
    assert render_all(idx.bwt()) == render_all(naive_bwt(GATTACAT)) == "TTCGA$1ATA"
    assert idx.r == 8
    assert idx.hole == 6


def test_lf(idx):
    assert idx.lf(2) == 8
    assert idx.lf(5) == 2
    with pytest.raises(HolePosition):
        idx.lf(6)
    with pytest.raises(OutOfBounds):
        idx.lf(10)


def test_lf_matches_inverse_sa(idx):
    sa = naive_sa(GATTACAT)
    inv = {s: i for i, s in enumerate(sa, 1)}
    for i in range(1, 10):
        if i != idx.hole:
            assert idx.lf(i) == inv[sa[i - 1] - 1]


def test_backward_step(idx):
    t = idx.backward_step(idx.full(), ord("T"))
    assert t == Interval(7, 9)
    at = idx.backward_step(t, ord("A"))
    assert at == Interval(3, 4)
    gat = idx.backward_step(at, ord("G"))
    assert gat == Interval(6, 6)
    assert gat.size == len(naive_occurrences(GATTACAT, codes("GAT")))
    assert idx.backward_step(idx.full(), ord("X")).empty


def test_sentinel_reuse_rejected(idx):
    with pytest.raises(SentinelReuse):
        idx.prepend(sentinel(1))
    with pytest.raises(ValueError):
        DynamicRlbwt().prepend(ord("A"))


def test_lf_cycle_visits_every_row(rng):
    t = random_text(rng, b"ACGT", 3000)
    d = DynamicRlbwt()
    d.extend_text(t)
    i = d.C(d.terminal) + 1     # row of the terminal suffix
    seen = {i}
    for _ in range(len(t) - 1):
        i = d.lf(i)
        seen.add(i)
    assert seen == set(range(1, len(t) + 1))
    assert i == d.hole


@pytest.mark.parametrize("alphabet", [b"AC", b"ACGT", b"abcdefghijklmnopqrstuvwxyz"])
def test_every_prefix_matches_oracle(alphabet):
    rng = random.Random(len(alphabet))
    for _ in range(60):
        t = random_text(rng, alphabet, rng.randint(1, 60), records=rng.randint(1, 3))
        d = DynamicRlbwt()
        for j in range(len(t) - 1, -1, -1):
            d.prepend(t[j])
            want = naive_bwt(t[j:])
            assert d.bwt() == want
            assert d.r == run_count(want)
        d.runs.check()


def test_backward_search_counts(rng):
    t = random_text(rng, b"ACGT", 2000)
    d = DynamicRlbwt()
    d.extend_text(t)
    for _ in range(200):
        a = rng.randrange(len(t) - 1)
        p = [c for c in t[a:a + rng.randint(1, 10)] if c >= 0]
        assert d.search(p).size == len(naive_occurrences(t, p))
    assert d.search(codes("ACGTX")).empty
