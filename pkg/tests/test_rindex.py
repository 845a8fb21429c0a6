import random

import pytest

from rindex.errors import NoPredecessor
from rindex.oracle import naive_boundaries, naive_occurrences, naive_sa
from rindex.rindex import BoundarySet, DynamicIndex
from rindex.text import sentinel

from .conftest import codes, random_text, text_of

GATTACAT = text_of("GATTACAT")


@pytest.fixture
def idx():
    return DynamicIndex.from_text(GATTACAT)


def test_boundary_set_predecessor():
    b = BoundarySet([(3, 8), (5, 1)])
    assert b.pred(4) == (3, 8)
    assert b.pred(5) == (5, 1)
    with pytest.raises(NoPredecessor):
        BoundarySet([(3, 8)]).pred(2)


def test_pred_B_front_coordinates(idx):
    pairs = idx.boundary_pairs()
    assert pairs == naive_boundaries(GATTACAT)
    for p in range(1, 10):
        below = [xy for xy in pairs if xy[0] <= p]
        if below:
            assert idx.pred_B(p) == max(below)
        else:
            with pytest.raises(NoPredecessor):
                idx.pred_B(p)


def test_next_sa_examples(idx):
    assert idx.next_sa(7) == 2
    assert idx.next_sa(9) == 5
    assert idx.sa() == naive_sa(GATTACAT)


def test_count_examples(idx):
    assert idx.count(codes("AT")) == 2
    assert idx.count(codes("ATAC")) == 0
    assert idx.count([]) == 9
    assert idx.count(codes("GATTACATGATTACAT")) == 0


def test_locate_examples(idx):
    assert idx.locate_all(codes("AT")) == [2, 7]
    assert idx.locate_all(codes("GATTACAT")) == [1]
    assert idx.locate_all(codes("TT")) == [3]
    assert idx.locate_all(codes("ATAC")) == []


def test_single_sentinel_has_empty_boundary_set():
    d = DynamicIndex()
    d.extend(sentinel(1))
    assert len(d.boundary) == 0 and d.r == 1


def test_boundary_set_replay():
    rng = random.Random(3)
    for _ in range(80):
        t = random_text(rng, rng.choice([b"AB", b"ACGT"]), rng.randint(1, 50), records=rng.randint(1, 3))
        d = DynamicIndex()
        for j in range(len(t) - 1, -1, -1):
            d.extend(t[j])
            assert len(d.boundary) == d.r - 1
            assert d.boundary_pairs() == naive_boundaries(t[j:])


def test_next_sa_exhaustive(rng):
    t = random_text(rng, b"ACGT", 2000, records=4)
    d = DynamicIndex.from_text(t)
    sa = naive_sa(t)
    for k in range(len(t) - 1):
        assert d.next_sa(sa[k]) == sa[k + 1]
    # the chain ends exactly at the last row
    assert len(d.sa()) == len(t)


def test_locate_replay():
    rng = random.Random(9)
    for _ in range(30):
        t = random_text(rng, b"ACGT", rng.randint(20, 200), records=2)
        d = DynamicIndex()
        for j in range(len(t) - 1, -1, -1):
            d.extend(t[j])
            cur = t[j:]
            for _ in range(3):
                a = rng.randrange(len(cur))
                p = cur[a:a + rng.randint(1, 8)]
                occ = d.locate_all(p)
                assert occ == naive_occurrences(cur, p)
                assert d.count(p) == len(occ)
        for _ in range(30):
            p = [rng.choice(codes("ACGT")) for _ in range(rng.randint(5, 12))]
            assert d.locate_all(p) == naive_occurrences(t, p)


def test_text_recovery(rng):
    t = random_text(rng, b"ACGT", 500, records=3)
    assert DynamicIndex.from_text(t).text() == t


def test_reversed_orientation():
    t = codes("GATTACAT")
    d = DynamicIndex.reversed_of(t)
    assert d.text()[:-1] == t[::-1]
