import pytest

from coxdiam.graph import accessible_vertices, build_graph
from coxdiam.roots import CoxeterType, longest_element
from coxdiam.stream import stream_accessible


@pytest.mark.parametrize("name", ["A2", "A3", "A4", "B3", "D4"])
def test_stream_matches_graph(name):
    ctype = CoxeterType.parse(name)
    g = build_graph(longest_element(ctype))
    res = stream_accessible(ctype)
    assert res.total_words == g.nvertices
    assert res.accessible == list(accessible_vertices(g))
    assert [tuple(g.words[v].tolist()) for v in res.accessible] == res.accessible_words
    # every rejected survivor carries a word that beats it locally
    assert set(res.witnesses).isdisjoint(res.accessible)


def test_stream_is_seed_independent():
    ctype = CoxeterType("D", 4)
    a = stream_accessible(ctype, seed=1)
    b = stream_accessible(ctype, strategies=(0,), seed=99)
    assert a.accessible == b.accessible
    assert b.survivors_after_pruning >= a.survivors_after_pruning


def test_survivor_overflow():
    with pytest.raises(MemoryError):
        stream_accessible(CoxeterType("A", 4), strategies=(0,), max_survivors=1)
