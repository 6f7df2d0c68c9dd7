import json

import numpy as np
import pytest
from hypothesis import given

from coxdiam.graph import (
    BudgetExceeded,
    accessibility_defect,
    accessible_vertices,
    build_graph,
    cache_path,
    diameter,
    distance,
    distances_from,
    find_accessible,
    graph_from_bytes,
    graph_to_bytes,
    is_accessible,
    load_graph,
    local_minimum_witness,
    save_graph,
    separation_counts,
)
from coxdiam.l2 import separation
from coxdiam.roots import CoxeterType, GroupElement, longest_element
from coxdiam.verify import typeD_example_word
from coxdiam.words import CapExceeded, word_r1, word_r2
import oracles
from strategies import elements

SMALL = [CoxeterType("A", n) for n in range(1, 5)] + [CoxeterType("B", 2), CoxeterType("B", 3),
                                                       CoxeterType("D", 4)]
ORACLES = {t: oracles.Oracle(t.family, t.rank) for t in SMALL}


def w0(name):
    return longest_element(CoxeterType.parse(name))


@given(elements(SMALL))
def test_graph_matches_oracle(w):
    g = build_graph(w)
    o = ORACLES[w.ctype]
    words = [tuple(x) for x in g.words.tolist()]
    adj = o.graph(words)
    for k in range(g.nvertices):
        assert sorted(adj[k]) == g.neighbors(k).tolist()
    assert diameter(g).value == oracles.diameter(adj)
    assert diameter(g).exact


@pytest.mark.parametrize("name,diam", [("A2", 1), ("A3", 7), ("A4", 25), ("B2", 1), ("B3", 13), ("D4", 34)])
def test_longest_diameters(name, diam):
    g = build_graph(w0(name))
    assert diameter(g) == (diam, True, g.nvertices)
    assert len(g.l2) == diam


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_longest_diameter_oracle(name):
    o = oracles.Oracle(name[0], int(name[1:]))
    adj = o.graph(o.reduced_words(o.longest()))
    assert diameter(build_graph(w0(name))).value == oracles.diameter(adj)


@given(elements(SMALL))
def test_distance_dominates_separation(w):
    g = build_graph(w)
    for a in range(0, g.nvertices, max(1, g.nvertices // 8)):
        assert np.all(distances_from(g, a) >= separation_counts(g, a))


@given(elements(SMALL))
def test_orientation_counts_match_separation_sets(w):
    g = build_graph(w)
    cnt = separation_counts(g, 0)
    for k in range(0, g.nvertices, max(1, g.nvertices // 5)):
        assert cnt[k] == len(separation(g.word(0), g.word(k)))


@pytest.mark.parametrize("name,count", [("A2", 2), ("A3", 12), ("A4", 164), ("B2", 2), ("B3", 14), ("D4", 72)])
def test_accessible_counts(name, count):
    g = build_graph(w0(name))
    acc = accessible_vertices(g)
    assert len(acc) == count


@pytest.mark.parametrize("name", ["A3", "A4", "B3", "D4"])
def test_local_criterion_agrees_with_bfs(name):
    g = build_graph(w0(name))
    step = 1 if g.nvertices < 1000 else 7
    for r in range(0, g.nvertices, step):
        assert is_accessible(g, r) == (local_minimum_witness(g, r) is None)
        assert (accessibility_defect(g, r) == 0) == is_accessible(g, r)


def test_find_accessible_and_budget():
    g = build_graph(w0("D4"))
    r = find_accessible(g)
    assert r == 194 and is_accessible(g, r)
    with pytest.raises(BudgetExceeded):
        find_accessible(g, budget=10)


def test_diameter_budget_gives_lower_bound():
    g = build_graph(w0("A4"))
    d = diameter(g, budget=3)
    assert not d.exact and d.sources == 3 and d.value <= 25
    assert diameter(g, budget=3, sources=[0, 767]).value <= 25


def test_3412_graph():
    w = GroupElement(CoxeterType("A", 3), (3, 4, 1, 2))
    g = build_graph(w)
    assert g.nvertices == 2 and g.nedges == 1
    assert distance(g, g.vertex(word_r1(w)), g.vertex(word_r2(w))) == 1


def test_vertex_cap():
    with pytest.raises(CapExceeded):
        build_graph(w0("A4"), cap=100)


def test_vertex_lookup_rejects_strangers():
    g = build_graph(GroupElement(CoxeterType("A", 3), (3, 4, 1, 2)))
    with pytest.raises(KeyError):
        g.vertex((1, 2, 3, 2))


@pytest.mark.parametrize("n,packed", [(9, True), (10, False)])
def test_long_words_fall_back_to_tuple_index(n, packed):
    # 19 letters in base 11 no longer fit a 62-bit key
    r = typeD_example_word(n)
    g = build_graph(r.element)
    assert (g.keys is not None) == packed
    assert g.nvertices == 2 and diameter(g).value == 1
    assert g.vertex(r) in (0, 1)


def test_binary_cache_round_trip(tmp_path):
    g = build_graph(w0("B3"))
    element, words, indptr, indices = graph_from_bytes(graph_to_bytes(g))
    assert element == g.element
    assert np.array_equal(words, g.words)
    assert np.array_equal(indptr, g.indptr) and np.array_equal(indices, g.indices)
    path = save_graph(g, tmp_path)
    assert path == cache_path(tmp_path, g.element) and path.exists()
    g2 = load_graph(g.element, tmp_path)
    assert np.array_equal(g2.orient, g.orient) and np.array_equal(g2.ro, g.ro)
    assert diameter(g2).value == 13
    with pytest.raises(CapExceeded):
        load_graph(g.element, tmp_path, cap=10)
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".tmp-")]


def test_jsonl_dump(tmp_path):
    g = build_graph(w0("A2"))
    path = save_graph(g, tmp_path, "jsonl")
    lines = [json.loads(x) for x in path.read_text().splitlines()]
    assert lines[0] == {"element": "3,2,1", "type": "A2", "vertices": 2, "edges": 1}
    assert lines[1] == {"vertex": 0, "word": "1,2,1", "neighbors": [1]}


def test_bad_cache_file():
    with pytest.raises(ValueError):
        graph_from_bytes(b"nope")
