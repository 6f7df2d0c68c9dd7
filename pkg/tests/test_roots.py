import numpy as np
import pytest
from hypothesis import given, strategies as st

from coxdiam.roots import (
    CoxeterType,
    GroupElement,
    Root,
    RootKind,
    TypeMismatch,
    act,
    all_roots,
    coxeter_length,
    identity,
    inverse,
    inversion_set,
    longest_element,
    multiply,
    parse_window,
    positive_roots,
    root_table,
    simple_reflection,
    simple_roots,
)
from oracles import Oracle
from strategies import TYPES, elements

ORACLES = {t: Oracle(t.family, t.rank) for t in TYPES}


def vec(r, m):
    return tuple(r.vector(m))


@pytest.mark.parametrize("ctype", TYPES, ids=str)
def test_root_systems_match_reflection_closure(ctype):
    o = ORACLES[ctype]
    m = ctype.nletters
    assert sorted(vec(r, m) for r in all_roots(ctype)) == o.roots
    assert sorted(vec(r, m) for r in positive_roots(ctype)) == sorted(o.positive)
    assert [vec(a, m) for a in simple_roots(ctype)] == [tuple(a) for a in o.simple]


@pytest.mark.parametrize("ctype", TYPES, ids=str)
def test_coxeter_matrix_matches_root_angles(ctype):
    o = ORACLES[ctype]
    for i in range(1, ctype.rank + 1):
        for j in range(1, ctype.rank + 1):
            if i != j:
                assert ctype.coxeter_m(i, j) == o.coxeter_m(i, j)


@pytest.mark.parametrize("ctype", TYPES, ids=str)
def test_simple_reflections_match_matrices(ctype):
    o = ORACLES[ctype]
    for i in range(1, ctype.rank + 1):
        assert simple_reflection(ctype, i).window == o.window(o.gens[i - 1])


def test_positive_root_counts():
    # n(n-1)/2, n^2, n(n-1)
    assert len(positive_roots(CoxeterType("A", 3))) == 6
    assert len(positive_roots(CoxeterType("B", 3))) == 9
    assert len(positive_roots(CoxeterType("D", 4))) == 12


def test_act_examples():
    w = GroupElement(CoxeterType("A", 3), (3, 4, 1, 2))
    assert act(w, Root.parse("e3-e1")) == -Root.parse("e3-e1")
    d = GroupElement(CoxeterType("D", 4), (4, -1, 3, -2))
    assert act(d, Root.parse("e2-e1")) == -Root.parse("e4+e1")
    for r in all_roots(CoxeterType("B", 3)):
        assert act(identity(CoxeterType("B", 3)), r) == r


def test_act_type_errors():
    w = identity(CoxeterType("A", 3))
    with pytest.raises(TypeMismatch):
        act(w, Root.parse("e3+e1"))
    with pytest.raises(TypeMismatch):
        act(identity(CoxeterType("D", 4)), Root.parse("e2"))


def test_inversion_set_examples():
    w = GroupElement(CoxeterType("A", 3), (3, 4, 1, 2))
    assert inversion_set(w) == {Root.parse(s) for s in ("e3-e1", "e3-e2", "e4-e1", "e4-e2")}
    assert inversion_set(identity(CoxeterType("D", 4))) == frozenset()


def test_inversion_set_is_value_swaps():
    # 3142 sorts by swapping values (3,1), (4,2), (3,2)
    w = GroupElement(CoxeterType("A", 3), (3, 1, 4, 2))
    assert inversion_set(w) == {Root.parse(s) for s in ("e3-e1", "e4-e2", "e3-e2")}


def test_longest_elements():
    assert longest_element(CoxeterType("A", 3)).window == (4, 3, 2, 1)
    assert longest_element(CoxeterType("B", 3)).window == (-1, -2, -3)
    assert longest_element(CoxeterType("D", 5)).window == (1, -2, -3, -4, -5)
    assert longest_element(CoxeterType("D", 4)).window == (-1, -2, -3, -4)
    assert coxeter_length(longest_element(CoxeterType("D", 4))) == 12


@pytest.mark.parametrize("ctype", TYPES, ids=str)
def test_longest_inverts_everything(ctype):
    assert inversion_set(longest_element(ctype)) == frozenset(positive_roots(ctype))
    o = ORACLES[ctype]
    assert longest_element(ctype).window == o.window(o.longest())


def test_window_validation():
    with pytest.raises(ValueError):
        GroupElement(CoxeterType("D", 4), (-1, 2, 3, 4))
    with pytest.raises(ValueError):
        GroupElement(CoxeterType("A", 2), (1, 1, 3))
    with pytest.raises(ValueError):
        GroupElement(CoxeterType("A", 2), (-1, 2, 3))
    with pytest.raises(ValueError):
        CoxeterType("D", 3)
    with pytest.raises(TypeMismatch):
        multiply(identity(CoxeterType("B", 3)), identity(CoxeterType("A", 2)))


def test_parsing_round_trips():
    assert parse_window("3412") == (3, 4, 1, 2)
    assert parse_window("4,-1,3,-2") == (4, -1, 3, -2)
    for s in ("e3-e1", "e3+e1", "e2", "-(e4-e2)"):
        assert str(Root.parse(s)) == s
    assert Root.parse("e1-e3") == -Root.parse("e3-e1")
    assert GroupElement.from_text("4,-1,3,-2", "D").ctype == CoxeterType("D", 4)


@given(elements())
def test_length_matches_matrix_oracle(w):
    o = ORACLES[w.ctype]
    M = o.matrix_of_window(w.window)
    assert coxeter_length(w) == o.length(M) == len(inversion_set(w))
    assert {vec(r, len(w)) for r in inversion_set(w)} == o.inversion_set(M)


@given(elements())
def test_group_axioms(w):
    e = identity(w.ctype)
    assert multiply(w, inverse(w)) == e == multiply(inverse(w), w)
    assert coxeter_length(w) == coxeter_length(inverse(w))


@given(elements(), st.data())
def test_act_is_an_action(w, data):
    u = data.draw(elements([w.ctype]))
    for beta in all_roots(w.ctype):
        assert act(w, act(inverse(w), beta)) == beta
        assert act(multiply(w, u), beta) == act(w, act(u, beta))


@given(elements())
def test_act_agrees_with_matrix(w):
    o = ORACLES[w.ctype]
    M = o.matrix_of_window(w.window)
    m = len(w)
    for beta in positive_roots(w.ctype):
        assert vec(act(w, beta), m) == tuple(int(c) for c in M @ np.array(vec(beta, m)))


@pytest.mark.parametrize("ctype", TYPES, ids=str)
def test_root_table_lookups(ctype):
    tab = root_table(ctype)
    assert len(tab.roots) == tab.nroots == len(positive_roots(ctype))
    for k, r in enumerate(tab.roots):
        assert tab.index[r] == k
        assert r.kind in tuple(RootKind)
