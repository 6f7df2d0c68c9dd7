import pytest
from hypothesis import given, strategies as st

from coxdiam.l2 import l2_size, separation
from coxdiam.roots import CoxeterType, GroupElement, inversion_set, longest_element
from coxdiam.words import (
    CapExceeded,
    InvalidSite,
    MoveKind,
    MoveSite,
    NotReduced,
    ReducedWord,
    antipodal_word,
    apply_move,
    count_reduced_words,
    element_of_letters,
    enumerate_reduced_words,
    enumeration_record,
    find_move_sites,
    format_word,
    parse_word,
    reduced_word_arrays,
    reverse_root_ordering,
    root_ordering,
    rro_typeD_closed_form,
    word_r1,
    word_r2,
    word_r_typeD,
)
from oracles import Oracle, sort_swaps_r1, sort_swaps_r2, syt_count
from strategies import elements, permutations_of

SMALL = [CoxeterType("A", n) for n in range(1, 5)] + [CoxeterType("B", 2), CoxeterType("B", 3),
                                                       CoxeterType("D", 4)]
ORACLES = {t: Oracle(t.family, t.rank) for t in SMALL}


def vecs(roots, m):
    return [tuple(r.vector(m)) for r in roots]


@pytest.mark.parametrize("n", range(2, 7))
def test_longest_word_count_is_staircase_tableaux(n):
    w0 = longest_element(CoxeterType("A", n - 1))
    assert count_reduced_words(w0) == syt_count(list(range(n - 1, 0, -1)))


@pytest.mark.parametrize("n", range(2, 5))
def test_typeB_longest_word_count_is_square_tableaux(n):
    assert count_reduced_words(longest_element(CoxeterType("B", n))) == syt_count([n] * n)


def test_known_counts():
    assert count_reduced_words(longest_element(CoxeterType("A", 3))) == 16
    assert count_reduced_words(longest_element(CoxeterType("D", 4))) == 2316
    w = GroupElement(CoxeterType("A", 3), (3, 4, 1, 2))
    assert count_reduced_words(w) == 2
    assert len(reduced_word_arrays(longest_element(CoxeterType("A", 5)))[0]) == 292864


@pytest.mark.parametrize("ctype", SMALL, ids=str)
def test_longest_word_sets_match_oracle(ctype):
    o = ORACLES[ctype]
    words = [r.letters for r in enumerate_reduced_words(longest_element(ctype))]
    assert words == o.reduced_words(o.longest())


@given(elements(SMALL))
def test_enumeration_matches_oracle(w):
    o = ORACLES[w.ctype]
    words, ro = reduced_word_arrays(w)
    expect = o.reduced_words(o.matrix_of_window(w.window))
    assert [tuple(x) for x in words.tolist()] == expect
    assert len(expect) == count_reduced_words(w)
    m = len(w)
    from coxdiam.roots import root_table
    tab = root_table(w.ctype)
    for row, order in zip(expect, ro.tolist()):
        assert vecs([tab.roots[k] for k in order], m) == o.root_ordering(row)


def test_example_3412_root_ordering():
    r = ReducedWord(CoxeterType("A", 3), (2, 1, 3, 2))
    assert r.element.window == (3, 4, 1, 2)
    assert [str(b) for b in root_ordering(r)] == ["e3-e2", "e3-e1", "e4-e2", "e4-e1"]
    assert [str(b) for b in reverse_root_ordering(r)] == ["e4-e1", "e4-e2", "e3-e1", "e3-e2"]


def test_typeD_small_example_with_our_labels():
    r = ReducedWord(CoxeterType("D", 4), (1, 3, 4, 3, 2))
    assert r.element.window == (4, -2, 3, -1)
    got = [str(b) for b in reverse_root_ordering(r)]
    assert got == ["e4+e2", "e4-e3", "e4+e1", "e3+e1", "e2+e1"]
    # the printed example uses the opposite names for the values 1 and 2
    printed_window = (4, -1, 3, -2)
    printed_rro = ["e4+e1", "e4-e3", "e4+e2", "e3+e2", "e2+e1"]
    swap = {1: 2, 2: 1, -1: -2, -2: -1}
    assert tuple(swap.get(x, x) for x in printed_window) == r.element.window
    relabel = str.maketrans("12", "21")
    assert sorted(s.translate(relabel).replace("e1+e2", "e2+e1") for s in printed_rro) == sorted(got)


@given(elements(SMALL))
def test_root_ordering_covers_inversion_set(w):
    for r in enumerate_reduced_words(w)[:20]:
        ro = root_ordering(r)
        assert len(set(ro)) == len(ro) == w.length()
        assert set(ro) == inversion_set(w)
        assert all(b.positive for b in ro)


@given(elements(SMALL), st.data())
def test_moves_match_oracle_and_are_involutions(w, data):
    words = enumerate_reduced_words(w)
    r = data.draw(st.sampled_from(words))
    o = ORACLES[w.ctype]
    neighbours = sorted(apply_move(r, s).letters for s in find_move_sites(r))
    assert neighbours == sorted(o.moves(r.letters))
    for site in find_move_sites(r):
        r2 = apply_move(r, site)
        assert r2.element == w
        assert apply_move(r2, site) == r
        # a move reverses the block of the root ordering it touches
        p, m = site.position - 1, int(site.kind)
        ro, ro2 = root_ordering(r), root_ordering(r2)
        assert ro2[p:p + m] == ro[p:p + m][::-1]
        assert ro2[:p] == ro[:p] and ro2[p + m:] == ro[p + m:]


def test_move_kinds():
    b = ReducedWord(CoxeterType("B", 2), (1, 2, 1, 2))
    (site,) = find_move_sites(b)
    assert site == MoveSite(1, MoveKind.BRAID4)
    assert apply_move(b, site).letters == (2, 1, 2, 1)
    a = ReducedWord(CoxeterType("A", 3), (1, 3))
    assert find_move_sites(a) == [MoveSite(1, MoveKind.COMMUTE)]
    with pytest.raises(InvalidSite):
        apply_move(a, MoveSite(1, MoveKind.BRAID3))


def test_not_reduced():
    with pytest.raises(NotReduced):
        ReducedWord(CoxeterType("A", 2), (1, 1))
    with pytest.raises(NotReduced):
        ReducedWord(CoxeterType("A", 2), (1, 2, 1, 2))


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_reduced_words(longest_element(CoxeterType("A", 4)), cap=100)


def test_word_text_round_trip():
    assert parse_word(format_word((1, 2, 1))) == (1, 2, 1)
    rec = enumeration_record(GroupElement(CoxeterType("A", 3), (3, 4, 1, 2)))
    assert rec["count"] == 2 and rec["words"] == ["2,1,3,2", "2,3,1,2"]


@given(permutations_of(2, 7))
def test_r1_r2_match_sorting_oracle(window):
    w = GroupElement(CoxeterType("A", len(window) - 1), window)
    r1, r2 = word_r1(w), word_r2(w)
    assert r1.letters == sort_swaps_r1(window)
    assert r2.letters == sort_swaps_r2(window)
    assert r1.element == w == r2.element


def test_r1_r2_of_3412():
    w = GroupElement(CoxeterType("A", 3), (3, 4, 1, 2))
    # r1 swaps (4,1), (3,1), (4,2), (3,2); r2 swaps (4,1), (4,2), (3,1), (3,2)
    rro1 = [str(b) for b in reverse_root_ordering(word_r1(w))]
    rro2 = [str(b) for b in reverse_root_ordering(word_r2(w))]
    assert rro1 == ["e4-e1", "e3-e1", "e4-e2", "e3-e2"]
    assert rro2 == ["e4-e1", "e4-e2", "e3-e1", "e3-e2"]
    # the A1xA1 pair {e3-e1, e4-e2} is crossed in opposite orders, as in the table
    assert [x for x in rro1 if x in ("e3-e1", "e4-e2")] == ["e3-e1", "e4-e2"]
    assert [x for x in rro2 if x in ("e3-e1", "e4-e2")] == ["e4-e2", "e3-e1"]


@pytest.mark.parametrize("n", range(4, 8))
def test_typeD_word_root_ordering_closed_form(n):
    r = word_r_typeD(n)
    assert r.element == longest_element(CoxeterType("D", n))
    assert reverse_root_ordering(r) == rro_typeD_closed_form(n)
    assert len(r) == n * (n - 1)


def test_typeD_word_head():
    assert word_r_typeD(4).letters[:6] == (1, 2, 3, 2, 1, 3)
    assert [str(b) for b in rro_typeD_closed_form(4)[:4]] == ["e4-e3", "e4-e2", "e4-e1", "e4+e1"]


@pytest.mark.parametrize("name", ["A3", "A4", "B3", "D4", "D5"])
def test_antipodal_word_reverses_the_ordering(name):
    ctype = CoxeterType.parse(name)
    w0 = longest_element(ctype)
    words = [word_r_typeD(5)] if name == "D5" else enumerate_reduced_words(w0)[:200]
    for r in words:
        minus = antipodal_word(r)
        assert minus.element == w0
        assert root_ordering(minus) == reverse_root_ordering(r)
        assert antipodal_word(minus) == r
    assert len(separation(words[0], antipodal_word(words[0]))) == l2_size(w0)


def test_antipodal_needs_longest():
    with pytest.raises(ValueError):
        antipodal_word(ReducedWord(CoxeterType("A", 2), (1, 2)))


def test_element_of_letters_matches_matrices():
    o = ORACLES[CoxeterType("D", 4)]
    for letters in [(1,), (2, 1), (1, 3, 4, 3, 2), (3, 1, 2, 3)]:
        assert element_of_letters(CoxeterType("D", 4), letters).window == o.window(o.matrix(letters))
