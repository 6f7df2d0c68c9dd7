from hypothesis import strategies as st

from coxdiam.roots import CoxeterType, GroupElement

TYPES = [CoxeterType("A", n) for n in range(1, 6)] + \
        [CoxeterType("B", n) for n in range(2, 5)] + \
        [CoxeterType("D", n) for n in range(4, 6)]


@st.composite
def elements(draw, types=TYPES):
    ctype = draw(st.sampled_from(types))
    m = ctype.nletters
    perm = draw(st.permutations(range(1, m + 1)))
    if ctype.family == "A":
        return GroupElement(ctype, tuple(perm))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=m, max_size=m))
    if ctype.family == "D" and signs.count(-1) % 2:
        signs[0] = -signs[0]
    return GroupElement(ctype, tuple(s * x for s, x in zip(signs, perm)))


def permutations_of(nmin, nmax):
    return st.integers(nmin, nmax).flatmap(lambda n: st.permutations(range(1, n + 1))).map(tuple)
