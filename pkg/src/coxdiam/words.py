"""Reduced words, Coxeter moves, root orderings and distinguished words."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .roots import (
    CoxeterType,
    GroupElement,
    Root,
    RootKind,
    TypeMismatch,
    act,
    coxeter_length,
    identity,
    longest_element,
    right_multiply_simple,
    root_table,
    simple_roots,
)


class CapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} reduced words exceed the cap of {cap}")
        self.count = count
        self.cap = cap


class NotReduced(ValueError):
    pass


class InvalidSite(ValueError):
    pass


class MoveKind(enum.IntEnum):
    COMMUTE = 2
    BRAID3 = 3
    BRAID4 = 4


@dataclass(frozen=True)
class MoveSite:
    position: int  # 1-based index of the first letter of the run
    kind: MoveKind


def _product(ctype: CoxeterType, letters) -> tuple[int, ...]:
    w = identity(ctype).window
    for g in letters:
        if not 1 <= g <= ctype.rank:
            raise ValueError(f"letter {g} out of range for {ctype}")
        w = right_multiply_simple(w, ctype.family, g)
    return w


@dataclass(frozen=True, order=True)
class ReducedWord:
    ctype: CoxeterType
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(g) for g in self.letters)
        object.__setattr__(self, "letters", letters)
        w = GroupElement(self.ctype, _product(self.ctype, letters))
        if coxeter_length(w) != len(letters):
            raise NotReduced(f"{format_word(letters)} is not reduced in {self.ctype}")
        object.__setattr__(self, "_element", w)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self.letters)

    @property
    def element(self) -> GroupElement:
        return self._element

    def reversed(self) -> ReducedWord:
        return ReducedWord(self.ctype, self.letters[::-1])


def format_word(letters) -> str:
    return ",".join(str(int(g)) for g in letters)


def parse_word(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


def element_of(r: ReducedWord) -> GroupElement:
    return r.element


def element_of_letters(ctype: CoxeterType, letters) -> GroupElement:
    """Product of an arbitrary (not necessarily reduced) letter sequence."""
    return GroupElement(ctype, _product(ctype, letters))


@lru_cache(maxsize=None)
def _count(ctype: CoxeterType, window: tuple[int, ...]) -> int:
    tab = root_table(ctype)
    v = np.array(window, dtype=np.int64)
    args = tab.kernel_args()
    total = 0
    found = False
    for g in range(1, ctype.rank + 1):
        _, s = kernels.gen_root(v, g, *args)
        if s < 0:
            found = True
            total += _count(ctype, right_multiply_simple(window, ctype.family, g))
    return total if found else 1


def count_reduced_words(w: GroupElement) -> int:
    """|Red(w)| by recursion on right descents, memoised per element."""
    return _count(w.ctype, w.window)


def reduced_word_arrays(w: GroupElement, cap: int | None = None):
    """Lexicographically sorted reduced words of ``w`` and their root orderings.

    Root orderings hold indices into ``root_table(w.ctype).roots``.
    """
    total = count_reduced_words(w)
    if cap is not None and total > cap:
        raise CapExceeded(total, cap)
    tab = root_table(w.ctype)
    uinv = np.array(w.inverse().window, dtype=np.int64)
    return kernels.enumerate_words(uinv, coxeter_length(w), w.ctype.rank, total, tab.kernel_args())


def enumerate_reduced_words(w: GroupElement, cap: int | None = None) -> list[ReducedWord]:
    words, _ = reduced_word_arrays(w, cap)
    return [ReducedWord(w.ctype, tuple(row)) for row in words.tolist()]


def root_ordering(r: ReducedWord) -> list[Root]:
    """beta_j = s_{i_1}...s_{i_{j-1}} alpha_{i_j}."""
    return list(_root_ordering(r))


@lru_cache(maxsize=1 << 16)
def _root_ordering(r: ReducedWord) -> tuple[Root, ...]:
    simple = simple_roots(r.ctype)
    v = identity(r.ctype)
    out = []
    for g in r.letters:
        beta = act(v, simple[g - 1])
        if not beta.positive:
            raise NotReduced(str(r))
        out.append(beta)
        v = GroupElement(r.ctype, right_multiply_simple(v.window, r.ctype.family, g))
    return tuple(out)


def reverse_root_ordering(r: ReducedWord) -> list[Root]:
    return root_ordering(r)[::-1]


def find_move_sites(r: ReducedWord) -> list[MoveSite]:
    x = r.letters
    L = len(x)
    sites = []
    for p in range(L - 1):
        a, b = x[p], x[p + 1]
        m = r.ctype.coxeter_m(a, b)
        if m < 2 or p + m > L:
            continue
        if all(x[p + t] == (a if t % 2 == 0 else b) for t in range(2, m)):
            sites.append(MoveSite(p + 1, MoveKind(m)))
    return sites


def apply_move(r: ReducedWord, site: MoveSite) -> ReducedWord:
    if site not in find_move_sites(r):
        raise InvalidSite(f"no {site.kind.name} move at position {site.position} of {r}")
    p = site.position - 1
    m = int(site.kind)
    a, b = r.letters[p], r.letters[p + 1]
    run = tuple(b if t % 2 == 0 else a for t in range(m))
    return ReducedWord(r.ctype, r.letters[:p] + run + r.letters[p + m:])


def _sort_to_word(w: GroupElement, steps: list[int]) -> ReducedWord:
    return ReducedWord(w.ctype, tuple(reversed(steps)))


def _require_a(w: GroupElement):
    if w.ctype.family != "A":
        raise TypeMismatch("the distinguished words r1, r2 are defined in type A only")


def word_r1(w: GroupElement) -> ReducedWord:
    """Sort by moving 1 leftward as far as possible, then 2, then 3, ...

    The adjacent swaps taking w to the identity, read backwards, form the word.
    """
    _require_a(w)
    x = list(w.window)
    steps = []
    for value in range(1, len(x) + 1):
        p = x.index(value)
        while p > value - 1:
            x[p - 1], x[p] = x[p], x[p - 1]
            steps.append(p)  # s_p swaps positions p, p+1 (1-based)
            p -= 1
    return _sort_to_word(w, steps)


def word_r2(w: GroupElement) -> ReducedWord:
    """Sort by moving n rightward as far as possible, then n-1, ..."""
    _require_a(w)
    x = list(w.window)
    n = len(x)
    steps = []
    for value in range(n, 0, -1):
        p = x.index(value)
        while p < value - 1:
            x[p], x[p + 1] = x[p + 1], x[p]
            steps.append(p + 1)
            p += 1
    return _sort_to_word(w, steps)


def word_r_typeD(n: int) -> ReducedWord:
    """(s1 s2)(s3 s2 s1 s3)(s4 s3 s1 s2 s3 s4)... for the longest element of D_n.

    Factor j is ``s_j ... s_3 (core) s_3 ... s_j`` where the core is
    ``s1 s2`` for even j and ``s2 s1`` for odd j.
    """
    if n < 4:
        raise ValueError(f"type D needs rank >= 4, got {n}")
    letters = []
    for j in range(2, n + 1):
        core = [1, 2] if j % 2 == 0 else [2, 1]
        down = list(range(j, 2, -1))
        letters += down + core + down[::-1]
    ctype = CoxeterType("D", n)
    r = ReducedWord(ctype, tuple(letters))
    if r.element != longest_element(ctype):
        raise AssertionError(f"constructed word is not a reduced word of w0(D{n})")
    return r


def rro_typeD_closed_form(n: int) -> list[Root]:
    """Expected reverse root ordering of ``word_r_typeD(n)``.

    Value j is sent home first by passing j-1, ..., 1, -1, ..., -(j-1),
    for j = n down to 2.
    """
    out = []
    for j in range(n, 1, -1):
        out += [Root(RootKind.DIFF, i, j) for i in range(j - 1, 0, -1)]
        out += [Root(RootKind.SUM, i, j) for i in range(1, j)]
    return out


def antipodal_word(r: ReducedWord) -> ReducedWord:
    """The opposite gallery -r of a reduced word of the longest element."""
    if r.element != longest_element(r.ctype):
        raise ValueError("the antipodal word is defined for reduced words of w0")
    return ReducedWord(r.ctype, tuple(r.ctype.diagram_involution(g) for g in reversed(r.letters)))


def enumeration_record(w: GroupElement, cap: int | None = None) -> dict:
    words, _ = reduced_word_arrays(w, cap)
    return {
        "element": str(w),
        "type": str(w.ctype),
        "count": len(words),
        "words": [format_word(row) for row in words.tolist()],
    }
