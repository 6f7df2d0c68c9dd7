"""Root systems of types A, B, D and signed permutations.

Conventions (Dynkin labels as in the usual pictures, node 1 at the short or
forked end):

* ``A`` of rank n acts on n+1 letters, ``alpha_i = e_{i+1} - e_i``.
* ``B`` of rank n: ``alpha_1 = e_1``, ``alpha_i = e_i - e_{i-1}``.
* ``D`` of rank n: ``alpha_1 = e_1 + e_2``, ``alpha_i = e_i - e_{i-1}``.

Group elements are stored by their window ``w(1), ..., w(m)``; ``w(-i) = -w(i)``
is implicit.  Every value here is immutable.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

FAMILIES = ("A", "B", "D")
MIN_RANK = {"A": 1, "B": 2, "D": 4}


class TypeMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CoxeterType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if int(self.rank) != self.rank or self.rank < MIN_RANK[self.family]:
            raise ValueError(f"{self.family}{self.rank}: rank must be >= {MIN_RANK[self.family]}")

    @property
    def nletters(self) -> int:
        return self.rank + 1 if self.family == "A" else self.rank

    def coxeter_m(self, i: int, j: int) -> int:
        """Order of s_i s_j."""
        if i == j:
            return 1
        a, b = min(i, j), max(i, j)
        if self.family == "A":
            return 3 if b - a == 1 else 2
        if self.family == "B":
            if (a, b) == (1, 2):
                return 4
            return 3 if b - a == 1 else 2
        # D: 1 and 2 both hang off node 3
        if (a, b) == (1, 2):
            return 2
        if a in (1, 2) and b == 3:
            return 3
        return 3 if b - a == 1 and a >= 2 else 2

    def diagram_involution(self, i: int) -> int:
        """Node map induced by conjugation with the longest element."""
        if self.family == "A":
            return self.rank + 1 - i
        if self.family == "D" and self.rank % 2 == 1 and i in (1, 2):
            return 3 - i
        return i

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> CoxeterType:
        text = text.strip().upper()
        return cls(text[0], int(text[1:]))


class RootKind(enum.IntEnum):
    DIFF = 0    # e_j - e_i
    SUM = 1     # e_j + e_i
    SINGLE = 2  # e_i


@dataclass(frozen=True, order=True)
class Root:
    """A root ``sign * (e_j -/+ e_i)`` or ``sign * e_i`` with ``i < j``.

    For SINGLE roots only ``i`` is used and ``j`` is 0.
    """

    kind: RootKind
    i: int
    j: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kind == RootKind.SINGLE:
            if self.i < 1 or self.j != 0:
                raise ValueError(f"bad single root index {self.i}")
        elif not 1 <= self.i < self.j:
            raise ValueError(f"root indices must satisfy 1 <= i < j, got {self.i}, {self.j}")

    @property
    def positive(self) -> bool:
        return self.sign == 1

    def __neg__(self) -> Root:
        return Root(self.kind, self.i, self.j, -self.sign)

    def canonical(self) -> Root:
        return self if self.sign == 1 else -self

    def vector(self, m: int) -> tuple[int, ...]:
        v = [0] * m
        if self.kind == RootKind.SINGLE:
            v[self.i - 1] = self.sign
        else:
            v[self.j - 1] = self.sign
            v[self.i - 1] = -self.sign if self.kind == RootKind.DIFF else self.sign
        return tuple(v)

    @classmethod
    def from_vector(cls, v) -> Root:
        nz = [(k + 1, c) for k, c in enumerate(v) if c != 0]
        if len(nz) == 1 and abs(nz[0][1]) == 1:
            return cls(RootKind.SINGLE, nz[0][0], 0, nz[0][1])
        if len(nz) == 2 and all(abs(c) == 1 for _, c in nz):
            (i, ci), (j, cj) = nz
            kind = RootKind.DIFF if ci != cj else RootKind.SUM
            return cls(kind, i, j, cj)
        raise ValueError(f"{tuple(v)} is not a root")

    def __str__(self):
        if self.kind == RootKind.SINGLE:
            body = f"e{self.i}"
        else:
            op = "-" if self.kind == RootKind.DIFF else "+"
            body = f"e{self.j}{op}e{self.i}"
        return body if self.sign == 1 else f"-({body})"

    @classmethod
    def parse(cls, text: str) -> Root:
        t = text.strip().replace(" ", "")
        sign = 1
        if t.startswith("-(") and t.endswith(")"):
            sign, t = -1, t[2:-1]
        if not t.startswith("e"):
            raise ValueError(f"cannot parse root {text!r}")
        rest = t[1:]
        for op, kind in (("-", RootKind.DIFF), ("+", RootKind.SUM)):
            if op in rest:
                a, b = rest.split(op)
                j, i = int(a), int(b.lstrip("e"))
                if i > j:  # written as e_small - e_big etc.
                    if kind == RootKind.DIFF:
                        sign = -sign
                    i, j = j, i
                return cls(kind, i, j, sign)
        return cls(RootKind.SINGLE, int(rest), 0, sign)


def _check_window(ctype: CoxeterType, window) -> tuple[int, ...]:
    w = tuple(int(x) for x in window)
    m = ctype.nletters
    if len(w) != m:
        raise ValueError(f"{ctype} needs a window of {m} letters, got {len(w)}")
    if sorted(abs(x) for x in w) != list(range(1, m + 1)):
        raise ValueError(f"{w} is not a signed permutation of 1..{m}")
    neg = sum(1 for x in w if x < 0)
    if ctype.family == "A" and neg:
        raise ValueError("type A windows must be positive")
    if ctype.family == "D" and neg % 2:
        raise ValueError("type D windows need an even number of negative entries")
    return w


@dataclass(frozen=True, order=True)
class GroupElement:
    ctype: CoxeterType
    window: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", _check_window(self.ctype, self.window))

    def __call__(self, i: int) -> int:
        return self.window[i - 1] if i > 0 else -self.window[-i - 1]

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def __len__(self):
        return len(self.window)

    def inverse(self) -> GroupElement:
        return inverse(self)

    def length(self) -> int:
        return coxeter_length(self)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, len(self.window) + 1))

    def __str__(self):
        return format_window(self.window)

    @classmethod
    def from_text(cls, text: str, family: str | None = None) -> GroupElement:
        """Parse ``"4,-1,3,-2"``; rank is inferred (A on m letters has rank m-1)."""
        w = parse_window(text)
        if family is None:
            family = "A" if all(x > 0 for x in w) else "B"
        family = family.upper()
        rank = len(w) - 1 if family == "A" else len(w)
        return cls(CoxeterType(family, rank), w)


def parse_window(text: str) -> tuple[int, ...]:
    text = text.strip()
    if "," not in text and text.isdigit() and len(text) > 1:
        return tuple(int(c) for c in text)  # compact "3412"
    return tuple(int(x) for x in text.split(",") if x.strip())


def format_window(w) -> str:
    return ",".join(str(int(x)) for x in w)


def identity(ctype: CoxeterType) -> GroupElement:
    return GroupElement(ctype, tuple(range(1, ctype.nletters + 1)))


def simple_reflection(ctype: CoxeterType, i: int) -> GroupElement:
    if not 1 <= i <= ctype.rank:
        raise ValueError(f"generator {i} out of range for {ctype}")
    w = list(range(1, ctype.nletters + 1))
    if ctype.family == "A":
        w[i - 1], w[i] = w[i], w[i - 1]
    elif i >= 2:
        w[i - 2], w[i - 1] = w[i - 1], w[i - 2]
    elif ctype.family == "B":
        w[0] = -1
    else:
        w[0], w[1] = -2, -1
    return GroupElement(ctype, tuple(w))


def right_multiply_simple(window: tuple[int, ...], family: str, i: int) -> tuple[int, ...]:
    """Window of ``w * s_i`` (acts on positions)."""
    w = list(window)
    if family == "A":
        w[i - 1], w[i] = w[i], w[i - 1]
    elif i >= 2:
        w[i - 2], w[i - 1] = w[i - 1], w[i - 2]
    elif family == "B":
        w[0] = -w[0]
    else:
        w[0], w[1] = -w[1], -w[0]
    return tuple(w)


def multiply(w: GroupElement, u: GroupElement) -> GroupElement:
    """Composition ``(w u)(i) = w(u(i))``."""
    if w.ctype != u.ctype:
        raise TypeMismatch(f"cannot multiply {w.ctype} by {u.ctype}")
    return GroupElement(w.ctype, tuple(w(x) for x in u.window))


def inverse(w: GroupElement) -> GroupElement:
    inv = [0] * len(w.window)
    for i, x in enumerate(w.window, start=1):
        inv[abs(x) - 1] = i if x > 0 else -i
    return GroupElement(w.ctype, tuple(inv))


def longest_element(ctype: CoxeterType) -> GroupElement:
    m = ctype.nletters
    if ctype.family == "A":
        return GroupElement(ctype, tuple(range(m, 0, -1)))
    if ctype.family == "B":
        return GroupElement(ctype, tuple(-i for i in range(1, m + 1)))
    first = 1 if m % 2 == 1 else -1  # (-1)^(n+1)
    return GroupElement(ctype, (first,) + tuple(-i for i in range(2, m + 1)))


def simple_roots(ctype: CoxeterType) -> list[Root]:
    n = ctype.rank
    if ctype.family == "A":
        return [Root(RootKind.DIFF, i, i + 1) for i in range(1, n + 1)]
    first = Root(RootKind.SINGLE, 1) if ctype.family == "B" else Root(RootKind.SUM, 1, 2)
    return [first] + [Root(RootKind.DIFF, i - 1, i) for i in range(2, n + 1)]


def positive_roots(ctype: CoxeterType) -> list[Root]:
    """All positive roots in canonical sorted order."""
    m = ctype.nletters
    roots = [Root(RootKind.DIFF, i, j) for i, j in itertools.combinations(range(1, m + 1), 2)]
    if ctype.family in ("B", "D"):
        roots += [Root(RootKind.SUM, i, j) for i, j in itertools.combinations(range(1, m + 1), 2)]
    if ctype.family == "B":
        roots += [Root(RootKind.SINGLE, i) for i in range(1, m + 1)]
    return sorted(roots)


def all_roots(ctype: CoxeterType) -> list[Root]:
    pos = positive_roots(ctype)
    return pos + [-r for r in pos]


def act(w: GroupElement, beta: Root) -> Root:
    """Image of ``beta`` under ``w`` using ``w(e_i) = e_{w(i)}``."""
    m = len(w.window)
    idx = beta.j if beta.kind != RootKind.SINGLE else beta.i
    if idx > m:
        raise TypeMismatch(f"root {beta} does not live in {w.ctype}")
    if beta.kind == RootKind.SINGLE and w.ctype.family != "B":
        raise TypeMismatch(f"short root {beta} only exists in type B")
    if beta.kind == RootKind.SUM and w.ctype.family == "A":
        raise TypeMismatch(f"root {beta} does not exist in type A")
    v = beta.vector(m)
    out = [0] * m
    for i, c in enumerate(v, start=1):
        if c:
            x = w(i)
            out[abs(x) - 1] += c if x > 0 else -c
    return Root.from_vector(out)


def inversion_set(w: GroupElement) -> frozenset[Root]:
    """Positive roots made negative by w^-1, i.e. the values a reduced word swaps.

    This is the set every root ordering of w runs through.
    """
    winv = inverse(w)
    return frozenset(a for a in positive_roots(w.ctype) if not act(winv, a).positive)


def coxeter_length(w: GroupElement) -> int:
    x = w.window
    m = len(x)
    inv = sum(1 for i in range(m) for j in range(i + 1, m) if x[i] > x[j])
    if w.ctype.family == "A":
        return inv
    nsum = sum(1 for i in range(m) for j in range(i + 1, m) if x[i] + x[j] < 0)
    if w.ctype.family == "D":
        return inv + nsum
    return inv + nsum + sum(1 for v in x if v < 0)


class RootTable:
    """Integer lookup tables over the positive roots of one type.

    ``diff[a + m, b + m]`` is the index of the positive root ``+-(e_a - e_b)``
    for signed letters a, b (with ``e_{-k} = -e_k``) and ``diff_sign`` its sign;
    ``single``/``single_sign`` do the same for ``e_a``.  Generator ``g`` is
    described by ``gkind[g]`` (0 swap, 1 negate first, 2 swap-and-negate the
    first two) acting on zero-based positions ``gp[g], gq[g]``.
    """

    def __init__(self, ctype: CoxeterType):
        self.ctype = ctype
        m = self.m = ctype.nletters
        self.roots = positive_roots(ctype)
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.vectors = np.array([r.vector(m) for r in self.roots], dtype=np.int64)
        size = 2 * m + 1
        self.diff = np.full((size, size), -1, dtype=np.int64)
        self.diff_sign = np.zeros((size, size), dtype=np.int64)
        self.single = np.full(size, -1, dtype=np.int64)
        self.single_sign = np.zeros(size, dtype=np.int64)
        letters = [x for x in range(-m, m + 1) if x]
        for a in letters:
            for b in letters:
                if abs(a) == abs(b):
                    continue
                v = [0] * m
                v[abs(a) - 1] += 1 if a > 0 else -1
                v[abs(b) - 1] -= 1 if b > 0 else -1
                r = Root.from_vector(v)
                c = r.canonical()
                if c in self.index:
                    self.diff[a + m, b + m] = self.index[c]
                    self.diff_sign[a + m, b + m] = r.sign
            if ctype.family == "B":
                self.single[a + m] = self.index[Root(RootKind.SINGLE, abs(a))]
                self.single_sign[a + m] = 1 if a > 0 else -1
        n = ctype.rank
        self.gkind = np.zeros(n + 1, dtype=np.int64)
        self.gp = np.zeros(n + 1, dtype=np.int64)
        self.gq = np.zeros(n + 1, dtype=np.int64)
        for g in range(1, n + 1):
            if ctype.family == "A":
                self.gp[g], self.gq[g] = g - 1, g
            elif g >= 2:
                self.gp[g], self.gq[g] = g - 2, g - 1
            elif ctype.family == "B":
                self.gkind[g] = 1
            else:
                self.gkind[g], self.gq[g] = 2, 1
        self.coxeter = np.array(
            [[ctype.coxeter_m(i, j) if i and j else 0 for j in range(n + 1)] for i in range(n + 1)],
            dtype=np.int64,
        )
        self.involution = np.array([0] + [ctype.diagram_involution(i) for i in range(1, n + 1)],
                                   dtype=np.int64)

    @property
    def nroots(self) -> int:
        return len(self.roots)

    def kernel_args(self):
        return (self.m, self.gkind, self.gp, self.gq,
                self.diff, self.diff_sign, self.single, self.single_sign)


@lru_cache(maxsize=None)
def root_table(ctype: CoxeterType) -> RootTable:
    return RootTable(ctype)
