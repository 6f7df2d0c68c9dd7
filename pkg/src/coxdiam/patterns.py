"""Classical permutation patterns and the a_p / b_p coefficient table."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import DEFAULT_VERTEX_CAP, build_graph, diameter
from .l2 import rank_two_subsystems_of, separation
from .roots import CoxeterType, GroupElement, TypeMismatch
from .words import CapExceeded, root_ordering, word_r1, word_r2


@dataclass(frozen=True, order=True)
class Pattern:
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a permutation")
        object.__setattr__(self, "window", w)

    def __len__(self):
        return len(self.window)

    def inverse(self) -> Pattern:
        inv = [0] * len(self.window)
        for i, x in enumerate(self.window, start=1):
            inv[x - 1] = i
        return Pattern(tuple(inv))

    def as_element(self) -> GroupElement:
        return as_permutation(self.window)

    def __str__(self):
        return "".join(map(str, self.window)) if len(self.window) < 10 else ",".join(map(str, self.window))

    @classmethod
    def parse(cls, text: str) -> Pattern:
        text = text.strip()
        return cls(tuple(int(c) for c in (text.split(",") if "," in text else text)))


def as_permutation(window) -> GroupElement:
    w = tuple(window)
    if not w:
        raise ValueError("empty permutation")
    if len(w) == 1:
        raise ValueError("S_1 has no Coxeter type A_0 here; use n >= 2")
    return GroupElement(CoxeterType("A", len(w) - 1), w)


def _window(w) -> tuple[int, ...]:
    if isinstance(w, GroupElement):
        if w.ctype.family != "A":
            raise TypeMismatch("patterns are defined for permutations (type A)")
        return w.window
    if isinstance(w, Pattern):
        return w.window
    return tuple(w)


def _std(values) -> tuple[int, ...]:
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def occurrences(w, p):
    x, pw = _window(w), _window(p)
    for idx in itertools.combinations(range(len(x)), len(pw)):
        if _std([x[i] for i in idx]) == pw:
            yield idx


def count_pattern(w, p) -> int:
    """N_p(w): number of position subsets whose values are order-isomorphic to p."""
    return sum(1 for _ in occurrences(w, p))


def inverse_pattern_identity_check(w, p) -> bool:
    x = _window(w)
    pw = Pattern(_window(p))
    xinv = Pattern(x).inverse().window
    return count_pattern(x, pw) == count_pattern(xinv, pw.inverse())


BUILTIN_TABLE = {
    Pattern((3, 2, 1)): (1, 1),
    Pattern((4, 3, 2, 1)): (2, 3),
    Pattern((4, 3, 1, 2)): (1, 2),
    Pattern((4, 2, 3, 1)): (2, 2),
    Pattern((4, 2, 1, 3)): (1, 1),
    Pattern((4, 1, 3, 2)): (0, 1),
    Pattern((3, 4, 2, 1)): (1, 2),
    Pattern((3, 4, 1, 2)): (1, 2),
    Pattern((3, 2, 4, 1)): (0, 1),
    Pattern((3, 1, 4, 2)): (1, 1),
    Pattern((2, 4, 3, 1)): (1, 1),
    Pattern((2, 4, 1, 3)): (1, 1),
    Pattern((2, 1, 4, 3)): (1, 1),
}

EQUALITY_OBSTRUCTIONS = tuple(Pattern(p) for p in ((3, 2, 1), (3, 1, 4, 2), (2, 4, 1, 3), (2, 1, 4, 3)))


def builtin_coefficient_table() -> dict[Pattern, tuple[int, int]]:
    return dict(BUILTIN_TABLE)


class MismatchAgainstBuiltin(AssertionError):
    pass


def _covering_subsystems(p: Pattern):
    """Subsystems of L2(p) whose roots touch every value of p."""
    full = set(range(1, len(p) + 1))
    out = []
    for psi in rank_two_subsystems_of(p.as_element()):
        touched = {x for r in psi.proots for x in (r.i, r.j)}
        if touched == full:
            out.append(psi)
    return out


def recompute_coefficient_table(check: bool = True) -> dict[Pattern, tuple[int, int]]:
    """Derive (a_p, b_p) for 321 and every pattern of length four.

    b_p counts the subsystems that use all letters of p; a_p counts those
    crossed in opposite orders by r1(p) and r2(p).  Patterns with b_p = 0
    are dropped.
    """
    table = {}
    candidates = [Pattern((3, 2, 1))] + [Pattern(q) for q in itertools.permutations(range(1, 5))]
    for p in candidates:
        subs = _covering_subsystems(p)
        if not subs:
            continue
        w = p.as_element()
        o1 = root_ordering(word_r1(w))
        o2 = root_ordering(word_r2(w))
        a = sum(1 for psi in subs if [r for r in o1 if r in psi.proots] != [r for r in o2 if r in psi.proots])
        table[p] = (a, len(subs))
    if check and table != BUILTIN_TABLE:
        diff = {str(k): (table.get(k), BUILTIN_TABLE.get(k)) for k in set(table) | set(BUILTIN_TABLE)
                if table.get(k) != BUILTIN_TABLE.get(k)}
        raise MismatchAgainstBuiltin(f"recomputed table differs: {diff}")
    return table


def table_tsv(table=None) -> str:
    table = BUILTIN_TABLE if table is None else table
    rows = ["pattern\ta\tb"]
    for p in sorted(table, key=lambda q: (len(q), tuple(-x for x in q.window))):
        a, b = table[p]
        rows.append(f"{p}\t{a}\t{b}")
    return "\n".join(rows) + "\n"


def check_sum_identities(w: GroupElement) -> dict:
    """Compare |L2(r1, r2)| and |L2(w)| with their pattern expansions."""
    x = _window(w)
    lhs_a = len(separation(word_r1(w), word_r2(w)))
    lhs_b = len(rank_two_subsystems_of(w))
    counts = {p: count_pattern(x, p) for p in BUILTIN_TABLE}
    rhs_a = sum(a * counts[p] for p, (a, _) in BUILTIN_TABLE.items())
    rhs_b = sum(b * counts[p] for p, (_, b) in BUILTIN_TABLE.items())
    return {"element": str(w), "lhs_a": lhs_a, "rhs_a": rhs_a, "lhs_b": lhs_b, "rhs_b": rhs_b,
            "ok": lhs_a == rhs_a and lhs_b == rhs_b}


def identity_window(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def direct_sum(w, u) -> tuple[int, ...]:
    x, y = _window(w), _window(u)
    return x + tuple(len(x) + v for v in y)


def skew_sum(w, u) -> tuple[int, ...]:
    x, y = _window(w), _window(u)
    return tuple(len(y) + v for v in x) + y


def equality_form(i: int, j: int, k: int, l: int) -> tuple[int, ...]:
    """id_i (+) (id_j (-) id_k) (+) id_l."""
    middle = skew_sum(identity_window(j), identity_window(k))
    return direct_sum(direct_sum(identity_window(i), middle), identity_window(l))


def is_equality_form(w) -> bool:
    x = _window(w)
    n = len(x)
    for i in range(n + 1):
        for j in range(n - i + 1):
            for k in range(n - i - j + 1):
                if equality_form(i, j, k, n - i - j - k) == x:
                    return True
    return False


def avoids_P(w) -> bool:
    x = _window(w)
    return all(count_pattern(x, p) == 0 for p in EQUALITY_OBSTRUCTIONS)


def conjecture_3412_check(w: GroupElement, graph_budget: int | None = DEFAULT_VERTEX_CAP,
                          source_budget: int | None = None) -> dict:
    """diam(G(w)) <= |L2(w)| - N_3412(w); inconclusive when the diameter is not exact."""
    l2 = len(rank_two_subsystems_of(w))
    n3412 = count_pattern(w, Pattern((3, 4, 1, 2)))
    bound = l2 - n3412
    try:
        g = build_graph(w, graph_budget)
    except CapExceeded as exc:
        return {"element": str(w), "diam_or_bound": None, "exact": False, "l2": l2,
                "n3412": n3412, "status": "inconclusive", "reason": str(exc)}
    d = diameter(g, source_budget)
    if d.exact:
        status = "ok" if d.value <= bound else "counterexample"
    else:
        # a lower bound above |L2| - N_3412 already refutes the inequality
        status = "counterexample" if d.value > bound else "inconclusive"
    return {"element": str(w), "diam_or_bound": d.value, "exact": d.exact, "l2": l2,
            "n3412": n3412, "status": status}


def all_permutations(n: int):
    for q in itertools.permutations(range(1, n + 1)):
        yield as_permutation(q)

