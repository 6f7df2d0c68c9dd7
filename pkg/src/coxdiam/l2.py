"""Rank-two root subsystems and separation sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .roots import CoxeterType, GroupElement, Root, inversion_set, root_table
from .words import ReducedWord, root_ordering

PTYPES = {2: "A1xA1", 3: "A2", 4: "B2"}


class DifferentElements(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RankTwoSubsystem:
    ptype: str
    proots: tuple[Root, ...]

    def __post_init__(self):
        roots = tuple(sorted(self.proots))
        object.__setattr__(self, "proots", roots)
        if PTYPES.get(len(roots)) != self.ptype:
            raise ValueError(f"{len(roots)} positive roots cannot form a {self.ptype} subsystem")

    @property
    def key(self) -> tuple[str, ...]:
        return tuple(str(r) for r in self.proots)

    def __str__(self):
        return "{" + ", ".join(self.key) + "}"


SeparationSet = frozenset


def _gram_det3(a, b, C):
    """det of the Gram matrix of (a, b, c) for each row c of C; zero iff dependent."""
    aa, bb, ab = a @ a, b @ b, a @ b
    ac, bc, cc = C @ a, C @ b, np.einsum("ij,ij->i", C, C)
    return (aa * (bb * cc - bc * bc) - ab * (ab * cc - bc * ac) + ac * (ab * bc - bb * ac))


class SubsystemCatalog:
    """Every rank-two subsystem of one root system, with a pair lookup.

    ``pair_id[a, b]`` is the subsystem spanned by positive roots a and b.
    Closure is exact integer linear algebra on the {-1,0,1} root vectors.
    """

    def __init__(self, ctype: CoxeterType):
        tab = root_table(ctype)
        V = tab.vectors
        n = tab.nroots
        self.ctype = ctype
        self.pair_id = np.full((n, n), -1, dtype=np.int64)
        self.members: list[tuple[int, ...]] = []
        seen: dict[tuple[int, ...], int] = {}
        for a, b in itertools.combinations(range(n), 2):
            if self.pair_id[a, b] >= 0:
                continue
            span = tuple(np.nonzero(_gram_det3(V[a], V[b], V) == 0)[0].tolist())
            if span not in seen:
                seen[span] = len(self.members)
                self.members.append(span)
            sid = seen[span]
            for x, y in itertools.permutations(span, 2):
                self.pair_id[x, y] = sid
        self.subsystems = [
            RankTwoSubsystem(PTYPES[len(s)], tuple(tab.roots[k] for k in s)) for s in self.members
        ]
        # two member roots fix the orientation of a rank-two gallery
        self.pairs = np.array([s[:2] for s in self.members], dtype=np.int64).reshape(-1, 2)
        width = max((len(s) for s in self.members), default=2)
        self.member_array = np.full((len(self.members), width), -1, dtype=np.int64)
        for k, s in enumerate(self.members):
            self.member_array[k, :len(s)] = s

    def __len__(self):
        return len(self.members)

    def contained_in(self, root_mask: np.ndarray) -> np.ndarray:
        """Ids of subsystems whose positive roots all lie in the masked set."""
        ok = np.ones(len(self.members), dtype=bool)
        for col in self.member_array.T:
            ok &= (col < 0) | root_mask[np.maximum(col, 0)]
        return np.nonzero(ok)[0]


@lru_cache(maxsize=None)
def subsystem_catalog(ctype: CoxeterType) -> SubsystemCatalog:
    return SubsystemCatalog(ctype)


def inversion_mask(w: GroupElement) -> np.ndarray:
    tab = root_table(w.ctype)
    inv = inversion_set(w)
    return np.array([r in inv for r in tab.roots], dtype=bool)


def l2_ids(w: GroupElement) -> np.ndarray:
    return subsystem_catalog(w.ctype).contained_in(inversion_mask(w))


def rank_two_subsystems_of(w: GroupElement) -> SeparationSet:
    cat = subsystem_catalog(w.ctype)
    return frozenset(cat.subsystems[k] for k in l2_ids(w))


def l2_size(w: GroupElement) -> int:
    return len(l2_ids(w))


def _induced(order: list[Root], members: tuple[Root, ...]) -> list[Root]:
    want = set(members)
    return [x for x in order if x in want]


def separation(r: ReducedWord, r2: ReducedWord) -> SeparationSet:
    """Subsystems of L2(w) whose positive roots are crossed in different orders."""
    if r.ctype != r2.ctype or r.element != r2.element:
        raise DifferentElements(f"{r} and {r2} are words of different elements")
    o1, o2 = root_ordering(r), root_ordering(r2)
    return frozenset(
        psi for psi in rank_two_subsystems_of(r.element)
        if _induced(o1, psi.proots) != _induced(o2, psi.proots)
    )


def symmetric_difference_law_check(r: ReducedWord, r2: ReducedWord, r3: ReducedWord) -> bool:
    """L2(r, r2) symmetric-difference L2(r, r3) == L2(r2, r3)."""
    return (separation(r, r2) ^ separation(r, r3)) == separation(r2, r3)


def l2_record(w: GroupElement) -> dict:
    subs = sorted(rank_two_subsystems_of(w), key=lambda s: s.key)
    return {
        "element": str(w),
        "type": str(w.ctype),
        "l2_size": len(subs),
        "subsystems": [list(s.key) for s in subs],
    }
