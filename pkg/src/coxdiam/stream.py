"""Graph-free accessibility sweep for longest elements.

A word r is L2-accessible exactly when no other word r' is a local minimum
of ``|L2(-, r)|``, i.e. every r' != r has a Coxeter move whose two leading
roots are crossed in the opposite order by r.  This is checked without
storing G(w0):

1. prune: for each candidate r, run greedy descents of ``|L2(-, r)|`` from
   the antipodal word -r; ending anywhere but r exhibits a local minimum.
2. verify: one more DFS over all words tests the survivors exhaustively.

Memory is O(survivors); every word is regenerated by DFS on demand.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._backend import njit
from .roots import GroupElement, longest_element, root_table
from .words import count_reduced_words


@njit
def _sites_decreasing(x, rox, L, cox, pos, strategy, rng):
    """Zero-based site whose move lowers |L2(x, r)|, or -1."""
    chosen = -1
    seen = 0
    for p in range(L - 1):
        a = x[p]
        b = x[p + 1]
        mab = cox[a, b]
        if mab < 2 or p + mab > L:
            continue
        ok = True
        for t in range(2, mab):
            if x[p + t] != (a if t % 2 == 0 else b):
                ok = False
                break
        if not ok or pos[rox[p]] < pos[rox[p + 1]]:
            continue
        if strategy == 0:
            return p
        seen += 1
        if strategy == 1:
            chosen = p
        else:
            rng[0] ^= (rng[0] << np.uint64(13))
            rng[0] ^= (rng[0] >> np.uint64(7))
            rng[0] ^= (rng[0] << np.uint64(17))
            if rng[0] % np.uint64(seen) == 0:
                chosen = p
    return chosen


@njit
def _apply_site(x, rox, p, cox):
    a = x[p]
    b = x[p + 1]
    mab = cox[a, b]
    for t in range(mab):
        x[p + t] = b if t % 2 == 0 else a
    lo = p
    hi = p + mab - 1
    while lo < hi:
        tmp = rox[lo]
        rox[lo] = rox[hi]
        rox[hi] = tmp
        lo += 1
        hi -= 1


@njit
def _word_ro(x, L, m, gkind, gp, gq, diff, diff_sign, single, single_sign, out):
    v = np.arange(1, m + 1).astype(np.int64)
    for t in range(L):
        r, _ = kernels.gen_root(v, x[t], m, gkind, gp, gq, diff, diff_sign, single, single_sign)
        out[t] = r
        kernels.apply_gen(v, x[t], gkind, gp, gq)


@njit
def _prune(uinv, L, n, nroots, cox, involution, strategies, seed, max_keep,
           m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    u = uinv.copy()
    v = np.arange(1, m + 1).astype(np.int64)
    cur = np.zeros(L, dtype=np.int64)
    curro = np.zeros(L, dtype=np.int64)
    choice = np.zeros(L + 1, dtype=np.int64)
    state = np.zeros(2, dtype=np.int64)
    pos = np.zeros(nroots, dtype=np.int64)
    x = np.zeros(L, dtype=np.int64)
    rox = np.zeros(L, dtype=np.int64)
    start = np.zeros(L, dtype=np.int64)
    start_ro = np.zeros(L, dtype=np.int64)
    rng = np.zeros(1, dtype=np.uint64)
    keep_idx = np.zeros(max_keep, dtype=np.int64)
    keep_words = np.zeros((max_keep, L), dtype=np.int8)
    nkeep = 0
    overflow = 0
    k = 0
    while kernels.dfs_step(u, v, cur, curro, choice, state, L, n,
                           m, gkind, gp, gq, diff, diff_sign, single, single_sign):
        for t in range(L):
            pos[curro[t]] = t
            start[t] = involution[cur[L - 1 - t]]
        _word_ro(start, L, m, gkind, gp, gq, diff, diff_sign, single, single_sign, start_ro)
        survived = True
        for si in range(len(strategies)):
            for t in range(L):
                x[t] = start[t]
                rox[t] = start_ro[t]
            rng[0] = np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15) * np.uint64(k + 1) + np.uint64(si)
            if rng[0] == 0:
                rng[0] = np.uint64(1)
            while True:
                p = _sites_decreasing(x, rox, L, cox, pos, strategies[si], rng)
                if p < 0:
                    break
                _apply_site(x, rox, p, cox)
            for t in range(L):
                if x[t] != cur[t]:
                    survived = False
                    break
            if not survived:
                break
        if survived:
            if nkeep < max_keep:
                keep_idx[nkeep] = k
                for t in range(L):
                    keep_words[nkeep, t] = cur[t]
                nkeep += 1
            else:
                overflow += 1
        k += 1
    return k, keep_idx[:nkeep], keep_words[:nkeep], overflow


@njit
def _verify(uinv, L, n, nroots, cox, cand_words,
            m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    C = len(cand_words)
    pos = np.zeros((C, nroots), dtype=np.int64)
    ro_c = np.zeros(L, dtype=np.int64)
    for c in range(C):
        _word_ro(cand_words[c].astype(np.int64), L, m, gkind, gp, gq,
                 diff, diff_sign, single, single_sign, ro_c)
        for t in range(L):
            pos[c, ro_c[t]] = t
    witness = np.full(C, -1, dtype=np.int64)
    alive = C
    u = uinv.copy()
    v = np.arange(1, m + 1).astype(np.int64)
    cur = np.zeros(L, dtype=np.int64)
    curro = np.zeros(L, dtype=np.int64)
    choice = np.zeros(L + 1, dtype=np.int64)
    state = np.zeros(2, dtype=np.int64)
    lead = np.zeros(L, dtype=np.int64)
    follow = np.zeros(L, dtype=np.int64)
    k = 0
    while alive > 0 and kernels.dfs_step(u, v, cur, curro, choice, state, L, n,
                                         m, gkind, gp, gq, diff, diff_sign, single, single_sign):
        ns = 0
        for p in range(L - 1):
            a = cur[p]
            b = cur[p + 1]
            mab = cox[a, b]
            if mab < 2 or p + mab > L:
                continue
            ok = True
            for t in range(2, mab):
                if cur[p + t] != (a if t % 2 == 0 else b):
                    ok = False
                    break
            if ok:
                lead[ns] = curro[p]
                follow[ns] = curro[p + 1]
                ns += 1
        for c in range(C):
            if witness[c] >= 0:
                continue
            local_min = True
            for s in range(ns):
                if pos[c, lead[s]] > pos[c, follow[s]]:
                    local_min = False
                    break
            if not local_min:
                continue
            same = True
            for t in range(L):
                if cand_words[c, t] != cur[t]:
                    same = False
                    break
            if not same:
                witness[c] = k
                alive -= 1
        k += 1
    return witness


@dataclass
class StreamResult:
    element: GroupElement
    total_words: int
    survivors_after_pruning: int
    accessible: list[int]
    accessible_words: list[tuple[int, ...]]
    witnesses: dict[int, int] = field(default_factory=dict)
    prune_seconds: float = 0.0
    verify_seconds: float = 0.0


def stream_accessible(ctype, strategies=(0, 1, 2, 2), seed: int = 12345,
                      max_survivors: int = 1_000_000) -> StreamResult:
    """All L2-accessible reduced words of w0(ctype), by vertex index.

    ``strategies`` lists the greedy descents tried per candidate: 0 takes
    the first decreasing move, 1 the last, 2 a pseudo-random one.
    """
    w0 = longest_element(ctype)
    tab = root_table(ctype)
    L = w0.length()
    n = ctype.rank
    uinv = np.array(w0.inverse().window, dtype=np.int64)
    strat = np.array(strategies, dtype=np.int64)
    t0 = time.perf_counter()
    total, idx, cand, overflow = _prune(uinv, L, n, tab.nroots, tab.coxeter, tab.involution,
                                        strat, seed, max_survivors, *tab.kernel_args())
    t1 = time.perf_counter()
    if overflow:
        raise MemoryError(f"{overflow} survivors beyond max_survivors={max_survivors}")
    if total != count_reduced_words(w0):
        raise RuntimeError("streaming enumeration disagrees with the word count")
    witness = _verify(uinv, L, n, tab.nroots, tab.coxeter, cand, *tab.kernel_args())
    t2 = time.perf_counter()
    acc = [int(idx[c]) for c in range(len(idx)) if witness[c] < 0]
    return StreamResult(
        element=w0,
        total_words=int(total),
        survivors_after_pruning=len(idx),
        accessible=acc,
        accessible_words=[tuple(int(g) for g in cand[c]) for c in range(len(idx)) if witness[c] < 0],
        witnesses={int(idx[c]): int(witness[c]) for c in range(len(idx)) if witness[c] >= 0},
        prune_seconds=t1 - t0,
        verify_seconds=t2 - t1,
    )
