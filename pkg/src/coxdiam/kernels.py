"""Hot loops: word enumeration, move adjacency, BFS, orientation matrices.

Each public function dispatches on ``_backend.USE_NUMBA``: the ``_nb_*``
loops are compiled with numba, the ``_np_*`` versions are vectorised numpy
and serve as the fallback (and as an independent cross-check in tests).
Both produce identical arrays.
"""

import numpy as np

from ._backend import USE_NUMBA, njit

# ---------------------------------------------------------------- primitives


@njit
def gen_root(v, g, m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    """Index and sign of the root ``v(alpha_g)``."""
    k = gkind[g]
    if k == 0:
        a = v[gq[g]] + m
        b = v[gp[g]] + m
        return diff[a, b], diff_sign[a, b]
    if k == 1:
        a = v[0] + m
        return single[a], single_sign[a]
    a = v[0] + m
    b = -v[1] + m
    return diff[a, b], diff_sign[a, b]


@njit
def apply_gen(v, g, gkind, gp, gq):
    """In place ``v <- v * s_g``."""
    k = gkind[g]
    if k == 0:
        p = gp[g]
        q = gq[g]
        t = v[p]
        v[p] = v[q]
        v[q] = t
    elif k == 1:
        v[0] = -v[0]
    else:
        t = v[0]
        v[0] = -v[1]
        v[1] = -t


@njit
def dfs_step(u, v, cur, curro, choice, state, L, n,
             m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    """Advance a lexicographic DFS over the reduced words of ``u^{-1}``.

    ``state[0]`` is the depth, ``state[1]`` is 1 once the search started.
    Returns True with ``cur``/``curro`` holding the next word and its root
    ordering, or False when exhausted.  ``u`` starts as the inverse of the
    element and ``v`` as the identity.
    """
    d = state[0]
    if state[1] == 1:
        if L == 0:
            return False
        d -= 1
        apply_gen(u, cur[d], gkind, gp, gq)
        apply_gen(v, cur[d], gkind, gp, gq)
    else:
        state[1] = 1
        if L == 0:
            state[0] = 0
            return True
        choice[0] = 0
    while True:
        g = choice[d] + 1
        while g <= n:
            _, s = gen_root(u, g, m, gkind, gp, gq, diff, diff_sign, single, single_sign)
            if s < 0:
                break
            g += 1
        if g <= n:
            r, _ = gen_root(v, g, m, gkind, gp, gq, diff, diff_sign, single, single_sign)
            curro[d] = r
            cur[d] = g
            choice[d] = g
            apply_gen(u, g, gkind, gp, gq)
            apply_gen(v, g, gkind, gp, gq)
            d += 1
            if d == L:
                state[0] = d
                return True
            choice[d] = 0
        else:
            if d == 0:
                state[0] = 0
                return False
            d -= 1
            apply_gen(u, cur[d], gkind, gp, gq)
            apply_gen(v, cur[d], gkind, gp, gq)


# ---------------------------------------------------------------- enumeration


@njit
def _nb_enumerate(uinv, L, n, total, m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    words = np.zeros((total, L), dtype=np.int8)
    ro = np.zeros((total, L), dtype=np.int16)
    u = uinv.copy()
    v = np.arange(1, m + 1).astype(np.int64)
    cur = np.zeros(max(L, 1), dtype=np.int64)
    curro = np.zeros(max(L, 1), dtype=np.int64)
    choice = np.zeros(L + 1, dtype=np.int64)
    state = np.zeros(2, dtype=np.int64)
    k = 0
    while dfs_step(u, v, cur, curro, choice, state, L, n,
                   m, gkind, gp, gq, diff, diff_sign, single, single_sign):
        if k < total:
            for t in range(L):
                words[k, t] = cur[t]
                ro[k, t] = curro[t]
        k += 1
    return words, ro, k


def _np_enumerate(uinv, L, n, total, m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    U = uinv[None, :].copy()
    V = np.arange(1, m + 1, dtype=np.int64)[None, :]
    W = np.zeros((1, 0), dtype=np.int8)
    R = np.zeros((1, 0), dtype=np.int16)
    for _ in range(L):
        parts = []
        for g in range(1, n + 1):
            _, su = _np_gen_root(U, g, m, gkind, gp, gq, diff, diff_sign, single, single_sign)
            sel = su < 0
            if not sel.any():
                continue
            rv, _ = _np_gen_root(V[sel], g, m, gkind, gp, gq, diff, diff_sign, single, single_sign)
            parts.append((
                _np_apply_gen(U[sel], g, gkind, gp, gq),
                _np_apply_gen(V[sel], g, gkind, gp, gq),
                np.hstack([W[sel], np.full((sel.sum(), 1), g, dtype=np.int8)]),
                np.hstack([R[sel], rv[:, None].astype(np.int16)]),
            ))
        U = np.vstack([p[0] for p in parts])
        V = np.vstack([p[1] for p in parts])
        W = np.vstack([p[2] for p in parts])
        R = np.vstack([p[3] for p in parts])
    if L:
        order = np.lexsort(W.T[::-1])
        W, R = W[order], R[order]
    return W, R, len(W)


def _np_gen_root(V, g, m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    k = gkind[g]
    if k == 0:
        a, b = V[:, gq[g]] + m, V[:, gp[g]] + m
        return diff[a, b], diff_sign[a, b]
    if k == 1:
        a = V[:, 0] + m
        return single[a], single_sign[a]
    a, b = V[:, 0] + m, -V[:, 1] + m
    return diff[a, b], diff_sign[a, b]


def _np_apply_gen(V, g, gkind, gp, gq):
    V = V.copy()
    k = gkind[g]
    if k == 0:
        p, q = gp[g], gq[g]
        V[:, [p, q]] = V[:, [q, p]]
    elif k == 1:
        V[:, 0] = -V[:, 0]
    else:
        V[:, [0, 1]] = -V[:, [1, 0]]
    return V


def enumerate_words(uinv, L, n, total, table_args):
    """All reduced words (lexicographic) of the element whose inverse is ``uinv``.

    Returns ``(words int8[N, L], root_orderings int16[N, L])``.
    """
    uinv = np.asarray(uinv, dtype=np.int64)
    fn = _nb_enumerate if USE_NUMBA else _np_enumerate
    words, ro, k = fn(uinv, L, n, total, *table_args)
    if k != total:
        raise RuntimeError(f"enumeration produced {k} words, expected {total}")
    return words, ro


# ---------------------------------------------------------------- adjacency


def word_keys(words, base):
    """Integer encoding; numeric order equals lexicographic order."""
    L = words.shape[1]
    if L and L * np.log2(base) >= 62:
        raise OverflowError("words too long for 64-bit keys")
    powers = base ** np.arange(L - 1, -1, -1, dtype=np.int64)
    return words.astype(np.int64) @ powers if L else np.zeros(len(words), dtype=np.int64)


@njit
def _site_delta(w, p, L, cox, powers):
    """(delta, span) for a move at zero-based position p, span 0 if none."""
    a = w[p]
    b = w[p + 1]
    mab = cox[a, b]
    if mab < 2 or p + mab > L:
        return 0, 0
    for t in range(2, mab):
        if w[p + t] != (a if t % 2 == 0 else b):
            return 0, 0
    delta = 0
    for t in range(mab):
        if t % 2 == 0:
            delta += (b - a) * powers[p + t]
        else:
            delta += (a - b) * powers[p + t]
    return delta, mab


@njit
def _nb_adjacency(words, keys, cox, powers):
    N, L = words.shape
    deg = np.zeros(N, dtype=np.int64)
    for k in range(N):
        for p in range(L - 1):
            _, span = _site_delta(words[k], p, L, cox, powers)
            if span:
                deg[k] += 1
    indptr = np.zeros(N + 1, dtype=np.int64)
    for k in range(N):
        indptr[k + 1] = indptr[k] + deg[k]
    indices = np.empty(indptr[N], dtype=np.int32)
    for k in range(N):
        pos = indptr[k]
        for p in range(L - 1):
            delta, span = _site_delta(words[k], p, L, cox, powers)
            if span:
                j = np.searchsorted(keys, keys[k] + delta)
                if j >= N or keys[j] != keys[k] + delta:
                    indices[pos] = -1
                else:
                    indices[pos] = j
                pos += 1
        indices[indptr[k]:indptr[k + 1]].sort()
    return indptr, indices


def _np_adjacency(words, keys, cox, powers):
    N, L = words.shape
    w = words.astype(np.int64)
    src, dst = [], []
    for p in range(L - 1):
        a, b = w[:, p], w[:, p + 1]
        mab = cox[a, b]
        for span in (2, 3, 4):
            if p + span > L:
                continue
            sel = mab == span
            for t in range(2, span):
                sel &= w[:, p + t] == (a if t % 2 == 0 else b)
            if not sel.any():
                continue
            delta = np.zeros(N, dtype=np.int64)
            for t in range(span):
                delta += ((b - a) if t % 2 == 0 else (a - b)) * powers[p + t]
            ks = np.nonzero(sel)[0]
            target = keys[ks] + delta[ks]
            j = np.searchsorted(keys, target)
            ok = (j < N) & (keys[np.minimum(j, N - 1)] == target)
            j = np.where(ok, j, -1)
            src.append(ks)
            dst.append(j)
    if not src:
        return np.zeros(N + 1, dtype=np.int64), np.zeros(0, dtype=np.int32)
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(N + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return np.cumsum(indptr), dst.astype(np.int32)


def move_adjacency(words, keys, cox, base):
    """CSR adjacency of the Coxeter-move graph on ``words`` (sorted by key)."""
    L = words.shape[1]
    powers = base ** np.arange(L - 1, -1, -1, dtype=np.int64)
    fn = _nb_adjacency if USE_NUMBA else _np_adjacency
    indptr, indices = fn(words, keys, cox, powers)
    if len(indices) and indices.min() < 0:
        raise RuntimeError("a move produced a word outside the vertex set")
    return indptr, indices


def dict_adjacency(words, cox):
    """Same CSR as move_adjacency, via a tuple index; for words too long for int64 keys."""
    rows = [tuple(r) for r in words.tolist()]
    index = {r: k for k, r in enumerate(rows)}
    indptr = [0]
    indices = []
    for r in rows:
        nb = []
        for p in range(len(r) - 1):
            a, b = r[p], r[p + 1]
            m = int(cox[a, b])
            if m < 2 or p + m > len(r):
                continue
            if any(r[p + t] != (a if t % 2 == 0 else b) for t in range(2, m)):
                continue
            run = tuple(b if t % 2 == 0 else a for t in range(m))
            nb.append(index[r[:p] + run + r[p + m:]])
        indices += sorted(nb)
        indptr.append(len(indices))
    return np.array(indptr, dtype=np.int64), np.array(indices, dtype=np.int32)


# ---------------------------------------------------------------- BFS


@njit
def _nb_bfs(indptr, indices, source):
    N = len(indptr) - 1
    dist = np.full(N, -1, dtype=np.int32)
    queue = np.empty(N, dtype=np.int64)
    dist[source] = 0
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        x = queue[head]
        head += 1
        dx = dist[x] + 1
        for e in range(indptr[x], indptr[x + 1]):
            y = indices[e]
            if dist[y] < 0:
                dist[y] = dx
                queue[tail] = y
                tail += 1
    return dist


def _np_bfs(indptr, indices, source):
    N = len(indptr) - 1
    dist = np.full(N, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    deg = np.diff(indptr)
    while len(frontier):
        level += 1
        counts = deg[frontier]
        starts = np.repeat(indptr[frontier], counts)
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        nbrs = np.unique(indices[starts + offs])
        nbrs = nbrs[dist[nbrs] < 0]
        dist[nbrs] = level
        frontier = nbrs.astype(np.int64)
    return dist


def bfs(indptr, indices, source):
    """Distances from ``source``; -1 marks unreachable vertices."""
    return (_nb_bfs if USE_NUMBA else _np_bfs)(indptr, indices, int(source))


@njit
def _nb_eccentricities(indptr, indices, sources):
    ecc = np.zeros(len(sources), dtype=np.int32)
    for t in range(len(sources)):
        ecc[t] = _nb_bfs(indptr, indices, sources[t]).max()
    return ecc


def eccentricities(indptr, indices, sources):
    sources = np.asarray(sources, dtype=np.int64)
    if USE_NUMBA:
        return _nb_eccentricities(indptr, indices, sources)
    return np.array([_np_bfs(indptr, indices, s).max() for s in sources], dtype=np.int32)


# ---------------------------------------------------------------- orientations


@njit
def _nb_orientations(ro, nroots, pairs):
    N, L = ro.shape
    S = len(pairs)
    out = np.zeros((N, S), dtype=np.bool_)
    pos = np.zeros(nroots, dtype=np.int64)
    for k in range(N):
        for t in range(L):
            pos[ro[k, t]] = t
        for s in range(S):
            out[k, s] = pos[pairs[s, 0]] < pos[pairs[s, 1]]
    return out


def _np_orientations(ro, nroots, pairs):
    N, L = ro.shape
    pos = np.zeros((N, nroots), dtype=np.int64)
    pos[np.arange(N)[:, None], ro.astype(np.int64)] = np.arange(L)
    return pos[:, pairs[:, 0]] < pos[:, pairs[:, 1]]


def orientations(ro, nroots, pairs):
    """``out[k, s]``: does word k cross root ``pairs[s,0]`` before ``pairs[s,1]``."""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    return (_nb_orientations if USE_NUMBA else _np_orientations)(ro, nroots, pairs)


# ---------------------------------------------------------------- root orderings


@njit
def _nb_root_orderings(words, m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    N, L = words.shape
    ro = np.zeros((N, L), dtype=np.int16)
    bad = 0
    v = np.zeros(m, dtype=np.int64)
    for k in range(N):
        for i in range(m):
            v[i] = i + 1
        for t in range(L):
            g = words[k, t]
            r, s = gen_root(v, g, m, gkind, gp, gq, diff, diff_sign, single, single_sign)
            if s < 0:
                bad += 1
            ro[k, t] = r
            apply_gen(v, g, gkind, gp, gq)
    return ro, bad


def _np_root_orderings(words, m, gkind, gp, gq, diff, diff_sign, single, single_sign):
    N, L = words.shape
    V = np.tile(np.arange(1, m + 1, dtype=np.int64), (N, 1))
    ro = np.zeros((N, L), dtype=np.int16)
    bad = 0
    for t in range(L):
        for g in np.unique(words[:, t]):
            sel = words[:, t] == g
            r, s = _np_gen_root(V[sel], g, m, gkind, gp, gq, diff, diff_sign, single, single_sign)
            bad += int((s < 0).sum())
            ro[sel, t] = r
            V[sel] = _np_apply_gen(V[sel], g, gkind, gp, gq)
    return ro, bad


def root_orderings(words, table_args):
    """Root ordering of every row of ``words``; raises if some row is not reduced."""
    fn = _nb_root_orderings if USE_NUMBA else _np_root_orderings
    ro, bad = fn(words, *table_args)
    if bad:
        raise ValueError("some words are not reduced")
    return ro
