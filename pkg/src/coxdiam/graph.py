"""The reduced-word graph G(w): distances, diameters, L2-accessibility."""

from __future__ import annotations

import json
import os
import struct
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import kernels
from ._backend import njit
from .l2 import l2_ids, subsystem_catalog
from .roots import CoxeterType, GroupElement, format_window, root_table
from .words import CapExceeded, ReducedWord, format_word, reduced_word_arrays

DEFAULT_VERTEX_CAP = 50_000
DEFAULT_SOURCE_CAP = 20_000


class BudgetExceeded(RuntimeError):
    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class DiameterResult(NamedTuple):
    value: int
    exact: bool
    sources: int


@dataclass(eq=False)
class WordGraph:
    """Vertices are the reduced words of ``element`` in lexicographic order.

    ``orient[k, s]`` records which way word k crosses the s-th subsystem of
    L2(w) (columns follow ``l2``); ``edge_flip[e]`` is the column flipped
    by the move on CSR edge e.
    """

    element: GroupElement
    words: np.ndarray
    ro: np.ndarray
    keys: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    l2: np.ndarray
    orient: np.ndarray
    edge_flip: np.ndarray

    @property
    def nvertices(self) -> int:
        return len(self.words)

    @property
    def nedges(self) -> int:
        return len(self.indices) // 2

    def word(self, k: int) -> ReducedWord:
        return ReducedWord(self.element.ctype, tuple(self.words[k].tolist()))

    def vertex(self, r) -> int:
        letters = r.letters if isinstance(r, ReducedWord) else tuple(r)
        if self.keys is None:
            if not hasattr(self, "_index"):
                self._index = _row_index(self.words)
            k = self._index.get(tuple(letters))
            if k is None:
                raise KeyError(f"{format_word(letters)} is not a reduced word of {self.element}")
            return k
        key = int(kernels.word_keys(np.array([letters], dtype=np.int8), self.base)[0])
        k = int(np.searchsorted(self.keys, key))
        if k >= len(self.keys) or self.keys[k] != key:
            raise KeyError(f"{format_word(letters)} is not a reduced word of {self.element}")
        return k

    @property
    def base(self) -> int:
        return self.element.ctype.rank + 1

    def neighbors(self, k: int) -> np.ndarray:
        return self.indices[self.indptr[k]:self.indptr[k + 1]]


def _row_index(words) -> dict:
    return {tuple(r): k for k, r in enumerate(words.tolist())}


def _keys_and_adjacency(words, cox, base):
    """``keys`` is None when words are too long to pack into int64."""
    try:
        keys = kernels.word_keys(words, base)
    except OverflowError:
        return None, *kernels.dict_adjacency(words, cox)
    return keys, *kernels.move_adjacency(words, keys, cox, base)


@njit
def _nb_edge_flips(orient, indptr, indices):
    N, S = orient.shape
    flip = np.full(len(indices), -1, dtype=np.int32)
    for k in range(N):
        for e in range(indptr[k], indptr[k + 1]):
            j = indices[e]
            found = -1
            for s in range(S):
                if orient[k, s] != orient[j, s]:
                    if found >= 0:
                        found = -2
                        break
                    found = s
            flip[e] = found
    return flip


def _np_edge_flips(orient, indptr, indices):
    src = np.repeat(np.arange(len(indptr) - 1), np.diff(indptr))
    flip = np.full(len(indices), -1, dtype=np.int32)
    step = 1 << 16
    for a in range(0, len(indices), step):
        d = orient[src[a:a + step]] != orient[indices[a:a + step]]
        cnt = d.sum(axis=1)
        flip[a:a + step] = np.where(cnt == 1, d.argmax(axis=1), np.where(cnt == 0, -1, -2))
    return flip


def build_graph(w: GroupElement, cap: int | None = DEFAULT_VERTEX_CAP) -> WordGraph:
    words, ro = reduced_word_arrays(w, cap)
    tab = root_table(w.ctype)
    base = w.ctype.rank + 1
    keys, indptr, indices = _keys_and_adjacency(words, tab.coxeter, base)
    ids = l2_ids(w)
    cat = subsystem_catalog(w.ctype)
    orient = kernels.orientations(ro, tab.nroots, cat.pairs[ids])
    flips = (_nb_edge_flips if kernels.USE_NUMBA else _np_edge_flips)(orient, indptr, indices)
    if len(flips) and flips.min() < 0:
        raise AssertionError("edge law violated: a Coxeter move did not flip exactly one subsystem")
    return WordGraph(w, words, ro, keys, indptr, indices, ids, orient, flips)


def distances_from(g: WordGraph, a: int) -> np.ndarray:
    return kernels.bfs(g.indptr, g.indices, a)


def distance(g: WordGraph, a: int, b: int) -> int:
    return int(distances_from(g, a)[b])


def separation_counts(g: WordGraph, a: int) -> np.ndarray:
    """|L2(a, k)| for every vertex k."""
    return (g.orient != g.orient[a]).sum(axis=1)


def diameter(g: WordGraph, budget: int | None = None, sources=None) -> DiameterResult:
    """Exact diameter by BFS from every vertex, or a lower bound under ``budget``.

    ``budget`` counts BFS sources; ``sources`` fixes the order they are tried.
    """
    N = g.nvertices
    order = np.arange(N) if sources is None else np.asarray(sources, dtype=np.int64)
    if sources is not None and len(np.unique(order)) < N:
        rest = np.setdiff1d(np.arange(N), order)
        order = np.concatenate([order, rest])
    if budget is not None and budget < N:
        ecc = kernels.eccentricities(g.indptr, g.indices, order[:budget])
        return DiameterResult(int(ecc.max()) if len(ecc) else 0, False, int(budget))
    ecc = kernels.eccentricities(g.indptr, g.indices, order)
    return DiameterResult(int(ecc.max()), True, N)


def is_accessible(g: WordGraph, r: int) -> bool:
    """d(r, r') == |L2(r, r')| for all r' (checked by BFS)."""
    return bool(np.array_equal(distances_from(g, r), separation_counts(g, r)))


def accessibility_defect(g: WordGraph, r: int) -> int:
    """max over r' of d(r, r') - |L2(r, r')|."""
    return int((distances_from(g, r).astype(np.int64) - separation_counts(g, r)).max())


@njit
def _nb_local_accessible(orient, indptr, indices, flips, r):
    # r is accessible iff every other vertex has a move that brings it closer
    # to r in separation count; edges change that count by exactly one.
    N = len(indptr) - 1
    for k in range(N):
        if k == r:
            continue
        ok = False
        for e in range(indptr[k], indptr[k + 1]):
            s = flips[e]
            if orient[k, s] != orient[r, s]:
                ok = True
                break
        if not ok:
            return k
    return -1


def local_minimum_witness(g: WordGraph, r: int) -> int | None:
    """A vertex other than r with no move decreasing |L2(-, r)|, if any."""
    k = _nb_local_accessible(g.orient, g.indptr, g.indices, g.edge_flip, r)
    return None if k < 0 else int(k)


def find_accessible(g: WordGraph, budget: int | None = None) -> int | None:
    """First L2-accessible vertex in index order, or None.

    Raises BudgetExceeded when ``budget`` candidates were rejected without
    exhausting the vertex set.
    """
    for r in range(g.nvertices):
        if budget is not None and r >= budget:
            raise BudgetExceeded(f"no accessible word among the first {budget} vertices")
        if local_minimum_witness(g, r) is None:
            return r
    return None


def accessible_vertices(g: WordGraph) -> np.ndarray:
    return np.array([r for r in range(g.nvertices) if local_minimum_witness(g, r) is None],
                    dtype=np.int64)


# ---------------------------------------------------------------- cache files
#
# Binary layout, all little-endian:
#   magic b"CXWG", u32 version (=1), u8 family ('A'/'B'/'D'), u32 rank,
#   u32 m, i32[m] window, u64 N, u32 L, u8[N*L] words (row-major),
#   u64 nnz, i64[N+1] indptr, i32[nnz] indices.

MAGIC = b"CXWG"


def cache_path(cache_dir, w: GroupElement, fmt: str = "bin") -> Path:
    name = f"{w.ctype}_{format_window(w.window).replace('-', 'm').replace(',', '_')}"
    return Path(cache_dir) / f"{name}.{'cxwg' if fmt == 'bin' else 'jsonl'}"


def _atomic_write(path: Path, data: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def graph_to_bytes(g: WordGraph) -> bytes:
    w = g.element
    N, L = g.words.shape
    parts = [
        MAGIC,
        struct.pack("<IBII", 1, ord(w.ctype.family), w.ctype.rank, len(w.window)),
        np.asarray(w.window, dtype="<i4").tobytes(),
        struct.pack("<QI", N, L),
        g.words.astype("<u1").tobytes(),
        struct.pack("<Q", len(g.indices)),
        g.indptr.astype("<i8").tobytes(),
        g.indices.astype("<i4").tobytes(),
    ]
    return b"".join(parts)


def graph_from_bytes(data: bytes):
    """Returns ``(element, words, indptr, indices)``."""
    if data[:4] != MAGIC:
        raise ValueError("not a graph cache file")
    off = 4
    version, fam, rank, m = struct.unpack_from("<IBII", data, off)
    if version != 1:
        raise ValueError(f"unsupported cache version {version}")
    off += struct.calcsize("<IBII")
    window = np.frombuffer(data, dtype="<i4", count=m, offset=off)
    off += 4 * m
    N, L = struct.unpack_from("<QI", data, off)
    off += struct.calcsize("<QI")
    words = np.frombuffer(data, dtype="<u1", count=N * L, offset=off).reshape(N, L).astype(np.int8)
    off += N * L
    (nnz,) = struct.unpack_from("<Q", data, off)
    off += 8
    indptr = np.frombuffer(data, dtype="<i8", count=N + 1, offset=off).astype(np.int64)
    off += 8 * (N + 1)
    indices = np.frombuffer(data, dtype="<i4", count=nnz, offset=off).astype(np.int32)
    element = GroupElement(CoxeterType(chr(fam), rank), tuple(window.tolist()))
    return element, words, indptr, indices


def graph_jsonl_lines(g: WordGraph):
    yield json.dumps({"element": str(g.element), "type": str(g.element.ctype),
                      "vertices": g.nvertices, "edges": g.nedges})
    for k in range(g.nvertices):
        yield json.dumps({"vertex": k, "word": format_word(g.words[k].tolist()),
                          "neighbors": g.neighbors(k).tolist()})


def save_graph(g: WordGraph, cache_dir, fmt: str = "bin") -> Path:
    path = cache_path(cache_dir, g.element, fmt)
    if fmt == "bin":
        _atomic_write(path, graph_to_bytes(g))
    else:
        _atomic_write(path, ("\n".join(graph_jsonl_lines(g)) + "\n").encode())
    return path


def load_graph(w: GroupElement, cache_dir=None, cap: int | None = DEFAULT_VERTEX_CAP) -> WordGraph:
    """Build G(w), reusing a binary cache file when one exists."""
    if cache_dir is None:
        return build_graph(w, cap)
    path = cache_path(cache_dir, w)
    if path.exists():
        element, words, indptr, indices = graph_from_bytes(path.read_bytes())
        if element == w and (cap is None or len(words) <= cap):
            return _graph_from_parts(w, words, indptr, indices)
        if element == w:
            raise CapExceeded(len(words), cap)
    g = build_graph(w, cap)
    save_graph(g, cache_dir)
    return g


def _graph_from_parts(w, words, indptr, indices) -> WordGraph:
    tab = root_table(w.ctype)
    ro = kernels.root_orderings(words, tab.kernel_args())
    try:
        keys = kernels.word_keys(words, w.ctype.rank + 1)
    except OverflowError:
        keys = None
    ids = l2_ids(w)
    orient = kernels.orientations(ro, tab.nroots, subsystem_catalog(w.ctype).pairs[ids])
    flips = (_nb_edge_flips if kernels.USE_NUMBA else _np_edge_flips)(orient, indptr, indices)
    return WordGraph(w, words, ro, keys, indptr, indices, ids, orient, flips)
