"""Per-claim verification sweeps producing machine-readable reports."""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool

import numpy as np

from .graph import (
    DEFAULT_SOURCE_CAP,
    DEFAULT_VERTEX_CAP,
    accessibility_defect,
    accessible_vertices,
    build_graph,
    diameter,
    graph_jsonl_lines,
    save_graph,
)
from .l2 import l2_record, l2_size, separation
from .patterns import (
    all_permutations,
    avoids_P,
    check_sum_identities,
    conjecture_3412_check,
    is_equality_form,
    table_tsv,
)
from .roots import CoxeterType, GroupElement, Root, RootKind, inversion_set, inverse, longest_element
from .words import (
    CapExceeded,
    ReducedWord,
    count_reduced_words,
    enumeration_record,
    format_word,
    reverse_root_ordering,
    rro_typeD_closed_form,
    word_r1,
    word_r2,
    word_r_typeD,
)

VERIFIED, COUNTEREXAMPLE, INCONCLUSIVE = "verified", "counterexample", "inconclusive"
HARD_N_MAX = {"A": 8, "B": 4, "D": 10}
EXIT_CODES = {VERIFIED: 0, COUNTEREXAMPLE: 2, INCONCLUSIVE: 3}


@dataclass
class ClaimReport:
    claim_id: str
    scope: str
    status: str
    witnesses: list = field(default_factory=list)
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in EXIT_CODES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == COUNTEREXAMPLE and not self.witnesses:
            raise ValueError("a counterexample report needs a witness")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def to_tsv(self) -> str:
        return "\t".join([self.claim_id, self.status, self.scope, f"{self.wall_time:.3f}",
                          str(len(self.witnesses))])


TSV_HEADER = "claim_id\tstatus\tscope\twall_time\twitnesses"


def overall_status(statuses) -> str:
    statuses = set(statuses)
    if COUNTEREXAMPLE in statuses:
        return COUNTEREXAMPLE
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return VERIFIED


def _check_n(family: str, n_max: int):
    if n_max > HARD_N_MAX[family]:
        raise ValueError(f"n_max={n_max} exceeds the hard cap {HARD_N_MAX[family]} for type {family}")


def _map(fn, items, jobs: int):
    # results come back in input order, so reports do not depend on --jobs
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with Pool(jobs) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (8 * jobs)))


def _report(claim_id, scope, records, t0, extra=None) -> ClaimReport:
    status = overall_status(r["status"] for r in records)
    bad = [r for r in records if r["status"] != VERIFIED]
    bad.sort(key=lambda r: (r["status"], r.get("type", ""), r["element"]))
    details = {"instances": len(records)}
    details.update(extra or {})
    return ClaimReport(claim_id, scope, status, bad, time.perf_counter() - t0, details)


def _ecc_lower_bound(g, words) -> int:
    from . import kernels
    src = np.array(sorted({g.vertex(r) for r in words}), dtype=np.int64)
    return int(kernels.eccentricities(g.indptr, g.indices, src).max())


def _graph_free_bound(w: GroupElement) -> int:
    # |L2(r1, r2)| <= d(r1, r2) and G(w), G(w^-1) are isomorphic by reversal
    best = 0
    for u in (w, inverse(w)):
        best = max(best, len(separation(word_r1(u), word_r2(u))))
    return best


# ------------------------------------------------------------ type A, lower bound

def _lower_bound_one(args) -> dict:
    window, vertex_budget, source_budget = args
    w = GroupElement(CoxeterType("A", len(window) - 1), window)
    l2 = l2_size(w)
    rec = {"element": str(w), "l2": l2}
    try:
        g = build_graph(w, vertex_budget)
    except CapExceeded:
        lb = _graph_free_bound(w)
        rec.update(diam=lb, exact=False, words=None,
                   status=VERIFIED if 2 * lb >= l2 else INCONCLUSIVE)
        return rec
    rec["words"] = g.nvertices
    if source_budget is not None and g.nvertices > source_budget:
        lb = max(_ecc_lower_bound(g, [word_r1(w), word_r2(w)]), _graph_free_bound(w))
        rec.update(diam=lb, exact=False, status=VERIFIED if 2 * lb >= l2 else INCONCLUSIVE)
        return rec
    d = diameter(g).value
    rec.update(diam=d, exact=True, status=VERIFIED if 2 * d >= l2 else COUNTEREXAMPLE)
    if rec["status"] == COUNTEREXAMPLE:
        rec["words_pair"] = [format_word(word_r1(w).letters), format_word(word_r2(w).letters)]
    return rec


def cmd_verify_thm_A_lower_bound(n_max: int, graph_budget: int | None = DEFAULT_VERTEX_CAP,
                                 source_budget: int | None = DEFAULT_SOURCE_CAP,
                                 jobs: int = 1, n_min: int = 1, windows=None) -> ClaimReport:
    """(1/2)|L2(w)| <= diam G(w) over S_n, n_min <= n <= n_max.

    Exact diameters when |Red(w)| <= source_budget; otherwise the largest
    eccentricity of r1, r2 (or |L2(r1, r2)| without a graph) certifies.
    """
    _check_n("A", n_max)
    t0 = time.perf_counter()
    if windows is None:
        windows = [q for n in range(max(n_min, 1), n_max + 1) for q in itertools.permutations(range(1, n + 1))]
    items = [(tuple(x), graph_budget, source_budget) for x in windows]
    recs = [_identity_record(x) if len(x) == 1 else None for x, *_ in items]
    todo = [i for i, r in enumerate(recs) if r is None]
    for i, r in zip(todo, _map(_lower_bound_one, [items[i] for i in todo], jobs)):
        recs[i] = r
    exact = sum(1 for r in recs if r["exact"])
    return _report("A-lower-bound", f"S_n, {n_min} <= n <= {n_max}", recs, t0,
                   {"exact_diameters": exact, "lower_bound_only": len(recs) - exact})


def _identity_record(window) -> dict:
    return {"element": ",".join(map(str, window)), "l2": 0, "diam": 0, "exact": True,
            "words": 1, "status": VERIFIED}


# ------------------------------------------------------------ type A, equality

def _equality_one(args) -> dict:
    window, vertex_budget = args
    if len(window) == 1:
        return {"element": "1", "l2": 0, "diam": 0, "equality": True, "form": True, "status": VERIFIED}
    w = GroupElement(CoxeterType("A", len(window) - 1), window)
    l2 = l2_size(w)
    form = is_equality_form(window)
    rec = {"element": str(w), "l2": l2, "form": form}
    try:
        d = diameter(build_graph(w, vertex_budget)).value
    except CapExceeded:
        rec.update(diam=None, equality=None, status=INCONCLUSIVE)
        return rec
    eq = 2 * d == l2
    rec.update(diam=d, equality=eq, status=VERIFIED if eq == form else COUNTEREXAMPLE)
    return rec


def cmd_verify_equality_cases(n_max: int, form_n_max: int | None = None,
                              graph_budget: int | None = DEFAULT_VERTEX_CAP, jobs: int = 1) -> ClaimReport:
    """Equality (1/2)|L2| = diam exactly on the equality family, plus the
    agreement of is_equality_form with avoids_P up to ``form_n_max``."""
    _check_n("A", n_max)
    t0 = time.perf_counter()
    items = [(q, graph_budget) for n in range(1, n_max + 1) for q in itertools.permutations(range(1, n + 1))]
    recs = _map(_equality_one, items, jobs)
    form_n_max = n_max if form_n_max is None else form_n_max
    disagree = 0
    for n in range(1, form_n_max + 1):
        for q in itertools.permutations(range(1, n + 1)):
            if is_equality_form(q) != avoids_P(q):
                disagree += 1
                recs.append({"element": ",".join(map(str, q)), "form": is_equality_form(q),
                             "avoids_P": avoids_P(q), "status": COUNTEREXAMPLE})
    n_eq = sum(1 for r in recs if r.get("equality"))
    return _report("A-equality", f"S_n, n <= {n_max}; form vs avoidance n <= {form_n_max}", recs, t0,
                   {"equality_cases": n_eq, "form_avoidance_disagreements": disagree})


# ------------------------------------------------------------ 3412 conjecture

def _c3412_one(args) -> dict:
    window, vertex_budget, source_budget = args
    if len(window) == 1:
        return {"element": "1", "diam_or_bound": 0, "exact": True, "l2": 0, "n3412": 0, "status": VERIFIED}
    rec = conjecture_3412_check(GroupElement(CoxeterType("A", len(window) - 1), window),
                                vertex_budget, source_budget)
    rec["status"] = {"ok": VERIFIED, "counterexample": COUNTEREXAMPLE}.get(rec["status"], INCONCLUSIVE)
    return rec


def cmd_verify_conjecture_3412(n_max: int, graph_budget: int | None = DEFAULT_VERTEX_CAP,
                               source_budget: int | None = None, jobs: int = 1) -> ClaimReport:
    _check_n("A", n_max)
    t0 = time.perf_counter()
    items = [(q, graph_budget, source_budget) for n in range(1, n_max + 1)
             for q in itertools.permutations(range(1, n + 1))]
    recs = _map(_c3412_one, items, jobs)
    tight = sum(1 for r in recs if r["exact"] and r["diam_or_bound"] == r["l2"] - r["n3412"])
    return _report("A-3412-upper-bound", f"S_n, n <= {n_max}", recs, t0, {"tight": tight})


# ------------------------------------------------------------ type B conjecture

def signed_permutations(n: int):
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield tuple(s * x for s, x in zip(signs, perm))


def _typeB_one(args) -> dict:
    window, vertex_budget, source_budget = args
    w = GroupElement(CoxeterType("B", len(window)), window)
    l2 = l2_size(w)
    rec = {"element": str(w), "type": str(w.ctype), "l2": l2}
    try:
        g = build_graph(w, vertex_budget)
    except CapExceeded:
        rec.update(diam=None, exact=False, status=INCONCLUSIVE)
        return rec
    d = diameter(g, source_budget)
    if d.exact:
        status = VERIFIED if 3 * d.value >= l2 else COUNTEREXAMPLE
    else:
        status = VERIFIED if 3 * d.value >= l2 else INCONCLUSIVE
    rec.update(diam=d.value, exact=d.exact, words=g.nvertices, status=status)
    return rec


def cmd_verify_typeB_conjecture(n_max: int, budget: int | None = DEFAULT_VERTEX_CAP,
                                source_budget: int | None = DEFAULT_SOURCE_CAP,
                                sample: int = 64, seed: int = 0, jobs: int = 1) -> ClaimReport:
    """(1/3)|L2(w)| <= diam G(w) in B_n: exhaustive for n <= 3, sampled at n = 4."""
    _check_n("B", n_max)
    t0 = time.perf_counter()
    windows = []
    for n in range(2, n_max + 1):
        ws = list(signed_permutations(n))
        if n >= 4 and sample < len(ws):
            ws = sorted(random.Random(seed + n).sample(ws, sample))
        windows += ws
    recs = _map(_typeB_one, [(x, budget, source_budget) for x in windows], jobs)
    scope = f"B_n, 2 <= n <= {min(n_max, 3)} exhaustive"
    if n_max >= 4:
        scope += f"; n = 4..{n_max} sampled ({sample} per n, seed {seed})"
    return _report("B-one-third-bound", scope, recs, t0)


# ------------------------------------------------------------ type D example

def typeD_example_word(n: int) -> ReducedWord:
    """s_n ... s_3 s_2 s_1 s_3 ... s_n in D_n."""
    down = list(range(n, 2, -1))
    return ReducedWord(CoxeterType("D", n), tuple(down + [2, 1] + down[::-1]))


def cmd_verify_typeD_example(n_max: int, n_min: int = 4) -> ClaimReport:
    _check_n("D", n_max)
    t0 = time.perf_counter()
    recs = []
    for n in range(n_min, n_max + 1):
        r = typeD_example_word(n)
        w = r.element
        g = build_graph(w, None)
        d = diameter(g).value
        l2 = l2_size(w)
        expect = {Root(RootKind.DIFF, i, n) for i in range(1, n)} | {Root(RootKind.SUM, i, n) for i in range(1, n)}
        inv_ok = inversion_set(w) == expect
        ok = d == 1 and l2 == n - 1 and g.nvertices == 2 and inv_ok and len(r) == 2 * n - 2
        recs.append({"element": str(w), "type": f"D{n}", "n": n, "diam": d, "l2": l2,
                     "words": g.nvertices, "inversion_set_ok": inv_ok,
                     "status": VERIFIED if ok else COUNTEREXAMPLE})
    return _report("D-no-uniform-lower-bound", f"D_n, {n_min} <= n <= {n_max}", recs, t0)


# ------------------------------------------------------------ w0(D_n) suite

def cmd_typeD_w0_suite(n: int, budget: int | None = DEFAULT_VERTEX_CAP,
                       source_budget: int | None = DEFAULT_SOURCE_CAP,
                       stream: bool = False) -> ClaimReport:
    """Near-accessibility of word_r_typeD(n), the diameter bound, and the
    accessibility sweep, for w0(D_n).

    The accessibility sweep needs the graph, or ``stream=True`` for the
    graph-free method (the only option once the graph exceeds ``budget``).
    """
    _check_n("D", n)
    from .stream import stream_accessible
    t0 = time.perf_counter()
    ctype = CoxeterType("D", n)
    w0 = longest_element(ctype)
    l2 = l2_size(w0)
    r = word_r_typeD(n)
    formula = n * (n - 1) * (3 * n * n - 11 * n + 13) // 6
    checks = []

    def add(name, status, **values):
        checks.append({"element": str(w0), "check": name, "status": status, **values})

    add("l2-closed-formula", VERIFIED if l2 == formula else COUNTEREXAMPLE, l2=l2, formula=formula)
    rro_ok = reverse_root_ordering(r) == rro_typeD_closed_form(n)
    add("rro-closed-form", VERIFIED if rro_ok else COUNTEREXAMPLE, word=format_word(r.letters))

    g = None
    try:
        g = build_graph(w0, budget)
    except CapExceeded as exc:
        for name in ("near-accessible", "diameter-bound", "question-diam-vs-l2"):
            add(name, INCONCLUSIVE, reason=str(exc))
    if g is not None:
        k = g.vertex(r)
        defect = accessibility_defect(g, k)
        # defect < (2/3) n^3, in integers
        add("near-accessible", VERIFIED if 3 * defect < 2 * n ** 3 else COUNTEREXAMPLE,
            max_defect=defect, bound="2n^3/3", words=g.nvertices)
        if source_budget is None or g.nvertices <= source_budget:
            d = diameter(g).value
            add("diameter-bound", VERIFIED if 3 * d < 3 * l2 + 4 * n ** 3 else COUNTEREXAMPLE,
                diam=d, l2=l2)
            add("question-diam-vs-l2", VERIFIED, diam=d, l2=l2, equal=d == l2, informational=True)
        else:
            lb = diameter(g, source_budget, sources=[k]).value
            add("diameter-bound", COUNTEREXAMPLE if 3 * lb >= 3 * l2 + 4 * n ** 3 else INCONCLUSIVE,
                diam_lower_bound=lb, l2=l2)
            add("question-diam-vs-l2", INCONCLUSIVE, diam_lower_bound=lb, l2=l2)

    acc = None
    if stream:
        res = stream_accessible(ctype)
        acc = {"words": res.total_words, "accessible": len(res.accessible),
               "examples": [format_word(x) for x in res.accessible_words[:5]],
               "survivors_after_pruning": res.survivors_after_pruning,
               "prune_seconds": round(res.prune_seconds, 3), "verify_seconds": round(res.verify_seconds, 3)}
    elif g is not None:
        verts = accessible_vertices(g)
        acc = {"words": g.nvertices, "accessible": len(verts),
               "examples": [format_word(g.words[v].tolist()) for v in verts[:5]]}
    if acc is None:
        add("accessible-sweep", INCONCLUSIVE, reason="graph over budget; rerun with the streaming sweep")
    elif n == 5:
        add("accessible-sweep", VERIFIED if acc["accessible"] == 0 else COUNTEREXAMPLE, **acc)
    else:
        # no claim is made outside n = 5; report the count
        add("accessible-sweep", VERIFIED, informational=True, **acc)

    status = overall_status(c["status"] for c in checks)
    bad = [c for c in checks if c["status"] != VERIFIED]
    return ClaimReport(f"D{n}-w0-suite", f"w0(D_{n}), {count_reduced_words(w0)} reduced words", status,
                       bad, time.perf_counter() - t0, {"checks": checks})


# ------------------------------------------------------------ identities and tables

def cmd_verify_pattern_identities(n_max: int, jobs: int = 1) -> ClaimReport:
    _check_n("A", n_max)
    t0 = time.perf_counter()
    ws = [w for n in range(2, n_max + 1) for w in all_permutations(n)]
    recs = []
    for w in ws:
        rec = check_sum_identities(w)
        rec["status"] = VERIFIED if rec.pop("ok") else COUNTEREXAMPLE
        recs.append(rec)
    return _report("A-pattern-identities", f"S_n, 2 <= n <= {n_max}", recs, t0)


# ------------------------------------------------------------ dumps

def dump_element(w: GroupElement, cap: int | None = DEFAULT_VERTEX_CAP) -> dict:
    return enumeration_record(w, cap)


def dump_l2(w: GroupElement) -> dict:
    return l2_record(w)


def dump_graph(w: GroupElement, fmt: str = "jsonl", cap: int | None = DEFAULT_VERTEX_CAP, cache_dir=None):
    """JSONL lines for the graph; with ``cache_dir`` also writes the binary cache."""
    g = build_graph(w, cap)
    path = save_graph(g, cache_dir, "bin") if cache_dir is not None else None
    return list(graph_jsonl_lines(g)), path


def cmd_dump(kind: str, w: GroupElement | None = None, fmt: str = "jsonl",
             cap: int | None = DEFAULT_VERTEX_CAP, cache_dir=None) -> str:
    if kind == "table":
        if fmt == "tsv":
            return table_tsv()
        from .patterns import BUILTIN_TABLE
        return "\n".join(json.dumps({"pattern": str(p), "a": a, "b": b})
                         for p, (a, b) in sorted(BUILTIN_TABLE.items(), key=lambda kv: str(kv[0]))) + "\n"
    if w is None:
        raise ValueError(f"dump {kind} needs an element")
    if kind == "element":
        rec = dump_element(w, cap)
        if fmt == "tsv":
            return "index\tword\n" + "".join(f"{i}\t{x}\n" for i, x in enumerate(rec["words"]))
        return json.dumps(rec) + "\n"
    if kind == "l2":
        rec = dump_l2(w)
        if fmt == "tsv":
            return "subsystem\troots\n" + "".join(f"{i}\t{' '.join(s)}\n" for i, s in enumerate(rec["subsystems"]))
        return json.dumps(rec) + "\n"
    if kind == "graph":
        lines, _ = dump_graph(w, fmt, cap, cache_dir)
        if fmt == "tsv":
            out = ["vertex\tword\tneighbors"]
            for line in lines[1:]:
                d = json.loads(line)
                out.append(f"{d['vertex']}\t{d['word']}\t{','.join(map(str, d['neighbors']))}")
            return "\n".join(out) + "\n"
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown dump kind {kind!r}")

