"""coxdiam command line.

Exit codes: 0 all verified, 2 counterexample, 3 inconclusive, 1 usage or
internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback

from . import verify
from .graph import DEFAULT_SOURCE_CAP, DEFAULT_VERTEX_CAP, build_graph, diameter, load_graph
from .l2 import l2_record
from .patterns import BUILTIN_TABLE, Pattern, check_sum_identities, count_pattern, recompute_coefficient_table
from .roots import CoxeterType, GroupElement, parse_window
from .words import CapExceeded, enumeration_record

EXIT_USAGE = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cap(value: int) -> int | None:
    return None if value <= 0 else value


def _common(p, window=False, sweep=False):
    p.add_argument("--type", default="A", choices=["A", "B", "D"], help="Coxeter family")
    p.add_argument("--rank", type=int, help="rank (inferred from --window when omitted)")
    if window:
        p.add_argument("--window", help="one-line notation, e.g. 3412 or 4,-1,3,-2")
    if sweep:
        p.add_argument("--n-max", type=int, help="largest n swept (S_n in type A, else rank n)")
    p.add_argument("--budget-vertices", type=int, default=DEFAULT_VERTEX_CAP,
                   help="largest reduced-word graph to build; 0 disables the cap")
    p.add_argument("--budget-sources", type=int, default=DEFAULT_SOURCE_CAP,
                   help="BFS sources for exact diameters; 0 disables the cap")
    p.add_argument("--cache-dir", help="directory for binary graph caches")
    p.add_argument("--format", default="jsonl", choices=["jsonl", "tsv"])
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")


def _element(args) -> GroupElement:
    if not args.window:
        raise UsageError("--window is required")
    window = parse_window(args.window)
    n = len(window)
    rank = n - 1 if args.type == "A" else n
    if args.rank is not None and args.rank != rank:
        raise UsageError(f"--rank {args.rank} does not match a window of length {n} in type {args.type}")
    return GroupElement(CoxeterType(args.type, rank), window)


def _n_max(args, default: int) -> int:
    if args.n_max is not None:
        return args.n_max
    if args.rank is not None:
        return args.rank + 1 if args.type == "A" else args.rank
    return default


def _emit_reports(reports, fmt) -> int:
    if fmt == "tsv":
        print(verify.TSV_HEADER)
    for r in reports:
        print(r.to_tsv() if fmt == "tsv" else r.to_json())
    return verify.EXIT_CODES[verify.overall_status(r.status for r in reports)]


def _require_type(args, family):
    if args.type != family:
        raise UsageError(f"this subcommand is defined for type {family} only")


def cmd_verify_a(args):
    _require_type(args, "A")
    n = _n_max(args, 5)
    return _emit_reports([verify.cmd_verify_thm_A_lower_bound(
        n, _cap(args.budget_vertices), _cap(args.budget_sources), jobs=args.jobs)], args.format)


def cmd_verify_equality(args):
    _require_type(args, "A")
    n = _n_max(args, 5)
    return _emit_reports([verify.cmd_verify_equality_cases(
        n, args.form_n_max, _cap(args.budget_vertices), jobs=args.jobs)], args.format)


def cmd_verify_3412(args):
    _require_type(args, "A")
    n = _n_max(args, 5)
    return _emit_reports([verify.cmd_verify_conjecture_3412(
        n, _cap(args.budget_vertices), _cap(args.budget_sources), jobs=args.jobs)], args.format)


def cmd_verify_b(args):
    args.type = "B" if args.type == "A" else args.type
    _require_type(args, "B")
    n = _n_max(args, 3)
    return _emit_reports([verify.cmd_verify_typeB_conjecture(
        n, _cap(args.budget_vertices), _cap(args.budget_sources), sample=args.sample,
        seed=args.seed, jobs=args.jobs)], args.format)


def cmd_verify_d_example(args):
    args.type = "D" if args.type == "A" else args.type
    _require_type(args, "D")
    n = _n_max(args, 10)
    return _emit_reports([verify.cmd_verify_typeD_example(n)], args.format)


def cmd_d_w0_suite(args):
    n = args.rank if args.rank is not None else 4
    return _emit_reports([verify.cmd_typeD_w0_suite(
        n, _cap(args.budget_vertices), _cap(args.budget_sources), stream=args.stream)], args.format)


def cmd_dump(args):
    w = _element(args) if args.kind != "table" else None
    text = verify.cmd_dump(args.kind, w, args.format, _cap(args.budget_vertices), args.cache_dir)
    sys.stdout.write(text)
    return 0


def cmd_enumerate(args):
    w = _element(args)
    rec = enumeration_record(w, _cap(args.budget_vertices))
    if args.format == "tsv":
        print("index\tword")
        for i, x in enumerate(rec["words"]):
            print(f"{i}\t{x}")
    else:
        print(json.dumps(rec))
    return 0


def cmd_diameter(args):
    w = _element(args)
    cap = _cap(args.budget_vertices)
    g = load_graph(w, args.cache_dir, cap) if args.cache_dir else build_graph(w, cap)
    d = diameter(g, _cap(args.budget_sources))
    rec = {"element": str(w), "type": str(w.ctype), "words": g.nvertices, "edges": g.nedges,
           "diameter": d.value, "exact": d.exact, "sources": d.sources, "l2_size": len(g.l2)}
    if args.format == "tsv":
        print("\t".join(rec))
        print("\t".join(str(v) for v in rec.values()))
    else:
        print(json.dumps(rec))
    return 0 if d.exact else 3


def cmd_l2(args):
    rec = l2_record(_element(args))
    if args.format == "tsv":
        print("index\troots")
        for i, s in enumerate(rec["subsystems"]):
            print(f"{i}\t{' '.join(s)}")
    else:
        print(json.dumps(rec))
    return 0


def cmd_patterns(args):
    w = _element(args)
    if w.ctype.family != "A":
        raise UsageError("patterns are defined for permutations (type A)")
    counts = {str(p): count_pattern(w, p) for p in sorted(BUILTIN_TABLE, key=str)}
    if args.pattern:
        counts = {args.pattern: count_pattern(w, Pattern.parse(args.pattern))}
    rec = {"element": str(w), "counts": counts}
    if not args.pattern and len(w.window) >= 2:
        rec["identities"] = check_sum_identities(w)
    if args.format == "tsv":
        print("pattern\tcount")
        for p, c in counts.items():
            print(f"{p}\t{c}")
    else:
        print(json.dumps(rec))
    return 0 if rec.get("identities", {}).get("ok", True) else 2


def cmd_table(args):
    table = recompute_coefficient_table(check=False) if args.recompute else dict(BUILTIN_TABLE)
    if args.format == "tsv":
        from .patterns import table_tsv
        sys.stdout.write(table_tsv(table))
    else:
        for p, (a, b) in sorted(table.items(), key=lambda kv: str(kv[0])):
            print(json.dumps({"pattern": str(p), "a": a, "b": b}))
    return 0 if table == BUILTIN_TABLE else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coxdiam", description="Diameters of reduced-word graphs of Weyl groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-a-lower-bound", help="(1/2)|L2(w)| <= diam G(w) over S_n")
    _common(p, sweep=True)
    p.set_defaults(fn=cmd_verify_a)

    p = sub.add_parser("verify-equality", help="equality cases of the type A bound")
    _common(p, sweep=True)
    p.add_argument("--form-n-max", type=int, help="sweep form vs pattern avoidance up to this n")
    p.set_defaults(fn=cmd_verify_equality)

    p = sub.add_parser("verify-3412", help="diam G(w) <= |L2(w)| - N_3412(w) over S_n")
    _common(p, sweep=True)
    p.set_defaults(fn=cmd_verify_3412)

    p = sub.add_parser("verify-b-conjecture", help="(1/3)|L2(w)| <= diam G(w) in type B")
    _common(p, sweep=True)
    p.add_argument("--sample", type=int, default=64, help="elements sampled per rank >= 4")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify_b)

    p = sub.add_parser("verify-d-example", help="type D family with diameter 1 and |L2| = n-1")
    _common(p, sweep=True)
    p.set_defaults(fn=cmd_verify_d_example)

    p = sub.add_parser("d-w0-suite", help="checks on G(w0(D_n)) for n = --rank")
    _common(p)
    p.add_argument("--stream", action="store_true",
                   help="graph-free accessibility sweep (needed for n >= 5; about six minutes at n = 5)")
    p.set_defaults(fn=cmd_d_w0_suite)

    p = sub.add_parser("dump", help="write an element, graph, L2 set or the coefficient table")
    _common(p, window=True)
    p.add_argument("kind", choices=["element", "graph", "l2", "table"])
    p.set_defaults(fn=cmd_dump)

    for name, fn, text in [("enumerate", cmd_enumerate, "list Red(w)"),
                           ("diameter", cmd_diameter, "diameter of G(w)"),
                           ("l2", cmd_l2, "rank-two subsystems in the inversion set")]:
        p = sub.add_parser(name, help=text)
        _common(p, window=True)
        p.set_defaults(fn=fn)

    p = sub.add_parser("patterns", help="pattern counts and the two sum identities")
    _common(p, window=True)
    p.add_argument("--pattern", help="count a single pattern instead")
    p.set_defaults(fn=cmd_patterns)

    p = sub.add_parser("table", help="the (a_p, b_p) coefficient table")
    _common(p)
    p.add_argument("--recompute", action="store_true", help="derive the table instead of printing it")
    p.set_defaults(fn=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.fn(args)
    except (UsageError, ValueError, CapExceeded) as exc:
        print(f"coxdiam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        traceback.print_exc()
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
