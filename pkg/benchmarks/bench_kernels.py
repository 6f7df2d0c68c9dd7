"""Compare the numba kernels with the pure-numpy fallback.

Each backend runs in its own interpreter because the choice is fixed at
import time by COXDIAM_BACKEND.  Numba timings exclude the first call
(compilation or cache load), which is reported separately.

    python benchmarks/bench_kernels.py [--group A5] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from coxdiam import kernels
from coxdiam.graph import build_graph
from coxdiam.roots import CoxeterType, longest_element, root_table
from coxdiam.words import reduced_word_arrays

ctype = CoxeterType.parse(sys.argv[1])
repeat = int(sys.argv[2])
w = longest_element(ctype)
tab = root_table(ctype)

def timed(fn):
    t = time.perf_counter(); out = fn(); return out, time.perf_counter() - t

_, warm = timed(lambda: build_graph(w, None))
res = {"backend": kernels.USE_NUMBA and "numba" or "numpy", "warmup": warm}
for _ in range(repeat):
    (words, ro), t_enum = timed(lambda: reduced_word_arrays(w, None))
    keys = kernels.word_keys(words, ctype.rank + 1)
    (indptr, indices), t_adj = timed(lambda: kernels.move_adjacency(words, keys, tab.coxeter, ctype.rank + 1))
    src = np.arange(min(64, len(words)))
    _, t_bfs = timed(lambda: kernels.eccentricities(indptr, indices, src))
    for name, t in (("enumerate", t_enum), ("adjacency", t_adj), ("bfs_x64", t_bfs)):
        res[name] = min(res.get(name, t), t)
res["words"] = int(len(words))
print(json.dumps(res))
"""


def run(backend, group, repeat):
    env = dict(os.environ, COXDIAM_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", CHILD, group, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--group", default="A5", help="longest element of this type, e.g. A5, B4, D4")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rows = [run(b, args.group, args.repeat) for b in ("numba", "numpy")]
    print(f"w0({args.group}): {rows[0]['words']} reduced words, best of {args.repeat}")
    print(f"{'kernel':<12}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for k in ("enumerate", "adjacency", "bfs_x64"):
        a, b = rows[0][k], rows[1][k]
        print(f"{k:<12}{a:>10.4f}{b:>10.4f}{b / a:>9.1f}")
    print(f"{'first call':<12}{rows[0]['warmup']:>10.4f}{rows[1]['warmup']:>10.4f}")


if __name__ == "__main__":
    main()
