"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each workload runs on every available backend; results (triples, colorings,
subsets, node counts) must agree exactly, only the wall time differs.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time

from chebyramsey import kernels
from chebyramsey.geometry import PointSet, Triangle, enumerate_copies, integer_frame


def _grid_frame(n, T):
    S = PointSet((x, y) for x in range(n) for y in range(n))
    return integer_frame(S, T), S


def workloads():
    T = Triangle(2, 3, 4)
    (xs, ys, (a, b, c), _), S = _grid_frame(24, T)
    edges = enumerate_copies(PointSet((x, y) for x in range(7) for y in range(7)), T)
    rng = random.Random(0)
    dense = sorted({tuple(sorted(rng.sample(range(60), 3))) for _ in range(800)})
    (dx, dy, dsides, _), _ = _grid_frame(7, Triangle(1, 1, 2))
    dedges = kernels.get_backend("python").copy_triples(dx, dy, *dsides)[0]
    return {
        "copy_triples 24x24 grid, T(2,3,4)": lambda m: m.copy_triples(xs, ys, a, b, c),
        "hyper_color 7x7 grid, k=2": lambda m: m.hyper_color(49, edges, 2, 0),
        "hyper_color random 60 vertices, k=3": lambda m: m.hyper_color(60, dense, 3, 0),
        "max_free_subset 7x7 grid, T(1,1,2)": lambda m: m.max_free_subset(49, dedges, 0),
    }


def _normalize(out):
    return json.dumps(out, default=list)


def run(repeat):
    backends = kernels.available_backends()
    rows = []
    for name, fn in workloads().items():
        outputs, times = {}, {}
        for bname, mod in backends.items():
            samples = []
            for _ in range(repeat):
                t0 = time.perf_counter()
                out = fn(mod)
                samples.append(time.perf_counter() - t0)
            outputs[bname] = _normalize(out)
            times[bname] = statistics.median(samples)
        if len(set(outputs.values())) != 1:
            raise SystemExit(f"backends disagree on {name!r}")
        rows.append({"workload": name, "seconds": times})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    names = sorted({b for r in rows for b in r["seconds"]})
    print(f"{'workload':40s} " + " ".join(f"{n:>10s}" for n in names) + "   speedup")
    for r in rows:
        s = r["seconds"]
        speed = s["python"] / s["cython"] if "cython" in s and s["cython"] > 0 else float("nan")
        print(f"{r['workload']:40s} " + " ".join(f"{s[n]:10.4f}" for n in names) + f"   {speed:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
