"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--levels 3 3 3 3 3 3] [--bool-levels 3 3 3 3 2]

Each kernel runs on the same random map with both backends; the outputs are
compared before any timing is reported.
"""
import argparse
import time

import numpy as np

from mvbool import _kernels
from mvbool.conversion import extend_via_psi
from mvbool.core import MultiSpace, MultivaluedMap


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def random_map(levels, rng):
    space = MultiSpace(tuple(levels))
    return MultivaluedMap(space, rng.integers(0, space.size, size=space.size))


def workloads(levels, bool_levels, seed):
    rng = np.random.default_rng(seed)
    f = random_map(levels, rng)
    yield f"multivalued {tuple(levels)}", f.space, f.image_coords, None
    F = extend_via_psi(random_map(bool_levels, rng))
    yield f"psi-extension B^{F.space.n}", F.space, F.image_coords, None


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, nargs="+", default=[3, 3, 3, 3, 3, 3])
    ap.add_argument("--bool-levels", type=int, nargs="+", default=[3, 3, 3, 3, 2],
                    help="levels of the map whose psi-extension is benchmarked")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if "cython" not in _kernels.BACKENDS:
        print("compiled extension not built; only the fallback is available")
        return 1

    print(f"{'workload':<28} {'kernel':<16} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for name, space, img, defined in workloads(args.levels, args.bool_levels, args.seed):
        cur, w, lv = space.coords, space.weights, space.levels_array
        calls = {}
        calls["async_successors"] = lambda b: _kernels.async_successors(cur, img, w, defined, backend=b)
        indptr, indices = _kernels.async_successors(cur, img, w, defined)
        calls["terminal_sccs"] = lambda b: _kernels.terminal_sccs(indptr, indices, defined, backend=b)
        calls["local_edges"] = lambda b: _kernels.local_edges(cur, img, w, lv, defined, backend=b)
        for kname, call in calls.items():
            a, c = call("python"), call("cython")
            for x, y in zip(a, c):
                if not np.array_equal(x, y):
                    raise SystemExit(f"backends disagree on {kname} for {name}")
            tp = best_of(lambda: call("python"), args.repeat)
            tc = best_of(lambda: call("cython"), args.repeat)
            print(f"{name:<28} {kname:<16} {tp * 1e3:12.2f} {tc * 1e3:12.2f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
