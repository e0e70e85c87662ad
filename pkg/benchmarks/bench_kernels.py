"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--full]

``--full`` adds the rank-8 label count (7.6 million systems), timed once
per backend.
"""

import argparse
import time

from minfam import _pykernels
from minfam.lattice import lattice
from minfam.subsystems import _pool_compat

try:
    from minfam import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true")
    args = ap.parse_args()

    cases = [
        ("short_vectors r=8 conics", lambda k: k.short_vectors(8, 0, 2), True),
        ("short_vectors r=8 (1, 3)", lambda k: k.short_vectors(8, 1, 3), True),
        ("count labels r=6", lambda k: k.count_simple_systems(_pool_compat(lattice("B", 6))), True),
        ("count labels r=7", lambda k: k.count_simple_systems(_pool_compat(lattice("B", 7))), True),
    ]
    if args.full:
        cases.append(("count labels r=8", lambda k: k.count_simple_systems(_pool_compat(lattice("B", 8))), False))

    print(f"{'case':28s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}  result")
    for name, fn, repeat_all in cases:
        reps = args.repeat if repeat_all else 1
        py_t, py_res = best_of(lambda: fn(_pykernels), reps)
        cy_t = cy_res = None
        if _ckernels is not None:
            cy_t, cy_res = best_of(lambda: fn(_ckernels), reps)
        res = cy_res if cy_res is not None else py_res
        size = res if isinstance(res, int) else len(res)
        if py_res is not None and cy_res is not None:
            same = (py_res == cy_res) if isinstance(py_res, int) else (
                [tuple(map(int, v)) for v in py_res] == [tuple(map(int, v)) for v in cy_res])
            assert same, f"backends disagree on {name}"
        speed = f"{py_t / cy_t:8.1f}" if py_t and cy_t else f"{'-':>8s}"
        fmt = lambda t: f"{t:10.4f}" if t is not None else f"{'-':>10s}"  # noqa: E731
        print(f"{name:28s} {fmt(py_t)} {fmt(cy_t)} {speed}  {size}")


if __name__ == "__main__":
    main()
