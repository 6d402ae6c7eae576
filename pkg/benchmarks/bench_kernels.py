"""Compare the numba and numpy kernel backends on the workloads the package uses.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is warmed up once per backend (numba compiles on first call), then
timed over ``--repeat`` runs; the best time is reported. Outputs are checked
for equality across backends before timing.
"""
from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from sitorus import _kernels
from sitorus.exact import FpMatrix
from sitorus.polynomial import FpPoly
from sitorus.strong import MatrixTuple, projective_reps


def _det_workload():
    rng = np.random.default_rng(0)
    stack = rng.integers(0, 7, size=(200_000, 4, 4))
    return lambda: _kernels.det_mod_p_batch(stack, 7)


def _divisor_workload():
    # t^10 + t^3 + 1 over F_3: scan every monic degree-5 candidate
    f = FpPoly(3, [1, 0, 0, 1] + [0] * 6 + [1])
    return lambda: [_kernels.first_monic_divisor(f.coeffs, 3, d) for d in range(1, 6)]


def _box_workload():
    adj = np.array([[5, -2, 1], [0, 7, 3], [-1, 0, 4]])
    return lambda: _kernels.box_residues(adj, 97, 40)


def _tuple_workload():
    n, p = 4, 5
    mats = [FpMatrix(p, [[(i * 3 + j * 7 + k) % p for j in range(n)] for i in range(n)]) for k in range(n)]
    T = MatrixTuple(mats)
    reps = projective_reps(n, p)
    Bs = np.array([m.rows for m in T.mats], dtype=np.int64)
    stack = np.einsum("uj,jab->uab", reps, Bs) % p
    return lambda: _kernels.det_mod_p_batch(stack, p)


WORKLOADS = {
    "det_mod_p_batch 200k x 4x4 mod 7": _det_workload,
    "first_monic_divisor deg<=5 mod 3": _divisor_workload,
    "box_residues n=3 M=40 mod 97": _box_workload,
    "projective combos n=4 mod 5": _tuple_workload,
}


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else [])
    print(f"{'workload':40s}" + "".join(f"{b:>12s}" for b in backends) + "   speedup")
    for name, make in WORKLOADS.items():
        fn = make()
        results, times = {}, {}
        for b in backends:
            with _kernels.use_backend(b):
                results[b] = fn()
                times[b] = _best(fn, args.repeat)
        first = results[backends[0]]
        for b in backends[1:]:
            same = all(np.array_equal(x, y) for x, y in itertools.zip_longest(
                first if isinstance(first, list) else [first],
                results[b] if isinstance(results[b], list) else [results[b]]))
            assert same, f"backends disagree on {name}"
        cols = "".join(f"{times[b] * 1e3:10.1f}ms" for b in backends)
        speed = f"{times['numpy'] / times['numba']:8.1f}x" if "numba" in times else ""
        print(f"{name:40s}{cols}  {speed}")


if __name__ == "__main__":
    main()
