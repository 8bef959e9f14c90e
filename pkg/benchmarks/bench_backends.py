#!/usr/bin/env python3
"""Times the compiled simplex step kernel against the numpy fallback.

Both kernels are driven over the same LP corpus (frequency primal + dual for
seeded random graphs) and must report identical pivot counts and bitwise
identical objective values; the comparison is meaningless if the pivot paths
diverge, so any mismatch aborts the run.
"""

import argparse
import time

from circtheta import BitStream, build_formulation, sample_random, solve
from circtheta import _simplex_py
from circtheta.theta import FREQUENCY_DUAL, FREQUENCY_PRIMAL

try:
    from circtheta import _simplex_cy
except ImportError:
    raise SystemExit(
        "compiled kernel is not built; install the package with its build "
        "step (pip install -e . --no-build-isolation) and retry"
    )


def corpus(sizes, samples, seed):
    problems = []
    for n in sizes:
        for idx in range(samples):
            g = sample_random(n, BitStream((seed, n, idx)))
            problems.append((n, build_formulation(g, FREQUENCY_PRIMAL)))
            problems.append((n, build_formulation(g, FREQUENCY_DUAL)))
    return problems


def run_backend(problems, kernel, repeat):
    best = {}
    results = []
    for attempt in range(repeat):
        wall = {}
        attempt_results = []
        for n, p in problems:
            t0 = time.perf_counter()
            sol = solve(p, step_kernel=kernel)
            wall[n] = wall.get(n, 0.0) + time.perf_counter() - t0
            attempt_results.append((sol.status, sol.iterations, sol.objective_value))
        for n, t in wall.items():
            best[n] = min(best.get(n, t), t)
        if attempt == 0:
            results = attempt_results
        elif attempt_results != results:
            raise SystemExit("kernel produced different results across repeats")
    return best, results


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="101,201,401",
                    help="comma-separated odd graph orders")
    ap.add_argument("--samples", type=int, default=5, help="graphs per order")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3, help="take best-of-N walls")
    args = ap.parse_args()

    sizes = tuple(int(t) for t in args.sizes.split(","))
    problems = corpus(sizes, args.samples, args.seed)
    print(f"{len(problems)} LPs ({args.samples} graphs per order, primal + dual)")

    py_wall, py_res = run_backend(problems, _simplex_py, args.repeat)
    cy_wall, cy_res = run_backend(problems, _simplex_cy, args.repeat)

    if py_res != cy_res:
        raise SystemExit("PARITY FAILURE: kernels disagree on some LP")
    pivots = sum(r[1] for r in py_res)
    print(f"parity ok: identical statuses, values, and {pivots} total pivots\n")

    print(f"{'n':>6} {'numpy (s)':>12} {'cython (s)':>12} {'speedup':>9}")
    for n in sizes:
        ratio = py_wall[n] / cy_wall[n] if cy_wall[n] > 0 else float("inf")
        print(f"{n:>6} {py_wall[n]:>12.4f} {cy_wall[n]:>12.4f} {ratio:>8.2f}x")
    total_py = sum(py_wall.values())
    total_cy = sum(cy_wall.values())
    print(f"{'total':>6} {total_py:>12.4f} {total_cy:>12.4f} "
          f"{total_py / total_cy:>8.2f}x")


if __name__ == "__main__":
    main()
