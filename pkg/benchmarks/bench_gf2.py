"""Compare the compiled and pure-Python GF(2) row reduction.

    python3 benchmarks/bench_gf2.py [--repeat 5] [--seed 0]

Random square-ish matrices of several sizes go through both backends; the
outputs are checked for equality before timings are reported.  A final
section times one real workload (a cube-ring annihilator) under each backend.
Expect little difference there: the matrices that ring computations produce
are small, and most of the time goes into building multiplication tables.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from injring import gf2
from injring.gf2 import _pure

SIZES = [(16, 16), (64, 64), (256, 256), (512, 1024), (1024, 1024)]

SETUP = "from injring.zoo import Cube; from injring.ideals import ann"
WORKLOAD = "C = Cube(64); ann(C, [C.x(1), C.x(2)])"


def matrix(rng: random.Random, nrows: int, nbits: int) -> list[int]:
    return [rng.getrandbits(nbits) for _ in range(nrows)]


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def workload_time(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("INJRING_PURE", None)
    if pure:
        env["INJRING_PURE"] = "1"
    code = f"import time; {SETUP}; t = time.perf_counter(); {WORKLOAD}; print(time.perf_counter() - t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    if gf2.BACKEND != "cython":
        print("compiled kernel not available; only the pure backend can be timed")
    print(f"{'rows x bits':>14} {'pure (ms)':>11} {'compiled (ms)':>14} {'speedup':>8}")
    for nrows, nbits in SIZES:
        rows = matrix(rng, nrows, nbits)
        tp = best(lambda: _pure.rref(rows), args.repeat)
        if gf2.BACKEND == "cython":
            from injring.gf2 import _core

            if _core.rref(rows, nbits) != _pure.rref(rows):
                raise SystemExit(f"backends disagree at {nrows}x{nbits}")
            tc = best(lambda: _core.rref(rows, nbits), args.repeat)
            print(f"{nrows:>6} x {nbits:<6} {tp * 1e3:>11.2f} {tc * 1e3:>14.2f} {tp / tc:>7.1f}x")
        else:
            print(f"{nrows:>6} x {nbits:<6} {tp * 1e3:>11.2f} {'-':>14} {'-':>8}")

    print()
    print("cube annihilator workload (dmax 64, imports excluded):")
    print(f"  pure     {workload_time(True):.3f} s")
    if gf2.BACKEND == "cython":
        print(f"  default  {workload_time(False):.3f} s")


if __name__ == "__main__":
    main()
