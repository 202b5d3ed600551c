"""Compare the compiled and pure-Python convolution kernels, then time a
few end-to-end computations with each backend.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from parhiggs import kernels


def kernel_table(repeat):
    rng = random.Random(0)
    print("backend available: %s" % kernels.BACKEND)
    print("%6s %12s %12s %8s" % ("len", "python (us)", "cython (us)", "speedup"))
    for size in (8, 32, 128, 512):
        a = [rng.randint(-1000, 1000) for _ in range(size)]
        b = [rng.randint(-1000, 1000) for _ in range(size)]
        loops = max(1, 20000 // (size * size // 8 + 1))
        py = min(timeit.repeat(lambda: kernels.py_convolve(a, b), number=loops, repeat=repeat)) / loops
        if kernels.BACKEND == "cython":
            assert kernels.convolve(a, b) == kernels.py_convolve(a, b)
            cy = min(timeit.repeat(lambda: kernels.convolve(a, b), number=loops, repeat=repeat)) / loops
            print("%6d %12.1f %12.1f %7.1fx" % (size, py * 1e6, cy * 1e6, py / cy))
        else:
            print("%6d %12.1f %12s %8s" % (size, py * 1e6, "-", "-"))


END_TO_END = """
import time
from parhiggs.higgs3 import HiggsParams, higgs3_total, bundles3_strata_sum
from parhiggs.hauselcheck import hausel_at_q1
cases = (
    ("higgs3_total g=12 n=4", lambda: higgs3_total(HiggsParams(12, 4))),
    ("hausel_at_q1 g=12 n=4", lambda: hausel_at_q1(12, 4)),
    ("bundles3_strata_sum g=8 n=4", lambda: bundles3_strata_sum(HiggsParams(8, 4))),
)
for name, fn in cases:
    t0 = time.perf_counter()
    fn()
    print("  %-28s %.3f s" % (name, time.perf_counter() - t0))
"""


def end_to_end():
    # fresh interpreters so the lru caches start cold
    for label, env in (("cython", {}), ("python", {"PARHIGGS_PURE": "1"})):
        out = subprocess.run([sys.executable, "-c", END_TO_END], capture_output=True,
                             text=True, env=dict(os.environ, **env), check=True)
        print("end-to-end, %s kernel:" % label)
        print(out.stdout.rstrip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    kernel_table(args.repeat)
    end_to_end()


if __name__ == "__main__":
    main()
