"""Compare the compiled and pure-Python series kernels.

Times the two convolution kernels on random inputs of the sizes that occur
at precision 20, then an end-to-end triple-index workload under each backend
(the backend is chosen at import, so that part runs in subprocesses).

    python3 benchmarks/bench_kernels.py [--sizes 16 32 64] [--repeat 5]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from reglab import _kernels

END_TO_END = """
import time
from reglab import _kernels
from reglab.checks import check_triple_axioms
t = time.perf_counter()
r = check_triple_axioms(n={n})
print(_kernels.BACKEND, r.passed, round(time.perf_counter() - t, 3))
"""


def random_case(rng, size, p=7, prec=20):
    mod = p ** prec
    a = [rng.randrange(-mod, mod) for _ in range(size)]
    b = [rng.randrange(-mod, mod) for _ in range(size)]
    va = [rng.randrange(0, prec) for _ in range(size)]
    vb = [rng.randrange(0, prec) for _ in range(size)]
    ma = [rng.randrange(prec - 3, prec + 1) for _ in range(size)]
    mb = [rng.randrange(prec - 3, prec + 1) for _ in range(size)]
    return a, b, va, ma, vb, mb


def bench_kernels(sizes, repeat, number):
    if _kernels.BACKEND != "cython":
        print("compiled kernels not built; only the pure-Python timings are meaningful")
    rng = random.Random(0)
    py, c = _kernels.py, getattr(_kernels, "c", None)
    print(f"{'kernel':<10}{'size':>6}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for size in sizes:
        a, b, va, ma, vb, mb = random_case(rng, size)
        cases = {
            "conv_int": ((a, b), "conv_int"),
            "conv_prec": ((va, ma, vb, mb), "conv_prec"),
            # shift 2 with a multiple of p**2 everywhere exercises the stripping loop
            "reduce": ((7, 20, 2, [49 * x for x in a], [20] * size), "reduce_numerators"),
        }
        for name, (args, attr) in cases.items():
            t_py = min(timeit.repeat(lambda: getattr(py, attr)(*args), number=number, repeat=repeat))
            row = f"{name:<10}{size:>6}{1e3 * t_py / number:>12.3f}"
            if c is not None:
                # both backends must agree before their timings mean anything
                assert getattr(c, attr)(*args) == getattr(py, attr)(*args)
                t_c = min(timeit.repeat(lambda: getattr(c, attr)(*args), number=number, repeat=repeat))
                row += f"{1e3 * t_c / number:>12.3f}{t_py / t_c:>9.1f}"
            print(row)


def bench_end_to_end(n):
    print(f"\ntriple-index axioms, n={n}")
    for pure in ("1", ""):
        env = dict(os.environ, REGLAB_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END.format(n=n)], env=env,
                             capture_output=True, text=True, check=True)
        backend, passed, seconds = out.stdout.split()
        print(f"  {backend:<8} passed={passed} {seconds}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=50)
    parser.add_argument("--end-to-end", type=int, default=50, metavar="N",
                        help="instances for the end-to-end run (0 to skip)")
    args = parser.parse_args()
    bench_kernels(args.sizes, args.repeat, args.number)
    if args.end_to_end:
        bench_end_to_end(args.end_to_end)


if __name__ == "__main__":
    main()
