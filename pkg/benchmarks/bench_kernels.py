"""Compare the compiled polynomial kernel with the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Three workloads:
raw sparse multiplication and exact division, the symbolic Yang-Baxter
residual, and building the current family at t = 2.
"""

import argparse
import random
import timeit

from ospcheck import evalrep, rmatrix
from ospcheck.arith import poly as P


def random_poly(rng, terms, degree):
    out = {}
    for _ in range(terms):
        key = P.monomial_key({v: rng.randint(0, degree) for v in ("t", "z", "w")})
        out[key] = out.get(key, 0) + rng.randint(-50, 50) or 1
    return out


def kernel_workload():
    rng = random.Random(0)
    pairs = [(random_poly(rng, 40, 8), random_poly(rng, 40, 8)) for _ in range(20)]

    def run():
        for a, b in pairs:
            P.divexact(P.mul(a, b), b)
    return run


WORKLOADS = {
    "mul+divexact (20 pairs, 40 terms)": kernel_workload,
    "symbolic YBE residual": lambda: lambda: rmatrix.ybe_residual(rmatrix.build_r()),
    "current family at t = 2": lambda: lambda: evalrep.build_family(t=2, convention="aux-first"),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    try:
        P.use_backend("compiled")
        backends = ("python", "compiled")
    except ImportError:
        backends = ("python",)
        print("compiled kernel not built; timing the pure-Python kernel only")
    print("%-36s %12s %12s %8s" % ("workload", "python [s]", "compiled [s]", "speedup"))
    for name, make in WORKLOADS.items():
        best = {}
        for backend in backends:
            P.use_backend(backend)
            best[backend] = min(timeit.repeat(make(), number=1, repeat=args.repeat))
        comp = best.get("compiled")
        print("%-36s %12.3f %12s %8s" % (
            name, best["python"], "%.3f" % comp if comp else "-",
            "%.2fx" % (best["python"] / comp) if comp else "-"))


if __name__ == "__main__":
    main()
