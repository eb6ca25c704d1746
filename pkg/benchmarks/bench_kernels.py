"""Compare the compiled and pure-Python blade kernels.

Run ``python3 benchmarks/bench_kernels.py``.  Two workloads: the raw
B-independent expansion of every blade pair at n=3, and Clifford products
of dense random multivectors through each kernel.
"""

import argparse
import random
import timeit
from fractions import Fraction

from cliffhecke import kernel
from cliffhecke.clifford import BilinearForm, clifford_mul
from cliffhecke import clifford as clifford_mod
from cliffhecke.exterior import AlgebraContext, Multivector


def expansion_workload(impl, n):
    top = 1 << (2 * n)

    def run():
        for a in range(top):
            for b in range(top):
                impl.blade_product_expansion(a, b)

    return run


def product_workload(impl, n, seed):
    rng = random.Random(seed)
    ctx = AlgebraContext(n)
    d = ctx.dim
    rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)] for _ in range(d)]
    mvs = [Multivector(ctx, {m: rng.randint(-4, 4) for m in range(1 << d)}) for _ in range(2)]

    def run():
        # fresh caches so every run exercises the kernel
        clifford_mod._expansion.cache_clear()
        clifford_mod.kernel.blade_product_expansion = impl.blade_product_expansion
        B = BilinearForm(ctx, rows, product_cache=False)
        clifford_mul(mvs[0], mvs[1], B)

    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = kernel.backends()
    if "cython" not in impls:
        print("compiled kernel not available; timing the Python kernel only")
    original = clifford_mod.kernel.blade_product_expansion
    try:
        for label, make in (
            (f"expansion, all blade pairs, n={args.n}", lambda i: expansion_workload(i, args.n)),
            (f"clifford_mul, dense random, n={args.n}", lambda i: product_workload(i, args.n, 0)),
        ):
            times = {}
            for name, impl in impls.items():
                times[name] = min(timeit.repeat(make(impl), number=1, repeat=args.repeat))
            row = "  ".join(f"{k}={v * 1000:.1f}ms" for k, v in sorted(times.items()))
            if len(times) == 2:
                row += f"  speedup={times['python'] / times['cython']:.1f}x"
            print(f"{label}: {row}")
    finally:
        clifford_mod.kernel.blade_product_expansion = original


if __name__ == "__main__":
    main()
