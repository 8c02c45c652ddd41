"""Compare the compiled kernels with the pure-Python fallback.

Two views: the raw kernels called directly on identical inputs, and an
end-to-end workload run in subprocesses with and without CREMONA_PURE_PYTHON.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from cremona import _kernels_py as py
from cremona.catalog import Family, FamilySpec, build
from cremona.cyclo import cyclotomic_poly

try:
    from cremona import _kernels as fast
except ImportError:
    fast = None

WORKLOAD = """
import time
from cremona.catalog import Family, FamilySpec, build
from cremona.groups import automorphisms
from cremona.projgeom import small_orbits
t = time.perf_counter()
A = build(FamilySpec(Family.PRIM_A6))
small_orbits(A.group, 8)
automorphisms(build(FamilySpec(Family.PRIM_PSL27)).group)
print(time.perf_counter() - t)
"""


def kernel_cases():
    rng = random.Random(0)
    phi = cyclotomic_poly(60)
    d = len(phi) - 1
    pairs = [([rng.randint(-9, 9) for _ in range(d)], [rng.randint(-9, 9) for _ in range(d)]) for _ in range(200)]
    raws = [[rng.randint(-50, 50) for _ in range(150)] for _ in range(200)]
    G = build(FamilySpec(Family.PRIM_A6)).group
    images = [G.generator_index(k) for k in range(len(G.generators))]
    return {
        "mul_reduce (Q(zeta_60), 200 products)": lambda k: [k.mul_reduce(a, b, phi) for a, b in pairs],
        "reduce_raw (Q(zeta_60), 200 vectors)": lambda k: [k.reduce_raw(r, phi) for r in raws],
        "cayley_table (A6, order 360)": lambda k: k.cayley_table(G.right, G.words),
        "extend_hom (A6 identity map)": lambda k: k.extend_hom(G.right, G.words, G.table, images, 0),
    }


def run_workload(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("CREMONA_PURE_PYTHON", None)
    if pure:
        env["CREMONA_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if fast is None:
        print("compiled kernels are not built; only the fallback is available")
        return 1
    print(f"{'kernel':42s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in kernel_cases().items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(lambda: fn(fast), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:42s} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.1f}x")
    t_py = min(run_workload(True) for _ in range(2))
    t_cy = min(run_workload(False) for _ in range(2))
    print(f"{'end to end (A6 orbits, Aut(PSL2(7)))':42s} {t_py * 1e3:10.0f} {t_cy * 1e3:10.0f} {t_py / t_cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
