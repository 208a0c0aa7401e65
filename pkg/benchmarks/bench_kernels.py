"""Benchmark the numba kernels against their pure-numpy fallbacks.

Micro-benchmarks run both backends in-process on identical inputs captured
from a real verification workload (normal forms against a reduced basis,
multiplication-matrix application, Krylov elimination); the end-to-end rows
time full seeded verification runs in subprocesses, with and without
DETSTAIR_PURE_NUMPY=1.

Usage:
  python benchmarks/bench_kernels.py [--repeat N] [--skip-pipeline]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from detstair import _kernels_numpy as knp
from detstair.groebner import _basis_arrays, buchberger_reduced, gen_system, staircase
from detstair.fglm import build_mul_matrix, krylov_rows
from detstair.hilbert import SystemParams

try:
    from detstair import _kernels_numba as knb
except ImportError:
    knb = None


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def build_workload():
    params = SystemParams(3, 2, 3)
    system = gen_system(params, seed=1)
    gb = buchberger_reduced(system)
    arrays = _basis_arrays(gb)
    ring = gb[0].ring
    # reduction targets: products of pairs of input polynomials (dense, deg 6+)
    targets = []
    for i in range(len(system)):
        for j in range(i, len(system)):
            prod = system[i] * system[j]
            targets.append((prod.keys, prod.coeffs))
    stair = staircase(gb, expected_size=36)
    matrix = build_mul_matrix(gb, stair)
    rows = krylov_rows(matrix)
    return ring, arrays, targets, matrix, rows


def bench_kernels(repeat):
    ring, arrays, targets, matrix, rows = build_workload()
    lm, fk, fc, offs = arrays
    q, nv = ring.q, ring.nvars
    vec = np.arange(1, matrix.dim + 1, dtype=np.int64)

    cases = {
        "nf_reduce (21 dense polys vs basis)": lambda impl: [
            impl.nf_reduce(k, c, lm, fk, fc, offs, q, nv) for k, c in targets
        ],
        "matvec_mod x200 (D=36, m=8)": lambda impl: [
            impl.matvec_mod(matrix.triv_src, matrix.triv_dst, matrix.dense_src, matrix.dense_cols, vec, q)
            for _ in range(200)
        ],
        "krylov_minpoly (37 x 36)": lambda impl: impl.krylov_minpoly(rows, q),
        "polymul_mod x100 (deg 107)": lambda impl: [
            impl.polymul_mod(rows[1], rows[2], q) for _ in range(100)
        ],
    }

    print("%-38s %12s %12s %8s" % ("kernel", "numba [ms]", "numpy [ms]", "ratio"))
    for name, job in cases.items():
        t_np = timed(lambda: job(knp), repeat)
        if knb is not None:
            job(knb)  # warm the JIT before timing
            t_nb = timed(lambda: job(knb), repeat)
            print("%-38s %12.3f %12.3f %7.1fx" % (name, t_nb * 1e3, t_np * 1e3, t_np / t_nb))
        else:
            print("%-38s %12s %12.3f %8s" % (name, "n/a", t_np * 1e3, "-"))


def bench_pipeline():
    snippet = (
        "import time; t0=time.perf_counter(); "
        "from detstair.hilbert import SystemParams; "
        "from detstair.verify import verify_run; "
        "rep=verify_run(SystemParams(3,2,4), seed=1, extend=True); "
        "print('%.3f %s' % (time.perf_counter()-t0, rep.passed))"
    )
    print()
    print("end-to-end verify (3,2,4) seed 1, subprocess wall time incl. import:")
    for label, env_extra in (("numba", {}), ("numpy", {"DETSTAIR_PURE_NUMPY": "1"})):
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, "-c", snippet], env=env, capture_output=True, text=True, check=True
        )
        secs, passed = out.stdout.split()
        print("  %-6s %8ss  passed=%s" % (label, secs, passed))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-pipeline", action="store_true")
    args = parser.parse_args()
    if knb is None:
        print("numba unavailable: reporting the numpy fallback only")
    bench_kernels(args.repeat)
    if not args.skip_pipeline:
        bench_pipeline()


if __name__ == "__main__":
    main()
