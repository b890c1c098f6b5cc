"""Benchmark the lattice kernels: numba JIT loops vs. the numpy fallback.

The hot paths are the all-pairs meet/join table construction (O(n^3)) and
the exhaustive distributivity scan (O(n^3)); both run over every loaded or
generated lattice.  Run:

    python benchmarks/bench_backends.py [--max-bool 9] [--mo 300]

The first numba call includes JIT compilation (cached on disk afterwards).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from stonespec import _kernels
from stonespec.corpus import boolean_lattice, mo


def time_backend(leq, ortho, backend):
    t0 = time.perf_counter()
    meet, join, status, a, b = _kernels.bound_tables(leq, backend=backend)
    t1 = time.perf_counter()
    assert status == _kernels.STATUS_OK, f"({a}, {b}) lacks a bound"
    _kernels.distributivity_witness(meet, join, backend=backend)
    t2 = time.perf_counter()
    _kernels.orthomodularity_witness(leq, meet, join, ortho, backend=backend)
    t3 = time.perf_counter()
    return t1 - t0, t2 - t1, t3 - t2


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-bool", type=int, default=9,
                        help="largest Boolean lattice exponent (2^m elements)")
    parser.add_argument("--mo", type=int, default=300,
                        help="number of atom pairs in the large MO lattice")
    args = parser.parse_args()

    cases = [(f"2^{m} ({1 << m} elements)", boolean_lattice(m))
             for m in range(6, args.max_bool + 1)]
    cases.append((f"MO{args.mo} ({2 * args.mo + 2} elements)", mo_large(args.mo)))

    backends = ["numpy"]
    if _kernels.HAVE_NUMBA:
        backends.insert(0, "numba")
        # warm the JIT cache outside the timed region
        warm = boolean_lattice(4)
        time_backend(warm.leq, warm.ortho, "numba")
    else:
        print("numba not importable; timing the numpy fallback only")

    header = f"{'lattice':>22} {'backend':>7} {'tables':>10} {'distrib':>10} {'orthomod':>10}"
    print(header)
    print("-" * len(header))
    for name, L in cases:
        for backend in backends:
            tt, td, to = time_backend(L.leq, L.ortho, backend)
            print(f"{name:>22} {backend:>7} {tt:>9.3f}s {td:>9.3f}s {to:>9.3f}s")


def mo_large(k):
    """MOk built directly (the corpus builder caps the letter names)."""
    n = 2 * k + 2
    names = ["0"] + [f"a{i}" for i in range(2 * k)] + ["1"]
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    ortho = np.arange(n)
    ortho[0], ortho[n - 1] = n - 1, 0
    for i in range(k):
        ortho[1 + 2 * i], ortho[2 + 2 * i] = 2 + 2 * i, 1 + 2 * i
    from stonespec.lattice import FiniteOML

    return FiniteOML(names, leq, ortho)


if __name__ == "__main__":
    main()
