#!/usr/bin/env python3
"""Benchmark the compiled period kernel against the pure-Python twin.

Runs the iterated constant-term computation on representative inputs
(a 2-variable mirror polynomial at large depth, and a 3-variable
Minkowski polynomial at survey depth) through both kernels and reports
the speedup.  Pruning on/off is timed separately so its effect is
visible too.

Usage: python benchmarks/bench_period.py [--depth-2d N] [--depth-3d N]
"""

import argparse
import time

from fanoperiods import LatticePolytope, LaurentPolynomial, minkowski_polynomials
from fanoperiods import _pure
from fanoperiods.laurent import _pack_support, _prune_data

try:
    from fanoperiods import _speedups
except ImportError:
    _speedups = None


def _inputs(depth_2d, depth_3d):
    quad = LaurentPolynomial(
        2, {(1, 0): 1, (1, 1): 1, (0, 1): 1, (-1, -1): 1}
    )
    p519664 = LatticePolytope(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-2, 0, -1), (-3, -1, -1), (-1, -1, 1)]
    )
    f3 = minkowski_polynomials(p519664).polynomials[1]
    return [
        ("2d quadrilateral", quad, depth_2d),
        ("3d minkowski poly", f3, depth_3d),
    ]


def _run(kernel, f, m_max, prune):
    support = list(f.support())
    coeffs = [int(f.coefficient(e)) for e in support]
    keys, width = _pack_support(support, coeffs, m_max)
    data = _prune_data(f, width) if prune else None
    t0 = time.perf_counter()
    out = kernel.power_constant_terms(keys, coeffs, m_max, data)
    return time.perf_counter() - t0, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--depth-2d", type=int, default=400)
    parser.add_argument("--depth-3d", type=int, default=60)
    args = parser.parse_args()

    print(f"{'input':<22}{'depth':>6}{'prune':>7}{'pure':>10}{'compiled':>10}{'speedup':>9}")
    for name, f, depth in _inputs(args.depth_2d, args.depth_3d):
        for prune in (True, False):
            t_pure, ref = _run(_pure, f, depth, prune)
            if _speedups is None:
                print(f"{name:<22}{depth:>6}{str(prune):>7}{t_pure:>9.2f}s{'n/a':>10}")
                continue
            t_fast, out = _run(_speedups, f, depth, prune)
            assert out == ref, "kernel mismatch"
            print(
                f"{name:<22}{depth:>6}{str(prune):>7}{t_pure:>9.2f}s"
                f"{t_fast:>9.2f}s{t_pure / t_fast:>8.1f}x"
            )
    if _speedups is None:
        print("compiled kernel not built; showing pure timings only")


if __name__ == "__main__":
    main()
