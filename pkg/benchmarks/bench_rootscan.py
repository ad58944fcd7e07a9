"""Benchmark the root-scan kernel: compiled extension vs pure Python.

The sign-change scan at one million subdivisions is the hot inner loop of
real root isolation; this compares both backends on the same polynomials.

Run:  python3 benchmarks/bench_rootscan.py [--subdivisions N]
"""
from __future__ import annotations

import argparse
import time

from monospectra._kernels import _scan_py

try:
    from monospectra._kernels import _scan_cy
except ImportError:
    _scan_cy = None


CASES = [
    ("degree-2", [2.0, -3.0, 1.0], (0.0, 5.0)),
    ("degree-6 spread roots", None, (0.0, 1.0)),
    ("degree-13 style", None, (-2.0, 4.0)),
]


def poly_from_roots(roots):
    coeffs = [1.0]
    for r in roots:
        coeffs = [0.0] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= r * coeffs[i + 1]
    return coeffs


def build_cases():
    out = []
    for name, coeffs, interval in CASES:
        if coeffs is None and "6" in name:
            coeffs = poly_from_roots([k / 7.0 for k in range(1, 7)])
        elif coeffs is None:
            coeffs = poly_from_roots([(-2.0 + 6.0 * k / 12.0) for k in range(13)])
        out.append((name, coeffs, interval))
    return out


def run(module, coeffs, interval, n):
    t0 = time.perf_counter()
    hits, brackets = module.scan_sign_changes(coeffs, interval[0], interval[1], n)
    dt = time.perf_counter() - t0
    for a, b in brackets:
        module.bisect_root(coeffs, a, b, 1e-12)
    return dt, len(hits) + len(brackets)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--subdivisions", type=int, default=10**6)
    args = parser.parse_args()

    print(f"scan kernel benchmark, {args.subdivisions} subdivisions per case")
    print(f"{'case':<24} {'python':>10} {'compiled':>10} {'speedup':>9} {'roots':>6}")
    for name, coeffs, interval in build_cases():
        t_py, found = run(_scan_py, coeffs, interval, args.subdivisions)
        if _scan_cy is not None:
            t_cy, found_cy = run(_scan_cy, coeffs, interval, args.subdivisions)
            assert found_cy == found, "backends disagree on bracket count"
            print(f"{name:<24} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / t_cy:>8.1f}x {found:>6}")
        else:
            print(f"{name:<24} {t_py:>9.3f}s {'n/a':>10} {'':>9} {found:>6}")
    if _scan_cy is None:
        print("compiled backend unavailable; pure-Python fallback only")


if __name__ == "__main__":
    main()
