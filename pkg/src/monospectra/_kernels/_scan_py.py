"""Pure-Python scan kernel: Horner evaluation, uniform-grid sign scan,
and bisection refinement over float polynomial coefficients.

Mirrors the compiled ``_scan_cy`` module; selection happens in
``monospectra._kernels``.
"""
from __future__ import annotations


def horner(coeffs, x):
    """Evaluate sum(coeffs[i] * x**i) by Horner's rule."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def scan_sign_changes(coeffs, lo, hi, n):
    """Scan [lo, hi] at n uniform subdivisions.

    Returns (hits, brackets): grid points where the value is exactly 0.0,
    and (a, b) cells with a strict sign change.
    """
    coeffs = list(coeffs)
    step = (hi - lo) / n
    hits = []
    brackets = []
    x_prev = lo
    f_prev = horner(coeffs, lo)
    if f_prev == 0.0:
        hits.append(lo)
    for i in range(1, n + 1):
        x = lo + i * step if i < n else hi
        f = horner(coeffs, x)
        if f == 0.0:
            hits.append(x)
        elif f_prev != 0.0 and (f_prev < 0.0) != (f < 0.0):
            brackets.append((x_prev, x))
        x_prev = x
        f_prev = f
    return hits, brackets


def bisect_root(coeffs, a, b, tol):
    """Bisect a sign-change bracket down to width tol; returns the midpoint."""
    coeffs = list(coeffs)
    fa = horner(coeffs, a)
    if fa == 0.0:
        return a
    fb = horner(coeffs, b)
    if fb == 0.0:
        return b
    neg_a = fa < 0.0
    while (b - a) > tol:
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = horner(coeffs, m)
        if fm == 0.0:
            return m
        if (fm < 0.0) == neg_a:
            a = m
        else:
            b = m
    return 0.5 * (a + b)
