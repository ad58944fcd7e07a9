# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel: same contract as ``_scan_py``."""

from libc.stdlib cimport free, malloc


cdef double _horner(double* c, Py_ssize_t n, double x) noexcept nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        acc = acc * x + c[i]
    return acc


cdef double* _copy_coeffs(object coeffs, Py_ssize_t* n_out) except NULL:
    cdef Py_ssize_t n = len(coeffs)
    cdef double* buf = <double*> malloc(n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = coeffs[i]
    n_out[0] = n
    return buf


def horner(coeffs, double x):
    """Evaluate sum(coeffs[i] * x**i) by Horner's rule."""
    cdef Py_ssize_t n
    cdef double* buf = _copy_coeffs(coeffs, &n)
    try:
        return _horner(buf, n, x)
    finally:
        free(buf)


def scan_sign_changes(coeffs, double lo, double hi, Py_ssize_t n):
    """Scan [lo, hi] at n uniform subdivisions.

    Returns (hits, brackets): grid points where the value is exactly 0.0,
    and (a, b) cells with a strict sign change.
    """
    cdef Py_ssize_t m
    cdef double* buf = _copy_coeffs(coeffs, &m)
    hits = []
    brackets = []
    cdef double step = (hi - lo) / n
    cdef double x_prev = lo
    cdef double f_prev, x, f
    cdef Py_ssize_t i
    try:
        f_prev = _horner(buf, m, lo)
        if f_prev == 0.0:
            hits.append(lo)
        for i in range(1, n + 1):
            x = lo + i * step if i < n else hi
            f = _horner(buf, m, x)
            if f == 0.0:
                hits.append(x)
            elif f_prev != 0.0 and (f_prev < 0.0) != (f < 0.0):
                brackets.append((x_prev, x))
            x_prev = x
            f_prev = f
        return hits, brackets
    finally:
        free(buf)


def bisect_root(coeffs, double a, double b, double tol):
    """Bisect a sign-change bracket down to width tol; returns the midpoint."""
    cdef Py_ssize_t n
    cdef double* buf = _copy_coeffs(coeffs, &n)
    cdef double fa, fb, fm, mid
    cdef bint neg_a
    try:
        fa = _horner(buf, n, a)
        if fa == 0.0:
            return a
        fb = _horner(buf, n, b)
        if fb == 0.0:
            return b
        neg_a = fa < 0.0
        while (b - a) > tol:
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            fm = _horner(buf, n, mid)
            if fm == 0.0:
                return mid
            if (fm < 0.0) == neg_a:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)
    finally:
        free(buf)
