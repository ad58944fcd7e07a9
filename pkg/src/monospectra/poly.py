"""Exact univariate polynomial arithmetic, factored forms and real roots.

Coefficients are ``fractions.Fraction`` whenever every input is exact;
float coefficients are accepted and propagate.  Root finding follows a
fixed recipe: square-free reduction, sign-change scan on a uniform grid,
bisection, one Newton polish step, then an exact-rational snap attempt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernels
from ._numbers import exact_sqrt, is_exact, to_fraction
from .errors import RootIsolationError

SCAN_SUBDIVISIONS = 10**6
SNAP_DENOMINATOR_LIMIT = 10**12


class DensePoly:
    """Dense polynomial, coefficients in ascending degree.

    The zero polynomial has an empty coefficient tuple and degree -1;
    otherwise the leading coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, degree: int):
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return 0

    def __eq__(self, other):
        return isinstance(other, DensePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DensePoly({list(self.coeffs)!r})"

    def __add__(self, other: DensePoly) -> DensePoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return DensePoly(out)

    def __neg__(self) -> DensePoly:
        return DensePoly([-c for c in self.coeffs])

    def __sub__(self, other: DensePoly) -> DensePoly:
        return self + (-other)

    def __mul__(self, other: DensePoly) -> DensePoly:
        if self.is_zero or other.is_zero:
            return DensePoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DensePoly(out)

    def scale(self, k) -> DensePoly:
        if k == 0:
            return DensePoly()
        return DensePoly([k * c for c in self.coeffs])

    def power(self, n: int) -> DensePoly:
        result = DensePoly([1])
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> DensePoly:
        return DensePoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        """Horner evaluation; exact when the coefficients and x are exact."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def to_exact(self) -> DensePoly:
        return DensePoly([to_fraction(c) for c in self.coeffs])

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def max_abs_coeff(self) -> float:
        if self.is_zero:
            return 0.0
        return max(abs(float(c)) for c in self.coeffs)


def poly_eval(p: DensePoly, x):
    return p.eval(x)


def poly_compose(p: DensePoly, q: DensePoly) -> DensePoly:
    """p(q(x)) by Horner over polynomial arithmetic."""
    acc = DensePoly()
    for c in reversed(p.coeffs):
        acc = acc * q + DensePoly([c])
    return acc


def poly_from_factors(prefactor, roots) -> DensePoly:
    """Expand prefactor * prod(x - r) over the given roots.

    An empty root list yields the constant prefactor.
    """
    acc = DensePoly([prefactor])
    for r in roots:
        acc = acc * DensePoly([-r, 1])
    return acc


@dataclass(frozen=True)
class FactoredPoly:
    """prefactor * prod (x - root)^multiplicity, factors monic in x.

    ``offset_scale`` records the constant that multiplied x inside each
    factor before normalisation (absorbed into the prefactor); it is
    metadata only.  ``expanded`` is the dense expansion, built eagerly:
    exact when a construction site supplies one, float convolution of the
    stored roots otherwise.
    """

    prefactor: object
    factors: tuple  # ((root, multiplicity), ...)
    offset_scale: object = 1
    expanded: DensePoly = field(default=None, compare=False)

    def __post_init__(self):
        if self.expanded is None:
            object.__setattr__(self, "expanded", poly_from_factors(self.prefactor, self.roots()))

    def roots(self) -> list:
        out = []
        for r, m in self.factors:
            out.extend([r] * m)
        return out

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def eval(self, x):
        acc = self.prefactor
        for r, m in self.factors:
            d = x - r
            for _ in range(m):
                acc = acc * d
        return acc

    @staticmethod
    def from_roots(prefactor, roots, offset_scale=1, expanded=None) -> FactoredPoly:
        """Group equal roots into (root, multiplicity) pairs, preserving order."""
        grouped: list[list] = []
        for r in roots:
            for g in grouped:
                if g[0] == r:
                    g[1] += 1
                    break
            else:
                grouped.append([r, 1])
        return FactoredPoly(
            prefactor,
            tuple((r, m) for r, m in grouped),
            offset_scale=offset_scale,
            expanded=expanded,
        )


# ---------------------------------------------------------------------------
# Exact helpers for root isolation
# ---------------------------------------------------------------------------


def _poly_divmod(a: DensePoly, b: DensePoly) -> tuple[DensePoly, DensePoly]:
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, a.degree - b.degree + 1)
    rem = list(a.coeffs)
    bl = b.leading
    for k in range(a.degree - b.degree, -1, -1):
        if len(rem) < b.degree + k + 1:
            continue
        coef = rem[b.degree + k] / bl
        if coef == 0:
            continue
        q[k] = coef
        for j, bc in enumerate(b.coeffs):
            rem[j + k] -= coef * bc
    return DensePoly(q), DensePoly(rem)


def _monic(p: DensePoly) -> DensePoly:
    if p.is_zero:
        return p
    lead = p.leading
    return DensePoly([c / lead for c in p.coeffs])


def poly_gcd(a: DensePoly, b: DensePoly) -> DensePoly:
    """Monic gcd over the rationals (Euclid with monic normalisation)."""
    a, b = a.to_exact(), b.to_exact()
    while not b.is_zero:
        _, r = _poly_divmod(a, b)
        a, b = b, _monic(r)
    return _monic(a)


def square_free_decomposition(p: DensePoly) -> list[tuple[DensePoly, int]]:
    """Yun's algorithm: [(g_i, i)] with p ~ prod g_i^i, g_i square-free."""
    p = _monic(p.to_exact())
    if p.degree <= 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b, _ = _poly_divmod(p, a)
    c, _ = _poly_divmod(dp, a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b, _ = _poly_divmod(b, g)
        c, _ = _poly_divmod(d, g)
        d = c - b.derivative()
        i += 1
    return out


def sturm_sequence(p: DensePoly) -> list[DensePoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero and seq[-1].degree > 0:
        _, r = _poly_divmod(seq[-2], seq[-1])
        if r.is_zero:
            break
        seq.append(-r)
    return [q for q in seq if not q.is_zero]


def _sign_variations(seq: list[DensePoly], x: Fraction) -> int:
    signs = []
    for q in seq:
        v = q.eval(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def sturm_root_count(p: DensePoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of square-free p in (lo, hi]."""
    seq = sturm_sequence(p.to_exact())
    return _sign_variations(seq, lo) - _sign_variations(seq, hi)


def _newton_polish(coeffs: list[float], dcoeffs: list[float], x: float, lo: float, hi: float) -> float:
    f = _kernels.horner(coeffs, x)
    df = _kernels.horner(dcoeffs, x)
    if df != 0.0:
        x1 = x - f / df
        if lo <= x1 <= hi and abs(_kernels.horner(coeffs, x1)) <= abs(f):
            return x1
    return x


def _try_exact_snap(g: DensePoly, x: float, tol: float) -> Fraction | None:
    """Snap an isolated float root to a nearby low-denominator rational when
    that rational is an exact root.  Tries continued-fraction convergents of
    increasing denominator caps; the candidate must stay inside the
    isolation neighbourhood so it cannot jump to a different root."""
    fx = Fraction(x)
    window = max(4.0 * tol, 1e-12 * (1.0 + abs(x)))
    cap = 1
    seen = set()
    while cap <= SNAP_DENOMINATOR_LIMIT:
        cand = fx.limit_denominator(cap)
        if cand not in seen:
            seen.add(cand)
            if abs(float(cand) - x) <= window and g.eval(cand) == 0:
                return cand
        cap *= 8
    return None


def _isolate_simple_roots(g: DensePoly, lo: float, hi: float, tol: float, expected: int | None):
    """Roots of a square-free polynomial in [lo, hi] via scan + bisection."""
    fc = g.float_coeffs()
    scale = max(abs(c) for c in fc)
    fc = [c / scale for c in fc]
    dc = DensePoly(fc).derivative().float_coeffs()
    subdivisions = SCAN_SUBDIVISIONS
    for _ in range(3):
        hits, brackets = _kernels.scan_sign_changes(fc, lo, hi, subdivisions)
        roots = list(hits)
        for a, b in brackets:
            r = _kernels.bisect_root(fc, a, b, tol)
            roots.append(_newton_polish(fc, dc, r, a, b))
        roots.sort()
        merged: list[float] = []
        for r in roots:
            if not merged or abs(r - merged[-1]) > max(tol, 1e-14 * max(1.0, abs(r))):
                merged.append(r)
        if expected is None or len(merged) == expected:
            return merged
        subdivisions *= 10
    raise RootIsolationError(
        f"could not isolate {expected} roots in [{lo}, {hi}] after sign-change scan "
        f"at resolution {(hi - lo) / subdivisions:g} with derivative-based refinement: "
        "pathological clustering"
    )


def real_roots(p: DensePoly, interval, tol: float = 1e-12) -> list[tuple[object, int]]:
    """All real roots of p in [lo, hi], as (root, multiplicity), ascending.

    Rational roots of exact polynomials are returned as Fractions (exact);
    the rest are floats within tol.  Multiple roots are reported once with
    their multiplicity, recovered from the square-free decomposition for
    exact input and from derivative refinement for float input.
    """
    lo, hi = interval
    if p.is_zero:
        raise ValueError("real_roots requires a nonzero polynomial")
    if not float(lo) < float(hi):
        raise ValueError("real_roots requires lo < hi")
    if p.degree == 0:
        return []

    if p.is_exact():
        out = []
        lo_q, hi_q = to_fraction(lo), to_fraction(hi)
        for g, mult in square_free_decomposition(p):
            expected = sturm_root_count(g, lo_q, hi_q)
            if g.eval(lo_q) == 0:
                expected += 1  # Sturm counts (lo, hi]; include the endpoint
            if expected == 0:
                continue
            found = _isolate_simple_roots(g, float(lo), float(hi), tol, expected)
            for r in found:
                snapped = _try_exact_snap(g, r, tol)
                out.append((snapped if snapped is not None else r, mult))
        out.sort(key=lambda rm: float(rm[0]))
        return out

    # Float path: scan p itself, then look for even-order touching roots via
    # the derivative and keep those where p is numerically zero.
    simple = _isolate_simple_roots(p, float(lo), float(hi), tol, None)
    out = [(r, 1) for r in simple]
    dp = p.derivative()
    if not dp.is_zero and dp.degree > 0:
        scale = p.max_abs_coeff()
        for r in _isolate_simple_roots(dp, float(lo), float(hi), tol, None):
            if abs(p.eval(r)) <= 1e-9 * (1.0 + scale) and all(
                abs(r - float(r0)) > 10 * tol for r0, _ in out
            ):
                out.append((r, 2))
    out.sort(key=lambda rm: float(rm[0]))
    return out
