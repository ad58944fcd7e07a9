"""Polynomial core: expansion, evaluation, root isolation, exact solving."""
from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monospectra.errors import RootIsolationError
from monospectra.linsolve import solve_linear
from monospectra.poly import (
    DensePoly,
    FactoredPoly,
    poly_eval,
    poly_from_factors,
    poly_gcd,
    real_roots,
    square_free_decomposition,
)

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def expand_by_symmetric_sums(prefactor, roots):
    """Independent expansion oracle: prefactor * prod(x - r) via elementary
    symmetric polynomials enumerated over all root subsets."""
    import math

    n = len(roots)
    rs = [F(r) for r in roots]
    coeffs = []
    for k in range(n + 1):
        e = F(0)
        for combo in combinations(rs, n - k):
            e += math.prod(combo, start=F(1))
        coeffs.append(F(prefactor) * (-1) ** (n - k) * e)
    return coeffs


class TestPolyFromFactors:
    def test_binomial_expansion(self):
        p = poly_from_factors(1, [1, 2])
        assert p.coeffs == (2, -3, 1)

    def test_empty_product_is_constant(self):
        p = poly_from_factors(-2, [])
        assert p.coeffs == (-2,)
        assert p.degree == 0

    def test_six_root_energy_factorization(self):
        # mu roots {3/2, 1/2, 1/2, -1/2} and a double energy root 5/2,
        # relative to u = 3/2: prefactor 1, roots {0, -1, -1, -2, 1, 1}
        roots = [F(0), F(-1), F(-1), F(-2), F(1), F(1)]
        p = poly_from_factors(1, roots)
        assert p.degree == 6
        assert list(p.coeffs) == [0, 2, 1, -4, -2, 2, 1]
        assert list(p.coeffs) == expand_by_symmetric_sums(1, roots)

    @given(st.lists(small_fractions, max_size=5), small_fractions.filter(lambda f: f != 0))
    @settings(max_examples=60, deadline=None)
    def test_matches_subset_enumeration_oracle(self, roots, prefactor):
        p = poly_from_factors(prefactor, roots)
        assert list(p.coeffs) + [0] * (len(roots) + 1 - len(p.coeffs)) == expand_by_symmetric_sums(
            prefactor, roots
        )

    @given(st.lists(small_fractions, min_size=1, max_size=5), small_fractions.filter(lambda f: f != 0))
    @settings(max_examples=60, deadline=None)
    def test_roots_evaluate_to_zero_exactly(self, roots, prefactor):
        p = poly_from_factors(prefactor, roots)
        for r in roots:
            assert p.eval(r) == 0


class TestPolyEval:
    def test_quadratic_values(self):
        p = DensePoly([2, -3, 1])
        assert poly_eval(p, 0) == 2
        assert poly_eval(p, 1) == 0

    def test_zero_polynomial(self):
        z = DensePoly()
        for x in (0, 1, F(7, 3), -2.5):
            assert poly_eval(z, x) == 0

    def test_exact_for_rational_input(self):
        p = DensePoly([F(1, 3), F(-2, 7), F(5)])
        v = poly_eval(p, F(4, 9))
        assert isinstance(v, F)
        assert v == F(1, 3) + F(-2, 7) * F(4, 9) + F(5) * F(16, 81)


class TestRealRoots:
    def test_simple_quadratic(self):
        roots = real_roots(DensePoly([2, -3, 1]), (0, 5))
        assert [(r, m) for r, m in roots] == [(1, 1), (2, 1)]

    def test_no_real_roots(self):
        assert real_roots(DensePoly([1, 0, 1]), (-10, 10)) == []

    def test_sevenths_recovered_exactly(self):
        p = poly_from_factors(1, [F(k, 7) for k in range(1, 7)])
        roots = real_roots(p, (0, 1), tol=1e-10)
        assert [r for r, _ in roots] == [F(k, 7) for k in range(1, 7)]
        assert all(m == 1 for _, m in roots)

    def test_multiple_root_reported_once_with_multiplicity(self):
        p = poly_from_factors(1, [1, 1, 3])
        roots = real_roots(p, (0, 5))
        assert roots == [(1, 2), (3, 1)]

    def test_irrational_roots_within_tol(self):
        p = DensePoly([-2, 0, 1])  # x^2 - 2
        roots = real_roots(p, (0, 5), tol=1e-12)
        assert len(roots) == 1
        assert abs(float(roots[0][0]) - 2**0.5) < 1e-10

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            real_roots(DensePoly(), (0, 1))

    def test_bad_interval_rejected(self):
        with pytest.raises(ValueError):
            real_roots(DensePoly([1, 1]), (2, 2))

    def test_endpoint_root_found(self):
        p = poly_from_factors(1, [0, 2])
        roots = real_roots(p, (0, 1))
        assert roots == [(0, 1)]

    def test_float_coefficients_best_effort(self):
        p = poly_from_factors(1.0, [0.25, 0.75])
        roots = real_roots(p, (0.0, 1.0), tol=1e-12)
        assert len(roots) == 2
        assert abs(roots[0][0] - 0.25) < 1e-10 and abs(roots[1][0] - 0.75) < 1e-10

    @given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=8),
                    min_size=1, max_size=4, unique=True))
    @settings(max_examples=40, deadline=None)
    def test_random_rational_roots_recovered(self, roots):
        p = poly_from_factors(1, roots)
        found = real_roots(p, (-4, 4), tol=1e-11)
        assert [r for r, _ in found] == sorted(roots)


class TestSquareFree:
    def test_decomposition_multiplicities(self):
        p = poly_from_factors(1, [1, 1, 2, 2, 2])
        decomp = square_free_decomposition(p)
        assert [(tuple(g.coeffs), m) for g, m in decomp] == [((F(-1), F(1)), 2), ((F(-2), F(1)), 3)]

    def test_gcd_of_coprime_is_one(self):
        g = poly_gcd(poly_from_factors(1, [1]), poly_from_factors(1, [2]))
        assert g.coeffs == (F(1),)


class TestSolveLinear:
    def test_consistent_column(self):
        res = solve_linear([[1], [1]], [3, 3])
        assert res.consistent and res.rank == 1
        assert res.solution == (F(3),)

    def test_inconsistent_reports_first_violated_row(self):
        res = solve_linear([[1], [1]], [3, 4])
        assert not res.consistent
        assert res.violated_row == 1

    def test_unique_solution_2x2(self):
        res = solve_linear([[2, 1], [1, -1], [3, 0]], [5, 1, 6])
        assert res.consistent and res.rank == 2
        assert res.solution == (F(2), F(1))

    def test_exact_over_rationals(self):
        res = solve_linear([[F(1, 3), F(1, 7)], [F(2, 5), F(1, 2)], [F(0), F(1)]],
                           [F(1), F(2), F(22, 17)])
        assert res.rank == 2
        m = [[F(1, 3), F(1, 7)], [F(2, 5), F(1, 2)], [F(0), F(1)]]
        if res.consistent:
            for row, b in zip(m, [F(1), F(2), F(22, 17)]):
                assert sum(c * x for c, x in zip(row, res.solution)) == b

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            solve_linear([[1, 2]], [1])  # m < n

    def test_degree6_identity_system(self):
        # Matching a known linear combination of two degree-6 polynomials
        # is recovered exactly from its 7 coefficient equations.
        p1 = poly_from_factors(F(3), [0, 1, 2, 3, 4, 5])
        p0 = poly_from_factors(F(1), [F(1, 2), -1, 2, -3, 4, -5])
        w1, w2 = F(7, 3), F(-5, 2)
        target = p1.scale(w1) + p0.scale(w2)
        matrix = [[p1[d], p0[d]] for d in range(6, -1, -1)]
        rhs = [target[d] for d in range(6, -1, -1)]
        res = solve_linear(matrix, rhs)
        assert res.consistent and res.solution == (w1, w2)


class TestFactoredPoly:
    def test_grouping_and_expansion_consistency(self):
        fp = FactoredPoly.from_roots(F(2), [F(1), F(1), F(-3)])
        assert fp.factors == ((F(1), 2), (F(-3), 1))
        assert fp.expanded == poly_from_factors(F(2), [1, 1, -3])
        assert fp.eval(F(1)) == 0

    def test_float_roots_expand_within_tolerance(self):
        roots = [0.3, 1.7, -2.2]
        fp = FactoredPoly.from_roots(1.5, roots)
        scale = fp.expanded.max_abs_coeff()
        for x in (-3.0, -0.5, 0.0, 1.0, 2.5):
            direct = 1.5
            for r in roots:
                direct *= x - r
            assert abs(fp.expanded.eval(x) - direct) <= 1e-12 * (1 + scale)
