"""Unirrep solving, closed-form energies, metamorphosis inversion,
Casimir matching, spectrum tables, and the grid-scan oracle."""
from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monospectra.algebra import CentralValues, generic_structure_function
from monospectra.errors import DomainError
from monospectra.models import (
    ModelId,
    kepler_aux,
    quadratic_algebra_spec,
    structure_function,
    unirrep_problem,
    yc_structure_function,
)
from monospectra.poly import FactoredPoly
from monospectra.solver import (
    best_casimir_match,
    ccm_invert,
    energy_kepler,
    energy_mic_primed,
    energy_yc,
    grid_scan_unirreps,
    match_casimir,
    solutions_match,
    solve_model_unirreps,
    spectrum_table,
)
from monospectra.algebra import structure_function_parts

YC_BASE = dict(c0=F(1), c1=F(0), c2=F(0), hbar=F(1), l4=F(0), T=F(0))
KEPLER_BASE = dict(a1=F(1), b1=F(0), c0=F(0), c1=F(0), c2=F(0), c3=F(0),
                   c4=F(1), d1=F(0), q1=F(0), q2=F(0))
MIC_FLAT = dict(a1=F(0), b1=F(1), c0=F(2), c1=F(0), c4=F(0), d1=F(0),
                qQ=F(0), qL=F(0), eps_osc=F(1))


class TestSolveUnirrep:
    def test_yc_ground_representation(self):
        sols = solve_model_unirreps(ModelId.YANG_COULOMB, CentralValues(YC_BASE), 0)
        assert [(s.u, s.E) for s in sols] == [(F(3, 2), F(-1, 8))]

    def test_yc_first_excited(self):
        sols = solve_model_unirreps(ModelId.YANG_COULOMB, CentralValues(YC_BASE), 1)
        assert [(s.u, s.E) for s in sols] == [(F(3, 2), F(-1, 18))]

    def test_positivity_trace_recorded(self):
        sol = solve_model_unirreps(ModelId.YANG_COULOMB, CentralValues(YC_BASE), 2)[0]
        assert sol.phi_check == (48.0, 72.0)
        assert sol.degeneracy == 3
        assert sol.max_residual <= 1e-9

    def test_kepler_full_census(self):
        sols = solve_model_unirreps(ModelId.KEPLER_MONOPOLE, CentralValues(KEPLER_BASE), 1)
        assert [(s.u, s.E) for s in sols] == [
            (F(-1), F(-3, 2)), (F(-1), F(3, 2)),
            (F(-1, 2), F(-1)), (F(-1, 2), F(1)),
            (F(1), F(-5, 2)), (F(1), F(5, 2)),
        ]

    def test_mic_census_excludes_degenerate_column(self):
        sols = solve_model_unirreps(ModelId.MIC_OSCILLATOR, CentralValues(MIC_FLAT), 1)
        assert [(s.u, s.E) for s in sols] == [
            (F(3, 2), F(-9)), (F(3, 2), F(9)),
            (F(2), F(-10)), (F(2), F(10)),
            (F(5, 2), F(-11)), (F(5, 2), F(11)),
        ]

    def test_equality_constraints_hold_for_all_solutions(self):
        for model, base, pmax in (
            (ModelId.YANG_COULOMB, YC_BASE, 3),
            (ModelId.KEPLER_MONOPOLE, KEPLER_BASE, 3),
            (ModelId.MIC_OSCILLATOR, MIC_FLAT, 2),
        ):
            cv = CentralValues(base)
            for p in range(pmax + 1):
                for sol in solve_model_unirreps(model, cv, p):
                    assert sol.phi0_residual <= 1e-9
                    assert sol.phi_top_residual <= 1e-9
                    assert all(v > 0 for v in sol.phi_check)

    def test_strict_interval_mode(self):
        sols = solve_model_unirreps(ModelId.YANG_COULOMB, CentralValues(YC_BASE), 2,
                                    strict_interval=True)
        assert [(s.u, s.E) for s in sols] == [(F(3, 2), F(-1, 32))]


class TestEnergyYc:
    def test_ground_and_excited(self):
        cv = CentralValues(YC_BASE)
        assert energy_yc(0, cv) == F(-1, 8)
        assert energy_yc(1, cv) == F(-1, 18)

    def test_zero_coupling(self):
        cv = CentralValues(dict(YC_BASE, c0=F(0)))
        for p in range(4):
            assert energy_yc(p, cv) == 0

    def test_agrees_with_solver(self):
        cv = CentralValues(dict(YC_BASE, c0=F(2), c1=F(1, 2), c2=F(1, 3), l4=F(1), T=F(1, 2)))
        for p in range(3):
            e = energy_yc(p, cv)
            sols = solve_model_unirreps(ModelId.YANG_COULOMB, cv, p)
            assert any(abs(float(s.E) - float(e)) < 1e-10 for s in sols)


def brentq_oracle(fn, lo, hi, tol=1e-14):
    """Plain bisection root finder used as an independent check."""
    flo, fhi = fn(lo), fn(hi)
    assert flo * fhi <= 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0 or hi - lo < tol:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


class TestEnergyKepler:
    def test_linear_spectrum_at_base_point(self):
        cv = CentralValues(KEPLER_BASE)
        assert energy_kepler(0, (1, 1), cv) == [F(1)]
        assert energy_kepler(2, (1, 1), cv) == [F(3)]

    def test_branch_shift_with_monopole_charges(self):
        cv = CentralValues(dict(KEPLER_BASE, c2=F(3), q1=F(2), q2=F(1)))
        aux = kepler_aux(cv.replace(E=0), need_beta=False)
        assert aux.m1 == 2
        for branch in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
            r = 2 + 0 + branch[0] * aux.m1 + branch[1] * aux.m2
            for e in energy_kepler(0, branch, cv):
                arg = float(1 - 2 * 0 * e + 0)
                beta = (4 * float(e)) / (4 * math.sqrt(float(cv["c4"]) + float(cv["d1"])))
                # back-substitute the unsquared condition 2 beta(E) = r
                aux_e = kepler_aux(cv.replace(E=e))
                assert abs(2 * float(aux_e.beta) - float(r)) < 1e-10

    def test_against_bisection_oracle(self):
        cv = CentralValues(dict(KEPLER_BASE, a1=F(2), b1=F(1, 2), c0=F(1), c4=F(3)))
        sols = energy_kepler(1, (1, 1), cv)
        assert sols

        def resid(e):
            aux = kepler_aux(cv.replace(E=e))
            return 2 * float(aux.beta) - 4.0  # r = 2 + 2p = 4

        e_oracle = brentq_oracle(resid, 0.0, float(cv["c4"]) / (2 * float(cv["b1"])) - 1e-9)
        assert any(abs(float(e) - e_oracle) < 1e-9 for e in sols)

    def test_degenerate_rejected(self):
        cv = CentralValues(dict(KEPLER_BASE, a1=F(0), b1=F(0)))
        with pytest.raises(DomainError):
            energy_kepler(0, (1, 1), cv)


class TestEnergyMic:
    def test_primed_values(self):
        cv = CentralValues(MIC_FLAT)
        assert energy_mic_primed(0, 1, cv) == -3
        assert energy_mic_primed(1, 1, cv) == -7

    def test_zero_eps_warns(self):
        cv = CentralValues(dict(MIC_FLAT, eps_osc=F(0)))
        with pytest.warns(UserWarning):
            assert energy_mic_primed(0, 1, cv) == 0

    def test_branch_dependence(self):
        cv = CentralValues(dict(MIC_FLAT, qL=F(2)))
        assert energy_mic_primed(0, 1, cv) == -(4 * 0 - 0 + 2 * 2 + 3)
        assert energy_mic_primed(0, -1, cv) == -(4 * 0 - 0 - 2 * 2 + 3)


class TestCcmInvert:
    def test_flat_case(self):
        cv = CentralValues(MIC_FLAT)
        assert ccm_invert(F(-3), 0, 1, cv) == F(3, 2)
        assert ccm_invert(F(-7), 1, 1, cv) == F(7, 2)

    def test_shifted_c4(self):
        cv = CentralValues(dict(MIC_FLAT, c4=F(5)))
        assert ccm_invert(F(-3 - 5), 0, 1, cv) == F(4)

    def test_consistency_sweep(self):
        # metamorphosis consistency: back-substitution reproduces
        # 4p - 2 qQ + 2 eps2 qL + 3 within 1e-10
        for c4 in (F(0), F(2), F(-1)):
            for qQ, qL in ((F(0), F(0)), (F(1), F(-1)), (F(2), F(1))):
                cv = CentralValues(dict(MIC_FLAT, c4=c4, qQ=qQ, qL=qL))
                for p in range(3):
                    ep = energy_mic_primed(p, 1, cv)
                    e = ccm_invert(ep, p, 1, cv)
                    r = 4 * p - 2 * qQ + 2 * qL + 3
                    lhs = (2 * cv["b1"] * e - cv["c1"] * qQ**2 - c4) / math.sqrt(
                        float(cv["c0"]) / 2 - 2 * float(cv["a1"]) * float(e) + float(cv["d1"]) * float(qQ) ** 2
                    )
                    assert abs(float(lhs) - float(r)) < 1e-10

    def test_l3_binding_flag(self):
        cv = CentralValues(dict(MIC_FLAT, qQ=F(1), qL=F(2), d1=F(0)))
        e_q = ccm_invert(energy_mic_primed(0, 1, cv), 0, 1, cv, qn_binding="Q")
        e_l = ccm_invert(energy_mic_primed(0, 1, cv), 0, 1, cv, qn_binding="L3")
        # with c1 = d1 = 0 both bindings coincide; exercise the flag path
        assert e_q == e_l

    def test_inconsistent_input_rejected(self):
        cv = CentralValues(MIC_FLAT)
        with pytest.raises(DomainError):
            ccm_invert(F(17), 0, 1, cv)


class TestMatchCasimir:
    def test_synthetic_round_trip_exact(self):
        spec = quadratic_algebra_spec(ModelId.YANG_COULOMB)
        cv = CentralValues(dict(YC_BASE, E=F(-1, 2)))
        u = F(1, 3)
        p1, p0 = structure_function_parts(spec, cv, u)
        lam0, k0 = F(5, 7), F(-11, 3)
        synthetic = FactoredPoly(prefactor=1, factors=(), expanded=(p1.scale(k0) + p0).scale(lam0))
        fit = match_casimir(spec, cv, u, synthetic)
        assert fit.consistent and fit.residual == 0
        assert fit.lam == lam0 and fit.K == k0

    def test_yc_reflected_fits_exactly(self):
        spec = quadratic_algebra_spec(ModelId.YANG_COULOMB)
        cv = CentralValues(dict(YC_BASE, E=F(-1, 8)))
        u = F(3, 2)
        fits = {
            v: match_casimir(spec, cv, u, yc_structure_function(cv, u, v), variant=v)
            for v in ("printed", "reflected")
        }
        assert fits["reflected"].consistent
        assert fits["reflected"].relative_residual == 0
        assert not fits["printed"].consistent
        assert fits["printed"].first_mismatch_degree is not None
        best = best_casimir_match(spec, cv, u, {
            v: yc_structure_function(cv, u, v) for v in ("printed", "reflected")})
        assert best.variant == "reflected"

    def test_kepler_printed_reports_discrepancy(self):
        spec = quadratic_algebra_spec(ModelId.KEPLER_MONOPOLE)
        cv = CentralValues(dict(KEPLER_BASE, E=F(1)))
        u = F(1)
        fit = match_casimir(spec, cv, u, structure_function(ModelId.KEPLER_MONOPOLE, cv, u))
        assert not fit.consistent
        assert fit.first_mismatch_degree == 0
        assert fit.mismatched_degrees == (0, 1, 3, 4, 6)
        assert math.isfinite(float(fit.K)) and math.isfinite(float(fit.lam))

    def test_fit_is_deterministic(self):
        spec = quadratic_algebra_spec(ModelId.KEPLER_MONOPOLE)
        cv = CentralValues(dict(KEPLER_BASE, E=F(1)))
        a = match_casimir(spec, cv, F(1), structure_function(ModelId.KEPLER_MONOPOLE, cv, F(1)))
        b = match_casimir(spec, cv, F(1), structure_function(ModelId.KEPLER_MONOPOLE, cv, F(1)))
        assert a == b

    @given(st.fractions(min_value=-3, max_value=-1, max_denominator=4),
           st.fractions(min_value=-2, max_value=2, max_denominator=3))
    @settings(max_examples=20, deadline=None)
    def test_yc_reflected_fits_for_random_points(self, E, u):
        cv = CentralValues(dict(YC_BASE, c0=F(2), E=E))
        spec = quadratic_algebra_spec(ModelId.YANG_COULOMB)
        fit = match_casimir(spec, cv, u, yc_structure_function(cv, u, "reflected"))
        assert fit.consistent and fit.residual == 0


class TestSpectrumTable:
    def test_yc_three_rows(self):
        rows = spectrum_table(ModelId.YANG_COULOMB, dict(YC_BASE), 2)
        assert [r.E for r in rows] == [F(-1, 8), F(-1, 18), F(-1, 32)]
        assert all(r.accepted for r in rows)
        assert [r.degeneracy for r in rows] == [1, 2, 3]

    def test_empty_range_empty_table(self):
        values = dict(YC_BASE)
        values["l4"] = []
        assert spectrum_table(ModelId.YANG_COULOMB, values, 2) == []

    def test_kepler_rows(self):
        rows = spectrum_table(ModelId.KEPLER_MONOPOLE, dict(KEPLER_BASE), 2, branch=(1, 1))
        assert [r.E for r in rows] == [F(1), F(2), F(3)]
        assert all(r.accepted for r in rows)

    def test_mic_rows_carry_both_energies(self):
        rows = spectrum_table(ModelId.MIC_OSCILLATOR, dict(MIC_FLAT), 0)
        assert len(rows) == 1
        assert rows[0].E_primed == F(-3) and rows[0].E == F(3, 2)

    def test_quantum_number_product(self):
        values = dict(YC_BASE)
        values["T"] = [F(0), F(1, 2)]
        rows = spectrum_table(ModelId.YANG_COULOMB, values, 0)
        assert len(rows) == 2
        assert [r.qn[1] for r in rows] == [F(0), F(1, 2)]

    def test_rejected_rows_flagged(self):
        rows = spectrum_table(ModelId.MIC_OSCILLATOR, dict(MIC_FLAT), 1)
        rejected = [r for r in rows if not r.accepted]
        assert rejected and all("not positive" in r.reject_reason for r in rejected)


class TestGridOracle:
    def test_yc_equivalence_small_grid(self):
        cv = CentralValues(YC_BASE)
        problem = unirrep_problem(ModelId.YANG_COULOMB, cv)
        for p in (0, 1):
            sols = solve_model_unirreps(ModelId.YANG_COULOMB, cv, p)
            scan = grid_scan_unirreps(problem, p, (-2.3, 2.6), (-1.3, -0.011), n=80)
            assert solutions_match(sols, list(scan.isolated))

    def test_continuum_lines_reported(self):
        cv = CentralValues(YC_BASE)
        problem = unirrep_problem(ModelId.YANG_COULOMB, cv)
        scan = grid_scan_unirreps(problem, 0, (-2.3, 2.6), (-1.3, -0.011), n=80)
        assert any(abs(x - 0.5) < 1e-5 for x in scan.continuum_u)
        assert any(abs(x + 0.5) < 1e-5 for x in scan.continuum_u)

    def test_kepler_equivalence_small_grid(self):
        cv = CentralValues(KEPLER_BASE)
        problem = unirrep_problem(ModelId.KEPLER_MONOPOLE, cv)
        for p in (0, 1):
            sols = solve_model_unirreps(ModelId.KEPLER_MONOPOLE, cv, p)
            scan = grid_scan_unirreps(problem, p, (-2.7, 1.9), (-4.3, 4.2), n=80)
            assert solutions_match(sols, list(scan.isolated))


class TestGenericFactorizedBridge:
    def test_fitted_casimir_rebuilds_structure_function(self):
        # generic form with the fitted Casimir equals the factorization up
        # to the fitted scale at every Fock weight
        spec = quadratic_algebra_spec(ModelId.YANG_COULOMB)
        cv = CentralValues(dict(YC_BASE, E=F(-1, 18)))
        u = F(3, 2)
        factored = yc_structure_function(cv, u, "reflected")
        fit = match_casimir(spec, cv, u, factored)
        phi = generic_structure_function(spec, cv, fit.K, u)
        for n in range(4):
            assert phi.eval(n) * fit.lam == factored.expanded.eval(n)
