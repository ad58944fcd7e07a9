"""Deformed-oscillator representations: construction and verification."""
from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np
import pytest

from monospectra.algebra import CentralValues
from monospectra.errors import ConstraintViolationError
from monospectra.fock import build_fock, build_mic_generators, mic_commutator_residuals, verify_oscillator
from monospectra.models import ModelId, structure_function
from monospectra.poly import DensePoly
from monospectra.solver import solve_model_unirreps


def phi_parabola(top):
    """x (top - x): vanishes at 0 and top, positive between."""
    return DensePoly([0, top, -1])


class TestBuildFock:
    def test_interior_norms_and_subdiagonal(self):
        rep = build_fock(phi_parabola(3), u=0, p=2)
        assert rep.phi_values == (2.0, 2.0)
        assert rep.aleph.tolist() == [[0, 0, 0], [0, 1, 0], [0, 0, 2]]
        assert rep.raise_op[1, 0] == pytest.approx(math.sqrt(2))
        assert rep.raise_op[2, 1] == pytest.approx(math.sqrt(2))
        assert np.array_equal(rep.lower_op, rep.raise_op.T)

    def test_vacuum_only_representation(self):
        rep = build_fock(phi_parabola(1), u=0, p=0)
        assert rep.dimension == 1
        assert np.all(rep.raise_op == 0) and np.all(rep.lower_op == 0)

    def test_two_state_ladder(self):
        rep = build_fock(phi_parabola(2), u=0, p=1)
        assert rep.raise_op.tolist() == [[0, 0], [1, 0]]

    def test_phi0_violation_named(self):
        with pytest.raises(ConstraintViolationError) as err:
            build_fock(DensePoly([1, 1]), u=0, p=0)
        assert err.value.condition == "Phi(0)=0"

    def test_top_violation_named(self):
        with pytest.raises(ConstraintViolationError) as err:
            build_fock(DensePoly([0, 1]), u=0, p=1)  # Phi(x) = x never closes
        assert err.value.condition == "Phi(p+1)=0" and err.value.n == 2

    def test_positivity_violation_names_n(self):
        phi = DensePoly([0, -4, 1])  # x(x - 4): Phi(1) < 0, roots 0 and 4
        with pytest.raises(ConstraintViolationError) as err:
            build_fock(phi, u=0, p=3)
        assert err.value.condition == "Phi(n)>0" and err.value.n == 1

    def test_callable_phi_accepted(self):
        rep = build_fock(lambda x: x * (3 - x), u=0, p=2)
        assert rep.phi_values == (2.0, 2.0)


class TestVerifyOscillator:
    def test_valid_rep_residuals_vanish(self):
        phi = phi_parabola(4)
        rep = build_fock(phi, u=0, p=3)
        report = verify_oscillator(rep, phi)
        assert report.passed
        assert max(report.residuals) <= 1e-12 * (1 + max(rep.phi_values))

    def test_corrupted_entry_detected(self):
        phi = phi_parabola(3)
        rep = build_fock(phi, u=0, p=2)
        corrupted = rep.raise_op.copy()
        corrupted[0, 1] = 0.5  # breaks [aleph, b+] = b+
        bad = type(rep)(p=rep.p, u=rep.u, phi_values=rep.phi_values,
                        aleph=rep.aleph, raise_op=corrupted, lower_op=rep.lower_op)
        report = verify_oscillator(bad, phi)
        assert report.res_raise > 0
        assert not report.passed

    def test_harmonic_number_operator(self):
        phi = DensePoly([0, 1])  # Phi(x) = x with the top constraint relaxed
        rep = build_fock(phi_parabola(4), u=0, p=3)
        # overwrite with harmonic norms by hand to check b+ b = diag(Phi(n))
        raise_op = np.zeros((4, 4))
        for n in range(3):
            raise_op[n + 1, n] = math.sqrt(n + 1.0)
        harmonic = type(rep)(p=3, u=0, phi_values=(1.0, 2.0, 3.0),
                             aleph=rep.aleph, raise_op=raise_op, lower_op=raise_op.T.copy())
        number = harmonic.raise_op @ harmonic.lower_op
        assert np.allclose(number, np.diag([0.0, 1.0, 2.0, 3.0]))
        report = verify_oscillator(harmonic, phi)
        assert report.res_number <= 1e-12 * 4


class TestMicGenerators:
    def test_vacuum_block(self):
        rep = build_fock(phi_parabola(1), u=F(1, 2), p=0)
        gens = build_mic_generators(rep)
        assert gens.B_mat.tolist() == [[1.0]]
        assert np.all(gens.D1 == 0) and np.all(gens.D2 == 0)

    def test_commutators_exact(self):
        rep = build_fock(phi_parabola(3), u=F(3, 2), p=2)
        gens = build_mic_generators(rep)
        assert mic_commutator_residuals(gens) == (0.0, 0.0)

    def test_two_state_diagonal_product(self):
        rep = build_fock(phi_parabola(2), u=0, p=1)
        gens = build_mic_generators(rep)
        assert gens.B_mat.tolist() == [[0.0, 0.0], [0.0, 2.0]]
        assert (gens.D1 @ gens.D2).tolist() == [[0.0, 0.0], [0.0, 1.0]]


class TestSolverIntegration:
    def test_solver_solutions_build_and_verify(self):
        cv = CentralValues(dict(c0=F(1), c1=F(0), c2=F(0), hbar=F(1), l4=F(0), T=F(0)))
        for p in range(7):
            for sol in solve_model_unirreps(ModelId.YANG_COULOMB, cv, p):
                phi = structure_function(ModelId.YANG_COULOMB, cv.replace(E=sol.E), sol.u)
                rep = build_fock(phi, sol.u, p)
                assert rep.dimension == sol.degeneracy == p + 1
                report = verify_oscillator(rep, phi)
                assert report.passed
