"""Finite-dimensional deformed-oscillator representations.

The deformed oscillator has generators aleph, b, b† with
    [aleph, b†] = b†,  [aleph, b] = -b,  b b† = Phi(aleph + 1),
    b† b = Phi(aleph).
A structure function with Phi(0) = 0, Phi(p+1) = 0 and Phi(n) > 0 for
n = 1..p closes a (p+1)-dimensional unitary representation; the matrices
here use the positive square root sqrt(Phi(n)) on the first subdiagonal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolationError
from .poly import DensePoly, FactoredPoly

ENTRY_TOL = 1e-9  # |Phi(0)|, |Phi(p+1)| relative to the largest coefficient


def _phi_eval(phi, x):
    if isinstance(phi, (DensePoly, FactoredPoly)):
        return phi.eval(x)
    return phi(x)


def _phi_scale(phi) -> float:
    if isinstance(phi, DensePoly):
        return phi.max_abs_coeff()
    if isinstance(phi, FactoredPoly):
        return phi.expanded.max_abs_coeff()
    return 1.0


@dataclass(frozen=True)
class FockRep:
    """(p+1)-dimensional representation matrices and the norms behind them.

    aleph = diag(0..p); raise_op has sqrt(Phi(n)) at entry (n, n-1);
    lower_op is its transpose.  phi_values holds Phi(1)..Phi(p).
    """

    p: int
    u: object
    phi_values: tuple
    aleph: np.ndarray
    raise_op: np.ndarray
    lower_op: np.ndarray

    @property
    def dimension(self) -> int:
        return self.p + 1


def build_fock(phi, u, p: int) -> FockRep:
    """Build the (p+1)-dimensional representation from a structure function.

    Raises ConstraintViolationError naming the failed representation-entry
    condition: Phi(0) = 0, Phi(p+1) = 0 (to ENTRY_TOL relative to the
    largest coefficient), or Phi(n) > 0 for n = 1..p.
    """
    if p < 0:
        raise ValueError("p must be a nonnegative integer")
    scale = 1.0 + _phi_scale(phi)

    phi0 = float(_phi_eval(phi, 0))
    if abs(phi0) > ENTRY_TOL * scale:
        raise ConstraintViolationError(
            "Phi(0)=0", 0, f"Phi(0) = {phi0:.6g} exceeds tolerance {ENTRY_TOL * scale:.3g}"
        )
    phi_top = float(_phi_eval(phi, p + 1))
    if abs(phi_top) > ENTRY_TOL * scale:
        raise ConstraintViolationError(
            "Phi(p+1)=0", p + 1, f"Phi({p + 1}) = {phi_top:.6g} exceeds tolerance {ENTRY_TOL * scale:.3g}"
        )
    phi_values = []
    for n in range(1, p + 1):
        v = float(_phi_eval(phi, n))
        if not v > 0.0:
            raise ConstraintViolationError(
                "Phi(n)>0", n, f"Phi({n}) = {v:.6g} is not positive"
            )
        phi_values.append(v)

    dim = p + 1
    aleph = np.diag(np.arange(dim, dtype=float))
    raise_op = np.zeros((dim, dim))
    for n in range(p):
        raise_op[n + 1, n] = math.sqrt(phi_values[n])
    return FockRep(
        p=p,
        u=u,
        phi_values=tuple(phi_values),
        aleph=aleph,
        raise_op=raise_op,
        lower_op=raise_op.T.copy(),
    )


@dataclass(frozen=True)
class OscillatorReport:
    """Frobenius norms of the defining-relation residuals.

    res_raise  = || [aleph, b†] - b† ||
    res_lower  = || [aleph, b] + b ||
    res_number = || b† b - Phi(aleph) ||
    res_shifted = || b b† - Phi(aleph + 1) || off the top state
    """

    res_raise: float
    res_lower: float
    res_number: float
    res_shifted: float
    tol: float

    @property
    def residuals(self) -> tuple[float, float, float, float]:
        return (self.res_raise, self.res_lower, self.res_number, self.res_shifted)

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals)


def verify_oscillator(rep: FockRep, phi) -> OscillatorReport:
    """Check the oscillator relations on a built representation."""
    al, bd, b = rep.aleph, rep.raise_op, rep.lower_op
    dim = rep.dimension
    max_phi = max([abs(v) for v in rep.phi_values], default=0.0)
    tol = 1e-12 * (1.0 + max_phi)

    res_raise = np.linalg.norm(al @ bd - bd @ al - bd)
    res_lower = np.linalg.norm(al @ b - b @ al + b)

    phi_diag = np.diag([float(_phi_eval(phi, n)) for n in range(dim)])
    phi_shift = np.diag([float(_phi_eval(phi, n + 1)) for n in range(dim)])
    res_number = np.linalg.norm(bd @ b - phi_diag)
    off_top = (b @ bd - phi_shift)[: dim - 1, : dim - 1] if dim > 1 else (b @ bd - phi_shift) * 0.0
    res_shifted = np.linalg.norm(off_top)
    return OscillatorReport(res_raise, res_lower, res_number, res_shifted, tol)


@dataclass(frozen=True)
class MicGenerators:
    """Ladder realization for the MIC model: aleph = B/2, b† = D1, b = D2."""

    B_mat: np.ndarray
    D1: np.ndarray
    D2: np.ndarray


def build_mic_generators(rep: FockRep) -> MicGenerators:
    """B = 2(aleph + u), D1 = raise, D2 = lower.

    [B, D1] = 2 D1 and [B, D2] = -2 D2 hold exactly as identities of the
    stored entries (the diagonal of B is equally spaced by exactly 2);
    use mic_commutator_residuals for the exact-arithmetic check, since a
    floating matmul can lose an ulp in (n+2)x - nx.
    """
    B = 2.0 * rep.aleph + 2.0 * float(rep.u) * np.eye(rep.dimension)
    return MicGenerators(B_mat=B, D1=rep.raise_op.copy(), D2=rep.lower_op.copy())


def mic_commutator_residuals(gens: MicGenerators) -> tuple[float, float]:
    """max |([B, D1] - 2 D1)_ij| and |([B, D2] + 2 D2)_ij| evaluated in
    exact rational arithmetic over the binary64 entries."""
    from fractions import Fraction

    dim = gens.B_mat.shape[0]
    bdiag = [Fraction(gens.B_mat[i, i]) for i in range(dim)]
    worst1 = Fraction(0)
    worst2 = Fraction(0)
    for i in range(dim):
        for j in range(dim):
            d1 = Fraction(gens.D1[i, j])
            d2 = Fraction(gens.D2[i, j])
            worst1 = max(worst1, abs((bdiag[i] - bdiag[j]) * d1 - 2 * d1))
            worst2 = max(worst2, abs((bdiag[i] - bdiag[j]) * d2 + 2 * d2))
    return float(worst1), float(worst2)
