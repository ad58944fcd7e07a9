"""The three-generator quadratic algebra and its deformed-oscillator
structure function.

The algebra is
    [A, B] = C,
    [A, C] = gamma*{A, B} + epsilon*B + zeta,
    [B, C] = -gamma*B^2 + d*A + z,
with gamma, epsilon constants and d, zeta, z functions of the central
elements.  Its Casimir in generator form is
    K = C^2 - gamma*{A, B^2} + (gamma^2 - epsilon)*B^2 - 2*zeta*B + 2*z*A.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._numbers import is_exact
from .errors import DomainError, EvaluationError
from .poly import DensePoly


class CentralValues:
    """Assignment of numbers to the central symbols of a model.

    Behaves like a read-only mapping; lookups of missing symbols raise a
    DomainError naming the symbol.
    """

    def __init__(self, values: dict):
        self._values = dict(values)

    def __getitem__(self, symbol: str):
        try:
            return self._values[symbol]
        except KeyError:
            raise DomainError(f"central symbol '{symbol}' is not assigned") from None

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._values

    def get(self, symbol: str, default=None):
        return self._values.get(symbol, default)

    def keys(self):
        return self._values.keys()

    def items(self):
        return self._values.items()

    def as_dict(self) -> dict:
        return dict(self._values)

    def replace(self, **updates) -> "CentralValues":
        merged = dict(self._values)
        merged.update(updates)
        return CentralValues(merged)

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self._values.items()))
        return f"CentralValues({inner})"


@dataclass(frozen=True)
class CasimirValue:
    """A number for the Casimir, tagged with where it came from."""

    value: object
    source: str = "user-supplied"  # matched-from-factorization | matrix-evaluated | user-supplied

    def __post_init__(self):
        if self.source not in (
            "matched-from-factorization",
            "matrix-evaluated",
            "user-supplied",
        ):
            raise ValueError(f"unknown CasimirValue source {self.source!r}")


def _as_constant_fn(value):
    def fn(cv):
        return value

    return fn


@dataclass(frozen=True)
class AlgebraSpec:
    """Structure data (gamma, epsilon, d, zeta, z) of the quadratic algebra.

    epsilon may be a constant or a function of the central values; d, zeta
    and z are functions of the central values.  gamma must be nonzero.
    """

    gamma: object
    epsilon: object
    d_fn: object
    zeta_fn: object
    z_fn: object

    def __post_init__(self):
        if self.gamma == 0:
            raise DomainError("gamma must be nonzero")

    @staticmethod
    def from_constants(gamma, epsilon, d, zeta, z) -> "AlgebraSpec":
        return AlgebraSpec(
            gamma=gamma,
            epsilon=epsilon,
            d_fn=_as_constant_fn(d),
            zeta_fn=_as_constant_fn(zeta),
            z_fn=_as_constant_fn(z),
        )

    def _eval(self, name: str, fn, cv: CentralValues):
        try:
            return fn(cv)
        except DomainError:
            raise
        except Exception as exc:  # noqa: BLE001 - reported with the symbol
            raise EvaluationError(name, str(exc)) from exc

    def constants_at(self, cv: CentralValues) -> dict:
        eps = self.epsilon
        if callable(eps):
            eps = self._eval("epsilon", eps, cv)
        return {
            "gamma": self.gamma,
            "epsilon": eps,
            "d": self._eval("d", self.d_fn, cv),
            "zeta": self._eval("zeta", self.zeta_fn, cv),
            "z": self._eval("z", self.z_fn, cv),
        }


def structure_function_parts(spec: AlgebraSpec, cv: CentralValues, u) -> tuple[DensePoly, DensePoly]:
    """Split the generic structure function as Phi = P1*K + P0.

    With t = 2(x+u) - 1 the five contributions are
        P1       = -3072 gamma^6 t^2
        P0       =    48 d gamma^8 (t-2) t^4 (t+2)
                  + 12288 gamma^4 zeta^2
                  +   128 gamma^6 (2 gamma z - d epsilon) t^2 (3 t^2 - 4)
                  -   256 gamma^4 (2 d epsilon gamma^2 + 12 epsilon gamma z
                                   - 4 gamma^3 z - 3 d epsilon^2) t^2
    which is degree 6 in x whenever d != 0.  Coefficients stay exact
    rationals for exact inputs.
    """
    c = spec.constants_at(cv)
    gamma, eps, d, zeta, z = c["gamma"], c["epsilon"], c["d"], c["zeta"], c["z"]
    exact = all(is_exact(v) for v in (gamma, eps, d, zeta, z, u))
    if exact:
        gamma, eps, d, zeta, z, u = map(Fraction, (gamma, eps, d, zeta, z, u))

    t = DensePoly([2 * u - 1, 2])
    t2 = t * t
    t4 = t2 * t2
    one = DensePoly([1])
    g2 = gamma * gamma
    g4 = g2 * g2
    g6 = g4 * g2
    g8 = g4 * g4

    p1 = t2.scale(-3072 * g6)

    term_d = ((t - one.scale(2)) * t4 * (t + one.scale(2))).scale(48 * d * g8)
    term_zeta = DensePoly([12288 * g4 * zeta * zeta])
    term_mixed = (t2 * (t2.scale(3) - one.scale(4))).scale(128 * g6 * (2 * gamma * z - d * eps))
    term_const = t2.scale(
        -256 * g4 * (2 * d * eps * g2 + 12 * eps * gamma * z - 4 * g2 * gamma * z - 3 * d * eps * eps)
    )
    p0 = term_d + term_zeta + term_mixed + term_const
    return p1, p0


def generic_structure_function(spec: AlgebraSpec, cv: CentralValues, K, u) -> DensePoly:
    """The degree-6 structure function of the quadratic algebra at Casimir K."""
    if isinstance(K, CasimirValue):
        K = K.value
    p1, p0 = structure_function_parts(spec, cv, u)
    return p1.scale(K) + p0


def _check_square_same(mats) -> int:
    dims = set()
    for m in mats:
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("generator matrices must be square")
        dims.add(m.shape[0])
    if len(dims) != 1:
        raise DomainError(f"generator matrices have mismatched dimensions {sorted(dims)}")
    return dims.pop()


def casimir_from_generators(A, B, C, spec: AlgebraSpec, cv: CentralValues) -> np.ndarray:
    """Casimir matrix C^2 - gamma(AB^2 + B^2A) + (gamma^2-eps)B^2 - 2 zeta B + 2 z A."""
    _check_square_same((A, B, C))
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float)
    c = spec.constants_at(cv)
    gamma = float(c["gamma"])
    eps = float(c["epsilon"])
    zeta = float(c["zeta"])
    z = float(c["z"])
    B2 = B @ B
    return (
        C @ C
        - gamma * (A @ B2 + B2 @ A)
        + (gamma * gamma - eps) * B2
        - 2.0 * zeta * B
        + 2.0 * z * A
    )


@dataclass(frozen=True)
class RelationReport:
    """Frobenius-norm residuals of the three defining relations."""

    commutator_residual: float  # || [A,B] - C ||
    ac_residual: float  # || [A,C] - gamma{A,B} - eps B - zeta ||
    bc_residual: float  # || [B,C] + gamma B^2 - d A - z ||
    tol: float

    @property
    def residuals(self) -> tuple[float, float, float]:
        return (self.commutator_residual, self.ac_residual, self.bc_residual)

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals)


def check_q3_relations(A, B, C, spec: AlgebraSpec, cv: CentralValues, tol: float) -> RelationReport:
    """Residuals of the quadratic-algebra relations for given matrices."""
    n = _check_square_same((A, B, C))
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float)
    c = spec.constants_at(cv)
    gamma = float(c["gamma"])
    eps = float(c["epsilon"])
    d = float(c["d"])
    zeta = float(c["zeta"])
    z = float(c["z"])
    eye = np.eye(n)

    r1 = np.linalg.norm(A @ B - B @ A - C)
    r2 = np.linalg.norm(A @ C - C @ A - gamma * (A @ B + B @ A) - eps * B - zeta * eye)
    r3 = np.linalg.norm(B @ C - C @ B + gamma * (B @ B) - d * A - z * eye)
    return RelationReport(r1, r2, r3, tol)
