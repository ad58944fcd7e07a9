"""Catalog of the three monopole models.

For each model this module carries the parameter set, the structure
constants of its quadratic algebra (Kepler and Yang-Coulomb only; the
MIC oscillator closes a higher polynomial algebra), the auxiliary
root quantities, the factorized structure function, and the Taub-NUT
metric profile.

Quantum-number naming: the Kepler model uses q1 for the L3 eigenvalue
and q2 for the charge-operator (Q) eigenvalue; the MIC model stores the
unambiguous names qQ and qL.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from ._numbers import is_exact, sqrt_number, to_fraction
from .algebra import AlgebraSpec, CentralValues
from .errors import DomainError, UsageError
from .poly import DensePoly, FactoredPoly, poly_compose


class ModelId(enum.Enum):
    KEPLER_MONOPOLE = "kepler"
    YANG_COULOMB = "yc"
    MIC_OSCILLATOR = "mic"

    @staticmethod
    def parse(name: str) -> "ModelId":
        for m in ModelId:
            if name in (m.value, m.name):
                return m
        raise UsageError(f"unknown model {name!r}; expected one of kepler, yc, mic")


# Symbols accepted in parameter files, per model.  The energy symbol is
# optional on input (it is an output of the spectrum computation).
MODEL_SYMBOLS = {
    ModelId.KEPLER_MONOPOLE: {
        "required": ("a1", "b1", "c0", "c1", "c2", "c3", "c4", "d1", "q1", "q2"),
        "energy": "E",
    },
    ModelId.YANG_COULOMB: {
        "required": ("hbar", "l4", "T", "c0", "c1", "c2"),
        "energy": "E",
    },
    ModelId.MIC_OSCILLATOR: {
        "required": ("a1", "b1", "c0", "c1", "c4", "d1", "qQ", "qL", "eps_osc"),
        "energy": "Eprime",
    },
}

ETA_VARIANTS = ("printed", "reflected")


def _parse_number(value, key: str):
    if isinstance(value, bool):
        raise UsageError(f"parameter {key!r} must be a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"parameter {key!r} is not a rational literal: {value!r}") from exc
    raise UsageError(f"parameter {key!r} must be a number, got {type(value).__name__}")


def central_values_from_mapping(model: ModelId, mapping, *, require_energy: bool = False) -> CentralValues:
    """Validate a parameter mapping for a model; unknown keys are an error."""
    symbols = MODEL_SYMBOLS[model]
    allowed = set(symbols["required"]) | {symbols["energy"]}
    values = {}
    for key, raw in mapping.items():
        if key not in allowed:
            raise UsageError(
                f"unknown parameter {key!r} for model {model.value}; allowed: {sorted(allowed)}"
            )
        values[key] = _parse_number(raw, key)
    missing = [k for k in symbols["required"] if k not in values]
    if require_energy and symbols["energy"] not in values:
        missing.append(symbols["energy"])
    if missing:
        raise UsageError(f"missing parameters for model {model.value}: {missing}")
    cv = CentralValues(values)
    _check_invariants(model, cv)
    return cv


def _check_invariants(model: ModelId, cv: CentralValues) -> None:
    if model is ModelId.YANG_COULOMB:
        l4 = cv["l4"]
        if not (is_exact(l4) and to_fraction(l4).denominator == 1 and l4 >= 0):
            raise DomainError(f"l4 must be a nonnegative integer, got {l4}")
        T = cv["T"]
        if not (is_exact(T) and to_fraction(2 * T).denominator == 1 and T >= 0):
            raise DomainError(f"T must be a nonnegative integer or half-integer, got {T}")
        if not cv["hbar"] > 0:
            raise DomainError(f"hbar must be positive, got {cv['hbar']}")


# ---------------------------------------------------------------------------
# Structure constants of the quadratic algebra (Kepler and Yang-Coulomb)
# ---------------------------------------------------------------------------


def _kepler_d(cv):
    return 8 * cv["b1"] * cv["E"] - 4 * cv["d1"] * cv["q2"] ** 2 - 4 * cv["c4"]


def _kepler_zeta(cv):
    E, q1, q2 = cv["E"], cv["q1"], cv["q2"]
    a1, c0, c1 = cv["a1"], cv["c0"], cv["c1"]
    dc = cv["c2"] - cv["c3"]
    return (
        -4 * a1 * E * q2 * q1
        + 2 * c1 * q2**3 * q1
        + c0 * q2 * q1
        + a1 * dc * E
        - Fraction(1, 2) * c1 * dc * q2**2
        - Fraction(1, 4) * c0 * dc
    )


def _kepler_z(cv):
    E, q1, q2 = cv["E"], cv["q1"], cv["q2"]
    a, b, d = cv["a1"], cv["b1"], cv["d1"]
    c0, c1, c4 = cv["c0"], cv["c1"], cv["c4"]
    return (
        2 * a**2 * E**2
        - 2 * (a * c1 + 2 * b) * E * q2**2
        - 4 * b * E * q1**2
        + Fraction(1, 2) * (c1**2 + 4 * d) * q2**4
        + 2 * d * q2**2 * q1**2
        + (4 * b - a * c0) * E
        + Fraction(1, 2) * (c0 * c1 + 4 * c4 - 4 * d) * q2**2
        + 2 * c4 * q1**2
        + Fraction(1, 8) * (c0**2 - 16 * c4)
    )


def _yc_t2(cv):
    """Eigenvalue of the su(2) Casimir block, hbar^2 T(T+1)."""
    return cv["hbar"] ** 2 * cv["T"] * (cv["T"] + 1)


def _yc_l2(cv):
    """Eigenvalue of the so(4) Casimir block, hbar^2 l4(l4+2)."""
    return cv["hbar"] ** 2 * cv["l4"] * (cv["l4"] + 2)


def quadratic_algebra_spec(model: ModelId) -> AlgebraSpec:
    """Structure constants (gamma, epsilon, d, zeta, z) for a model.

    Both supported models have gamma = 2.  The MIC oscillator is rejected:
    its symmetry algebra closes polynomially, not quadratically.
    """
    if model is ModelId.KEPLER_MONOPOLE:
        return AlgebraSpec(
            gamma=Fraction(2),
            epsilon=lambda cv: cv["c2"] + cv["c3"],
            d_fn=_kepler_d,
            zeta_fn=_kepler_zeta,
            z_fn=_kepler_z,
        )
    if model is ModelId.YANG_COULOMB:
        return AlgebraSpec(
            gamma=Fraction(2),
            epsilon=Fraction(8),
            d_fn=lambda cv: 8 * cv["E"],
            zeta_fn=lambda cv: -2 * cv["c0"] * (cv["c1"] - cv["c2"]) - 4 * cv["c0"] * _yc_t2(cv),
            z_fn=lambda cv: -4 * _yc_l2(cv) * cv["E"] + (16 - 4 * cv["c1"] - 4 * cv["c2"]) * cv["E"] + 2 * cv["c0"] ** 2,
        )
    raise DomainError(
        "the MIC oscillator closes a higher polynomial algebra; it has no quadratic-algebra column"
    )


# ---------------------------------------------------------------------------
# Auxiliary quantities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KeplerAux:
    """m1, m2, the four tau = 1 +- m1 +- m2, and beta(E).

    beta is populated only when the square-root argument
    c4 - 2 b1 E + d1 q2^2 is positive.
    """

    m1: object
    m2: object
    tau_pp: object
    tau_pm: object
    tau_mp: object
    tau_mm: object
    beta: object
    prefactor_arg: object


@dataclass(frozen=True)
class YcAux:
    """n1, n2, the four mu = (1 +- n1 +- n2)/2, and eta(E) for E < 0."""

    n1: object
    n2: object
    mu_pp: object
    mu_pm: object
    mu_mp: object
    mu_mm: object
    eta: object


def _kepler_msq(cv):
    m1sq = cv["c2"] + (cv["q1"] - cv["q2"]) ** 2
    m2sq = cv["c3"] + (cv["q1"] + cv["q2"]) ** 2
    if m1sq < 0:
        raise DomainError(f"negative square-root argument in m1^2 = c2 + (q1 - q2)^2 = {m1sq}")
    if m2sq < 0:
        raise DomainError(f"negative square-root argument in m2^2 = c3 + (q1 + q2)^2 = {m2sq}")
    return m1sq, m2sq


def _kepler_prefactor_arg(cv, E=None):
    E = cv["E"] if E is None else E
    return cv["c4"] - 2 * cv["b1"] * E + cv["d1"] * cv["q2"] ** 2


def _kepler_beta_numerator(cv, E=None):
    E = cv["E"] if E is None else E
    return 4 * cv["a1"] * E - 2 * cv["c1"] * cv["q2"] ** 2 - cv["c0"]


def kepler_aux(cv: CentralValues, *, need_beta: bool = True) -> KeplerAux:
    m1sq, m2sq = _kepler_msq(cv)
    m1 = sqrt_number(m1sq, context="m1^2 = c2 + (q1 - q2)^2")
    m2 = sqrt_number(m2sq, context="m2^2 = c3 + (q1 + q2)^2")
    beta = None
    arg = None
    if need_beta:
        arg = _kepler_prefactor_arg(cv)
        if not arg > 0:
            raise DomainError(
                f"beta requires c4 - 2 b1 E + d1 q2^2 > 0, got {arg}"
            )
        beta = _kepler_beta_numerator(cv) / (4 * sqrt_number(arg, context="c4 - 2 b1 E + d1 q2^2"))
    return KeplerAux(
        m1=m1,
        m2=m2,
        tau_pp=1 + m1 + m2,
        tau_pm=1 + m1 - m2,
        tau_mp=1 - m1 + m2,
        tau_mm=1 - m1 - m2,
        beta=beta,
        prefactor_arg=arg,
    )


def _yc_nsq(cv):
    base = 1 + _yc_l2(cv)
    t2 = 2 * _yc_t2(cv)
    n1sq = base + 2 * cv["c1"] + t2
    n2sq = base + 2 * cv["c2"] - t2
    if n1sq < 0:
        raise DomainError(
            f"negative square-root argument in n1^2 = 1 + 2c1 + hbar^2 l4(l4+2) + 2 hbar^2 T(T+1) = {n1sq}"
        )
    if n2sq < 0:
        raise DomainError(
            f"negative square-root argument in n2^2 = 1 + 2c2 + hbar^2 l4(l4+2) - 2 hbar^2 T(T+1) = {n2sq}"
        )
    return n1sq, n2sq


def _yc_eta(cv, E=None):
    E = cv["E"] if E is None else E
    if not E < 0:
        raise DomainError(f"eta(E) = 1/2 + c0/sqrt(-2E) requires E < 0, got E = {E}")
    half = Fraction(1, 2)
    return half + cv["c0"] / sqrt_number(-2 * E, context="-2E")


def yc_aux(cv: CentralValues, *, need_eta: bool = True) -> YcAux:
    n1sq, n2sq = _yc_nsq(cv)
    n1 = sqrt_number(n1sq, context="n1^2")
    n2 = sqrt_number(n2sq, context="n2^2")
    half = Fraction(1, 2)
    eta = _yc_eta(cv) if need_eta else None
    return YcAux(
        n1=n1,
        n2=n2,
        mu_pp=half * (1 + n1 + n2),
        mu_pm=half * (1 + n1 - n2),
        mu_mp=half * (1 - n1 + n2),
        mu_mm=half * (1 - n1 - n2),
        eta=eta,
    )


# ---------------------------------------------------------------------------
# Factorized structure functions
# ---------------------------------------------------------------------------

KEPLER_PREFACTOR_CONSTANT = -3145728  # -3 * 2**20
MIC_PREFACTOR_CONSTANT = -131072  # 13 printed factors normalised monic in x


def _pair_expansion_sq(sum_sq, prod_sq_of_diff):
    """(v^2 - r^2)(v^2 - s^2) as a DensePoly in v, given r^2+s^2 and (rs)^2."""
    return DensePoly([prod_sq_of_diff, 0, -sum_sq, 0, 1])


def kepler_structure_function(cv: CentralValues, u) -> FactoredPoly:
    """Degree-6 factorization: prefactor -3145728(c4 - 2 b1 E + d1 q2^2)
    with monic roots tau_{+-..} - u and (1/2 -+ beta) - u relative to x.

    The dense expansion is exact for exact inputs: the tau quartet expands
    through m1^2, m2^2 and the beta pair through beta^2, all rational.
    """
    aux = kepler_aux(cv)
    prefactor = KEPLER_PREFACTOR_CONSTANT * aux.prefactor_arg
    half = Fraction(1, 2)
    roots = [
        aux.tau_mp - u,
        aux.tau_pm - u,
        aux.tau_mm - u,
        aux.tau_pp - u,
        (half - aux.beta) - u,
        (half + aux.beta) - u,
    ]

    expanded = None
    m1sq, m2sq = _kepler_msq(cv)
    beta_sq = _kepler_beta_numerator(cv) ** 2 / (16 * aux.prefactor_arg)
    if all(is_exact(v) for v in (m1sq, m2sq, beta_sq, u, prefactor)):
        m1sq, m2sq, beta_sq, u_q = map(to_fraction, (m1sq, m2sq, beta_sq, u))
        # tau quartet in v = x + u - 1: (v^2 - (m1+m2)^2)(v^2 - (m1-m2)^2)
        quartet_v = _pair_expansion_sq(2 * (m1sq + m2sq), (m1sq - m2sq) ** 2)
        quartet = poly_compose(quartet_v, DensePoly([u_q - 1, Fraction(1)]))
        # beta pair in w = x + u - 1/2: w^2 - beta^2
        pair = poly_compose(DensePoly([-beta_sq, 0, Fraction(1)]), DensePoly([u_q - half, Fraction(1)]))
        expanded = (quartet * pair).scale(to_fraction(prefactor))
    return FactoredPoly.from_roots(prefactor, roots, expanded=expanded)


def yc_structure_function(cv: CentralValues, u, eta_variant: str = "printed") -> FactoredPoly:
    """Monic degree-6 factorization with roots mu_{..} - u plus the energy
    pair: (eta - u) twice for the printed variant, or (eta - u, 1 - eta - u)
    for the reflected variant.

    The reflected expansion is exact for exact inputs since it only needs
    n1^2, n2^2 and (c0/sqrt(-2E))^2 = -c0^2/(2E); the printed expansion is
    exact only when eta itself is rational.
    """
    if eta_variant not in ETA_VARIANTS:
        raise UsageError(f"eta_variant must be one of {ETA_VARIANTS}, got {eta_variant!r}")
    aux = yc_aux(cv)
    roots = [aux.mu_pp - u, aux.mu_pm - u, aux.mu_mp - u, aux.mu_mm - u]
    if eta_variant == "printed":
        roots += [aux.eta - u, aux.eta - u]
    else:
        roots += [aux.eta - u, (1 - aux.eta) - u]

    expanded = None
    n1sq, n2sq = _yc_nsq(cv)
    E = cv["E"]
    if all(is_exact(v) for v in (n1sq, n2sq, E, cv["c0"], u)) and E < 0:
        n1sq, n2sq, u_q = map(to_fraction, (n1sq, n2sq, u))
        g_sq = -to_fraction(cv["c0"]) ** 2 / (2 * to_fraction(E))
        half = Fraction(1, 2)
        shift = DensePoly([u_q - half, Fraction(1)])  # v = x + u - 1/2
        quartet_v = _pair_expansion_sq(
            Fraction(1, 2) * (n1sq + n2sq), (Fraction(n1sq - n2sq) / 4) ** 2
        )
        if eta_variant == "reflected":
            pair_v = DensePoly([-g_sq, 0, Fraction(1)])  # (v - g)(v + g)
            expanded = poly_compose(quartet_v * pair_v, shift)
        elif is_exact(aux.eta):
            g = to_fraction(aux.eta) - half
            pair_v = DensePoly([g * g, -2 * g, Fraction(1)])  # (v - g)^2
            expanded = poly_compose(quartet_v * pair_v, shift)
    return FactoredPoly.from_roots(1, roots, expanded=expanded)


def _mic_s_roots(cv):
    """Parameter roots of the MIC factorization in the variable s = 2x + u."""
    qQ, qL = cv["qQ"], cv["qL"]
    half = Fraction(1, 2)
    s_roots = [Fraction(2)]
    s_roots += [Fraction(3, 2)] * 2
    for c in (
        2 * qL + 1,
        1,
        2 * qL + 3,
        5,
        2 * qL + 4 * qQ + 3,
        4 * qQ + 1,
        4 * qQ + 3,
        2 * qL + 4 * qQ + 1,
    ):
        s_roots.append(c * half)
    return s_roots


def mic_structure_function(cv: CentralValues, u) -> FactoredPoly:
    """The degree-13 MIC factorization, normalised monic in x.

    Eleven parameter factors plus the energy pair
    [E' -+ 2 eps((2x+u) - qQ - 1)]; the 1/256 and all per-factor scales are
    absorbed into the prefactor -131072 eps^2.
    """
    eps = cv["eps_osc"]
    if eps == 0:
        raise DomainError("eps_osc must be nonzero for the MIC structure function")
    Ep = cv["Eprime"]
    qQ = cv["qQ"]
    half = Fraction(1, 2)
    roots = [(s - u) * half for s in _mic_s_roots(cv)]
    center = (qQ + 1 - u) * half
    roots.append(Ep / (4 * eps) + center)
    roots.append(-Ep / (4 * eps) + center)
    prefactor = MIC_PREFACTOR_CONSTANT * eps * eps

    expanded = None
    if all(is_exact(v) for v in roots) and is_exact(prefactor):
        acc = DensePoly([to_fraction(prefactor)])
        for r in roots:
            acc = acc * DensePoly([-to_fraction(r), Fraction(1)])
        expanded = acc
    return FactoredPoly.from_roots(prefactor, roots, offset_scale=4, expanded=expanded)


def structure_function(model: ModelId, cv: CentralValues, u, *, eta_variant: str = "printed") -> FactoredPoly:
    if model is ModelId.KEPLER_MONOPOLE:
        return kepler_structure_function(cv, u)
    if model is ModelId.YANG_COULOMB:
        return yc_structure_function(cv, u, eta_variant)
    return mic_structure_function(cv, u)


# ---------------------------------------------------------------------------
# Metric profiles
# ---------------------------------------------------------------------------


def metric_profile(model: ModelId, cv: CentralValues, r_samples) -> list[tuple]:
    """Tabulate (r, f(r), g(r)) for the model's Taub-NUT metric."""
    a1, b1, c1, d1 = cv["a1"], cv["b1"], cv["c1"], cv["d1"]
    rows = []
    for r in r_samples:
        if not r > 0:
            raise DomainError(f"metric samples must be positive, got r = {r}")
        if model is ModelId.KEPLER_MONOPOLE:
            denom = 1 + c1 * r + d1 * r**2
            if denom == 0:
                raise DomainError(f"metric denominator 1 + c1 r + d1 r^2 vanishes at r = {r}")
            f = a1 / r + b1
            g = r * (a1 + b1 * r) / denom
        elif model is ModelId.MIC_OSCILLATOR:
            denom = 1 + c1 * r**2 + d1 * r**4
            if denom == 0:
                raise DomainError(f"metric denominator 1 + c1 r^2 + d1 r^4 vanishes at r = {r}")
            f = a1 * r**2 + b1
            g = r**2 * (a1 * r**2 + b1) / denom
        else:
            raise DomainError("the Yang-Coulomb model lives in flat 5D space; no metric profile")
        rows.append((r, f, g))
    return rows


# ---------------------------------------------------------------------------
# Unirrep problem bundles (consumed by the solver and the grid oracle)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnirrepProblem:
    """Everything the finite-dimension solver needs about one model point.

    phi_family(u, E) builds the factorized structure function;
    u_candidates are the parameter-root values that can close the bottom
    of the Fock ladder; solve_energy_at(X, u) returns the closed-form E
    values placing an energy root at position X relative to x;
    pair_solutions(p) returns the (u, E) pairs where the two energy roots
    close both ends of the ladder at once; point_eval(u, E, x) is a fast
    float evaluation of the structure function for grid scans.
    """

    model: ModelId
    cv: CentralValues
    phi_family: object
    u_candidates: tuple
    param_roots_rel_x: object
    solve_energy_at: object
    pair_solutions: object
    point_eval: object
    x_step: int = 1  # u-units per unit of x (2 for the MIC factorization)


def _dedupe_numbers(values) -> tuple:
    out = []
    for v in values:
        if not any(v == w or abs(float(v) - float(w)) <= 1e-12 for w in out):
            out.append(v)
    return tuple(out)


def _kepler_problem(cv: CentralValues) -> UnirrepProblem:
    aux = kepler_aux(cv.replace(E=0) if "E" not in cv else cv, need_beta=False)
    taus = (aux.tau_mp, aux.tau_pm, aux.tau_mm, aux.tau_pp)
    half = Fraction(1, 2)

    def phi_family(u, E):
        return kepler_structure_function(cv.replace(E=E), u)

    def param_roots_rel_x(u):
        return tuple(t - u for t in taus)

    def solve_energy_at(X, u):
        out = []
        for sign in (1, -1):
            out.extend(solve_beta_equation(cv, sign * (X + u - half)))
        return out

    def pair_solutions(p):
        u = -Fraction(p, 2)
        sols = []
        for sign in (1, -1):
            for E in solve_beta_equation(cv, sign * Fraction(p + 1, 2)):
                sols.append((u, E))
        return sols

    a1f, b1f, c0f, c1f = (float(cv[k]) for k in ("a1", "b1", "c0", "c1"))
    c4f, d1f, q2f = (float(cv[k]) for k in ("c4", "d1", "q2"))
    taus_f = tuple(float(t) for t in taus)

    def point_eval(u, E, x):
        arg = c4f - 2.0 * b1f * E + d1f * q2f * q2f
        if arg <= 0.0:
            raise DomainError("c4 - 2 b1 E + d1 q2^2 <= 0")
        beta = (4.0 * a1f * E - 2.0 * c1f * q2f * q2f - c0f) / (4.0 * arg**0.5)
        s = x + u
        acc = KEPLER_PREFACTOR_CONSTANT * arg
        for t in taus_f:
            acc *= s - t
        acc *= (s - (0.5 - beta)) * (s - (0.5 + beta))
        return acc

    return UnirrepProblem(
        model=ModelId.KEPLER_MONOPOLE,
        cv=cv,
        phi_family=phi_family,
        u_candidates=_dedupe_numbers(taus),
        param_roots_rel_x=param_roots_rel_x,
        solve_energy_at=solve_energy_at,
        pair_solutions=pair_solutions,
        point_eval=point_eval,
    )


def _yc_problem(cv: CentralValues, eta_variant: str) -> UnirrepProblem:
    aux = yc_aux(cv.replace(E=-1) if "E" not in cv else cv, need_eta=False)
    mus = (aux.mu_pp, aux.mu_pm, aux.mu_mp, aux.mu_mm)
    c0 = cv["c0"]
    half = Fraction(1, 2)

    def phi_family(u, E):
        return yc_structure_function(cv.replace(E=E), u, eta_variant)

    def param_roots_rel_x(u):
        return tuple(m - u for m in mus)

    def solve_for_g(w):
        # c0 / sqrt(-2E) = w has a solution iff w and c0 share a sign.
        if c0 == 0 or w == 0:
            return []
        if (c0 > 0) != (w > 0):
            return []
        return [-to_fraction(c0) ** 2 / (2 * to_fraction(w) ** 2) if is_exact(c0) and is_exact(w)
                else -float(c0) ** 2 / (2 * float(w) ** 2)]

    def solve_energy_at(X, u):
        out = list(solve_for_g(X + u - half))  # eta - u = X
        if eta_variant == "reflected":
            out.extend(solve_for_g(half - X - u))  # (1 - eta) - u = X
        return out

    def pair_solutions(p):
        if eta_variant != "reflected" or c0 == 0:
            return []
        u = -Fraction(p, 2)
        sols = []
        for sign in (1, -1):
            for E in solve_for_g(sign * Fraction(p + 1, 2)):
                sols.append((u, E))
        return sols

    c0f = float(c0)
    mus_f = tuple(float(m) for m in mus)
    printed = eta_variant == "printed"

    def point_eval(u, E, x):
        if not E < 0:
            raise DomainError("eta requires E < 0")
        eta = 0.5 + c0f / (-2.0 * E) ** 0.5
        s = x + u
        acc = 1.0
        for m in mus_f:
            acc *= s - m
        if printed:
            acc *= (s - eta) ** 2
        else:
            acc *= (s - eta) * (s - (1.0 - eta))
        return acc

    return UnirrepProblem(
        model=ModelId.YANG_COULOMB,
        cv=cv,
        phi_family=phi_family,
        u_candidates=_dedupe_numbers(mus),
        param_roots_rel_x=param_roots_rel_x,
        solve_energy_at=solve_energy_at,
        pair_solutions=pair_solutions,
        point_eval=point_eval,
    )


def _mic_problem(cv: CentralValues) -> UnirrepProblem:
    s_roots = _mic_s_roots(cv)
    eps = cv["eps_osc"]
    if eps == 0:
        raise DomainError("eps_osc must be nonzero")
    qQ = cv["qQ"]
    half = Fraction(1, 2)

    def phi_family(u, Ep):
        return mic_structure_function(cv.replace(Eprime=Ep), u)

    def param_roots_rel_x(u):
        return tuple((s - u) * half for s in s_roots)

    def solve_energy_at(X, u):
        # s_pm = qQ + 1 +- E'/(2 eps) sits at rel-x X when s_pm = 2X + u.
        w = 2 * X + u - qQ - 1
        return [2 * eps * w, -2 * eps * w]

    def pair_solutions(p):
        u = qQ - p
        return [(u, 2 * (p + 1) * eps), (u, -2 * (p + 1) * eps)]

    qL_f, qQ_f, eps_f = float(cv["qL"]), float(cv["qQ"]), float(eps)
    c_list = (
        2.0 * qL_f + 1.0,
        1.0,
        2.0 * qL_f + 3.0,
        5.0,
        2.0 * qL_f + 4.0 * qQ_f + 3.0,
        4.0 * qQ_f + 1.0,
        4.0 * qQ_f + 3.0,
        2.0 * qL_f + 4.0 * qQ_f + 1.0,
    )

    def point_eval(u, Ep, x):
        s = 2.0 * x + u
        acc = (s - 2.0) / 256.0
        acc *= (2.0 * s - 3.0) ** 2
        for c in c_list:
            acc *= 2.0 * s - c
        e = 2.0 * eps_f * (s - qQ_f - 1.0)
        acc *= (Ep - e) * (Ep + e)
        return acc

    return UnirrepProblem(
        model=ModelId.MIC_OSCILLATOR,
        cv=cv,
        phi_family=phi_family,
        u_candidates=_dedupe_numbers(s_roots),
        param_roots_rel_x=param_roots_rel_x,
        solve_energy_at=solve_energy_at,
        pair_solutions=pair_solutions,
        point_eval=point_eval,
        x_step=2,
    )


def unirrep_problem(model: ModelId, cv: CentralValues, *, eta_variant: str = "printed") -> UnirrepProblem:
    if model is ModelId.KEPLER_MONOPOLE:
        return _kepler_problem(cv)
    if model is ModelId.YANG_COULOMB:
        return _yc_problem(cv, eta_variant)
    return _mic_problem(cv)


def solve_beta_equation(cv: CentralValues, v) -> list:
    """All E with beta(E) = v, where
    beta(E) = (4 a1 E - 2 c1 q2^2 - c0) / (4 sqrt(c4 - 2 b1 E + d1 q2^2)).

    Solved by squaring to a quadratic (linear when a1 = 0) and filtering by
    a positive square-root argument and sign agreement with v.
    """
    a1, b1 = cv["a1"], cv["b1"]
    k = 2 * cv["c1"] * cv["q2"] ** 2 + cv["c0"]
    base = cv["c4"] + cv["d1"] * cv["q2"] ** 2  # D(E) = base - 2 b1 E
    if a1 == 0 and b1 == 0:
        raise DomainError("degenerate energy condition: a1 = 0 and b1 = 0 simultaneously")

    # (4 a1 E - k)^2 = 16 v^2 (base - 2 b1 E)
    A = 16 * a1 * a1
    B = -8 * a1 * k + 32 * v * v * b1
    C = k * k - 16 * v * v * base
    candidates = []
    if A == 0:
        if B == 0:
            return []  # constant identity or contradiction; no isolated roots
        candidates.append(-C / B)
    else:
        disc = B * B - 4 * A * C
        if disc < 0:
            return []
        sq = sqrt_number(disc, context="discriminant")
        candidates.extend([(-B + sq) / (2 * A), (-B - sq) / (2 * A)])

    out = []
    for E in candidates:
        arg = base - 2 * b1 * E
        if not arg > 0:
            continue
        num = 4 * a1 * E - k
        if v == 0:
            if abs(float(num)) > 1e-9 * (1 + abs(float(k))):
                continue
        elif (float(num) > 0) != (float(v) > 0) and num != 0:
            continue
        beta = num / (4 * sqrt_number(arg, context="c4 - 2 b1 E + d1 q2^2"))
        if abs(float(beta) - float(v)) > 1e-9 * (1 + abs(float(v))):
            continue
        if not any(E == e or abs(float(E) - float(e)) <= 1e-12 * (1 + abs(float(e))) for e in out):
            out.append(E)
    return out
