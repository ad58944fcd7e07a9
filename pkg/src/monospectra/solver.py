"""Finite-dimension constraints, energy solving, coupling-constant
metamorphosis inversion, and generic-vs-factorized Casimir matching.

A (p+1)-dimensional unitary representation needs
    Phi(0) = 0,  Phi(p+1) = 0,  Phi(n) > 0 for n = 1..p.
The bottom constraint pins u to a parameter root of the factorization (or
to an energy root), the top constraint fixes the energy through the
model's energy factor.  All three pairings of (parameter root, energy
root) across the two ends are attempted; configurations where both ends
close on parameter roots are excluded, since they hold for every E and
form a continuum rather than an isolated representation.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from ._numbers import fmt_number, is_exact, sqrt_number, to_fraction
from .algebra import AlgebraSpec, CentralValues, structure_function_parts
from .errors import DomainError
from .linsolve import solve_linear
from .models import (
    ModelId,
    UnirrepProblem,
    central_values_from_mapping,
    kepler_aux,
    solve_beta_equation,
    structure_function,
    unirrep_problem,
    yc_aux,
)
from .poly import FactoredPoly

ENTRY_TOL = 1e-9
MATCH_TOL = 1e-9
STRICT_INTERVAL_SAMPLES = 1000


@dataclass(frozen=True)
class UnirrepSolution:
    """A validated finite-dimensional representation."""

    model: ModelId | None
    p: int
    u: object
    E: object  # E' for the MIC model (before metamorphosis)
    branch: tuple | None
    phi_check: tuple  # Phi(1)..Phi(p)
    phi0_residual: float
    phi_top_residual: float

    @property
    def degeneracy(self) -> int:
        return self.p + 1

    @property
    def max_residual(self) -> float:
        return max(self.phi0_residual, self.phi_top_residual)

    def sort_key(self):
        return (float(self.u), float(self.E))

    def to_json_dict(self) -> dict:
        return {
            "model": self.model.value if self.model else None,
            "p": self.p,
            "u": fmt_number(self.u),
            "E": fmt_number(self.E),
            "branch": list(self.branch) if self.branch else None,
            "phi_check": [float(v) for v in self.phi_check],
            "degeneracy": self.degeneracy,
            "max_residual": self.max_residual,
        }


def _validate_candidate(problem: UnirrepProblem, p: int, u, E, *,
                        entry_tol: float = ENTRY_TOL,
                        strict_interval: bool = False,
                        positivity_margin: float = 0.0) -> UnirrepSolution | None:
    try:
        phi = problem.phi_family(u, E)
    except DomainError:
        return None
    scale = 1.0 + phi.expanded.max_abs_coeff()
    r0 = abs(float(phi.eval(0)))
    rtop = abs(float(phi.eval(p + 1)))
    if r0 > entry_tol * scale or rtop > entry_tol * scale:
        return None
    phis = []
    for n in range(1, p + 1):
        v = float(phi.eval(n))
        if not v > positivity_margin * scale:
            return None
        phis.append(v)
    if strict_interval:
        for j in range(1, STRICT_INTERVAL_SAMPLES + 1):
            x = (p + 1) * j / (STRICT_INTERVAL_SAMPLES + 1)
            if float(phi.eval(x)) < -entry_tol * scale:
                return None
    return UnirrepSolution(
        model=problem.model,
        p=p,
        u=u,
        E=E,
        branch=None,
        phi_check=tuple(phis),
        phi0_residual=r0 / scale,
        phi_top_residual=rtop / scale,
    )


def _near(a, b, tol: float = 1e-9) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(float(a) - float(b)) <= tol * (1.0 + abs(float(b)))


def solve_unirrep(phi_family, u_candidates, p: int, *,
                  solve_energy_at, param_roots_rel_x, pair_solutions=None,
                  x_step=1, model: ModelId | None = None, cv: CentralValues | None = None,
                  entry_tol: float = ENTRY_TOL,
                  strict_interval: bool = False) -> list[UnirrepSolution]:
    """All isolated (p+1)-dimensional representations of a structure family.

    u_candidates are the parameter-root values closing Phi(0); the swapped
    assignment (parameter root closing Phi(p+1), energy root at the bottom)
    and the double-energy-root assignment are attempted as well.  Candidates
    where both ends would close on parameter roots hold for every E and are
    skipped as non-isolated.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    problem = UnirrepProblem(
        model=model,
        cv=cv,
        phi_family=phi_family,
        u_candidates=tuple(u_candidates),
        param_roots_rel_x=param_roots_rel_x,
        solve_energy_at=solve_energy_at,
        pair_solutions=pair_solutions or (lambda _p: []),
        point_eval=None,
        x_step=x_step,
    )
    return solve_problem_unirreps(problem, p, entry_tol=entry_tol, strict_interval=strict_interval)


def solve_problem_unirreps(problem: UnirrepProblem, p: int, *,
                           entry_tol: float = ENTRY_TOL,
                           strict_interval: bool = False) -> list[UnirrepSolution]:
    candidates: list[tuple] = []

    # bottom on a parameter root, top on an energy root
    for c in problem.u_candidates:
        u = c
        rel = problem.param_roots_rel_x(u)
        if any(_near(r, p + 1) for r in rel):
            continue  # top closes on a parameter root for every E: continuum
        for E in problem.solve_energy_at(p + 1, u):
            candidates.append((u, E))

    # top on a parameter root, bottom on an energy root
    for c in problem.u_candidates:
        u = c - problem.x_step * (p + 1)
        rel = problem.param_roots_rel_x(u)
        if any(_near(r, 0) for r in rel):
            continue  # bottom closes on a parameter root for every E: continuum
        for E in problem.solve_energy_at(0, u):
            candidates.append((u, E))

    # both ends on the two energy roots
    candidates.extend(problem.pair_solutions(p))

    solutions: list[UnirrepSolution] = []
    for u, E in candidates:
        sol = _validate_candidate(problem, p, u, E,
                                  entry_tol=entry_tol, strict_interval=strict_interval)
        if sol is None:
            continue
        if any(_near(sol.u, s.u, 1e-8) and _near(sol.E, s.E, 1e-8) for s in solutions):
            continue
        solutions.append(sol)
    solutions.sort(key=UnirrepSolution.sort_key)
    return solutions


def solve_model_unirreps(model: ModelId, cv: CentralValues, p: int, *,
                         eta_variant: str = "printed",
                         strict_interval: bool = False) -> list[UnirrepSolution]:
    problem = unirrep_problem(model, cv, eta_variant=eta_variant)
    return solve_problem_unirreps(problem, p, strict_interval=strict_interval)


# ---------------------------------------------------------------------------
# Closed-form energies
# ---------------------------------------------------------------------------


def energy_yc(p: int, cv: CentralValues):
    """E = -c0^2 / (2 (p + 1 + (n1+n2)/2)^2)."""
    aux = yc_aux(cv, need_eta=False)
    c0 = cv["c0"]
    denom = p + 1 + (aux.n1 + aux.n2) / 2
    if is_exact(c0) and is_exact(denom):
        return -to_fraction(c0) ** 2 / (2 * to_fraction(denom) ** 2)
    return -float(c0) ** 2 / (2.0 * float(denom) ** 2)


def energy_kepler(p: int, branch: tuple[int, int], cv: CentralValues) -> list:
    """Solutions of 2 beta(E) = 2 + 2p + eps1 m1 + eps2 m2 for one branch.

    The square-root in beta turns the condition into a quadratic; spurious
    roots are removed by back-substitution with a sign check.
    """
    eps1, eps2 = branch
    if eps1 not in (-1, 1) or eps2 not in (-1, 1):
        raise ValueError("branch signs must be +-1")
    aux = kepler_aux(cv, need_beta=False)
    r = 2 + 2 * p + eps1 * aux.m1 + eps2 * aux.m2
    half = Fraction(1, 2)
    v = r * half if is_exact(r) else r / 2
    return solve_beta_equation(cv, v)


def energy_mic_primed(p: int, eps2: int, cv: CentralValues):
    """E' = -eps (4p - 2 qQ + 2 eps2 qL + 3)."""
    if eps2 not in (-1, 1):
        raise ValueError("eps2 must be +-1")
    eps = cv["eps_osc"]
    if eps == 0:
        warnings.warn("eps_osc = 0: the oscillator energy scale is degenerate", stacklevel=2)
    return -eps * (4 * p - 2 * cv["qQ"] + 2 * eps2 * cv["qL"] + 3)


def ccm_invert(E_primed, p: int, eps2: int, cv: CentralValues, qn_binding: str = "Q"):
    """Invert the coupling-constant metamorphosis for the MIC energy.

    Solves (2 b1 E - c1 q^2 - c4) / sqrt(c0/2 - 2 a1 E + d1 q^2) = R with
    R = 4p - 2 qQ + 2 eps2 qL + 3, by squaring to a quadratic and filtering
    (positive square-root argument, sign agreement, and consistency with
    E' = c4 + c1 q^2 - 2 b1 E).
    """
    if qn_binding not in ("Q", "L3"):
        raise DomainError(f"qn_binding must be 'Q' or 'L3', got {qn_binding!r}")
    if eps2 not in (-1, 1):
        raise ValueError("eps2 must be +-1")
    q = cv["qQ"] if qn_binding == "Q" else cv["qL"]
    a, b = cv["a1"], cv["b1"]
    c0, c1, c4, d1 = cv["c0"], cv["c1"], cv["c4"], cv["d1"]
    if a == 0 and b == 0:
        raise DomainError("degenerate metamorphosis: a1 = 0 and b1 = 0 simultaneously")
    R = 4 * p - 2 * cv["qQ"] + 2 * eps2 * cv["qL"] + 3
    kappa = c1 * q**2 + c4
    base = Fraction(1, 2) * c0 + d1 * q**2 if is_exact(c0) and is_exact(d1) and is_exact(q) else c0 / 2 + d1 * q**2

    # (2 b E - kappa)^2 = R^2 (base - 2 a E)
    A = 4 * b * b
    B = -4 * b * kappa + 2 * R * R * a
    C = kappa * kappa - R * R * base
    candidates = []
    if A == 0:
        if B == 0:
            raise DomainError("degenerate metamorphosis equation (no E dependence)")
        candidates.append(-C / B)
    else:
        disc = B * B - 4 * A * C
        if disc < 0:
            raise DomainError(f"no real metamorphosis root: discriminant {float(disc):.6g} < 0")
        sq = sqrt_number(disc, context="metamorphosis discriminant")
        candidates.extend([(-B + sq) / (2 * A), (-B - sq) / (2 * A)])

    survivors = []
    rejects = []
    for E in candidates:
        arg = base - 2 * a * E
        if not arg > 0:
            rejects.append((E, math.inf))
            continue
        num = 2 * b * E - kappa
        lhs = num / sqrt_number(arg, context="c0/2 - 2 a1 E + d1 q^2")
        resid = abs(float(lhs) - float(R))
        if resid > 1e-9 * (1.0 + abs(float(R))):
            rejects.append((E, resid))
            continue
        eprime_back = c4 + c1 * q**2 - 2 * b * E
        eresid = abs(float(eprime_back) - float(E_primed))
        if eresid > 1e-9 * (1.0 + abs(float(E_primed))):
            rejects.append((E, eresid))
            continue
        survivors.append((E, max(resid, eresid)))

    if not survivors:
        detail = ", ".join(f"E={float(E):.9g} (residual {r:.3g})" for E, r in rejects)
        raise DomainError(f"no consistent metamorphosis root; candidates: {detail}")
    survivors.sort(key=lambda er: (er[1], float(er[0])))
    return survivors[0][0]


# ---------------------------------------------------------------------------
# Casimir matching between the generic and factorized structure functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CasimirMatch:
    """Fit of the factorized form as lambda * (P1 * K + P0)."""

    lam: object
    K: object
    residual: float  # max absolute coefficient mismatch
    relative_residual: float
    consistent: bool
    variant: str | None = None
    first_mismatch_degree: int | None = None
    mismatched_degrees: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "lambda": fmt_number(self.lam),
            "K": fmt_number(self.K),
            "residual": self.residual,
            "relative_residual": self.relative_residual,
            "consistent": self.consistent,
            "variant": self.variant,
            "first_mismatch_degree": self.first_mismatch_degree,
        }


def match_casimir(spec: AlgebraSpec, cv: CentralValues, u, factored: FactoredPoly,
                  *, variant: str | None = None) -> CasimirMatch:
    """Fit (lambda*K, lambda) so that lambda*(P1*K + P0) matches the
    expanded factorization coefficient by coefficient (exact elimination).

    When the overdetermined system is inconsistent, the fit from the two
    leading pivot rows is kept and the residual reports the largest
    coefficient mismatch together with the first mismatched degree.
    """
    p1, p0 = structure_function_parts(spec, cv, u)
    target = factored.expanded
    top = max(6, target.degree, p1.degree, p0.degree)
    degrees = list(range(top, -1, -1))
    matrix = [[p1[d], p0[d]] for d in degrees]
    rhs = [target[d] for d in degrees]
    res = solve_linear(matrix, rhs)
    if res.rank < 2:
        raise DomainError("singular Casimir fit: leading generic coefficients vanish")
    w1, w2 = res.solution
    if w2 == 0:
        raise DomainError("singular Casimir fit: zero overall scale")
    lam = w2
    K = w1 / w2

    mismatches = []
    scale = max(1.0, target.max_abs_coeff())
    for row_idx, d in enumerate(degrees):
        lhs = to_fraction(matrix[row_idx][0]) * w1 + to_fraction(matrix[row_idx][1]) * w2
        diff = lhs - to_fraction(rhs[row_idx])
        if diff != 0:
            mismatches.append((d, abs(float(diff))))
    residual = max((m for _, m in mismatches), default=0.0)
    return CasimirMatch(
        lam=lam,
        K=K,
        residual=residual,
        relative_residual=residual / scale,
        consistent=res.consistent,
        variant=variant,
        first_mismatch_degree=min((d for d, _ in mismatches), default=None),
        mismatched_degrees=tuple(sorted(d for d, _ in mismatches)),
    )


def best_casimir_match(spec: AlgebraSpec, cv: CentralValues, u,
                       candidates: dict[str, FactoredPoly]) -> CasimirMatch:
    """Fit every variant and keep the best (consistent first, then smallest
    relative residual, then variant name for determinism)."""
    fits = [match_casimir(spec, cv, u, fp, variant=name) for name, fp in sorted(candidates.items())]
    fits.sort(key=lambda m: (not m.consistent, m.relative_residual, m.variant or ""))
    return fits[0]


# ---------------------------------------------------------------------------
# Spectrum tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumRow:
    model: ModelId
    qn: tuple  # (q1, q2) | (l4, T) | (qQ, qL)
    p: int
    u: object
    E: object
    E_primed: object | None
    branch: tuple | None
    accepted: bool
    reject_reason: str | None
    max_residual: float

    @property
    def degeneracy(self) -> int:
        return self.p + 1

    def to_json_dict(self) -> dict:
        out = {
            "model": self.model.value,
            "qn1": fmt_number(self.qn[0]),
            "qn2": fmt_number(self.qn[1]),
            "p": self.p,
            "u": fmt_number(self.u),
            "E": fmt_number(self.E),
            "degeneracy": self.degeneracy,
            "max_residual": self.max_residual,
        }
        out["E_prime"] = fmt_number(self.E_primed) if self.E_primed is not None else None
        if self.branch:
            out["branch"] = list(self.branch)
        return out


QN_SYMBOLS = {
    ModelId.KEPLER_MONOPOLE: ("q1", "q2"),
    ModelId.YANG_COULOMB: ("l4", "T"),
    ModelId.MIC_OSCILLATOR: ("qQ", "qL"),
}


def _positivity_and_residual(problem: UnirrepProblem, p: int, u, E):
    """(accepted, reason, max scaled equality residual) at a closed-form row."""
    try:
        phi = problem.phi_family(u, E)
    except DomainError as exc:
        return False, str(exc), math.inf
    scale = 1.0 + phi.expanded.max_abs_coeff()
    resid = max(abs(float(phi.eval(0))), abs(float(phi.eval(p + 1)))) / scale
    for n in range(1, p + 1):
        v = float(phi.eval(n))
        if not v > 0.0:
            return False, f"Phi({n}) = {v:.6g} is not positive", resid
    return True, None, resid


def spectrum_table(model: ModelId, cv_values, p_max: int, *,
                   branch: tuple[int, int] = (1, 1),
                   eta_variant: str = "printed",
                   qn_binding: str = "Q") -> list[SpectrumRow]:
    """Rows for p = 0..p_max over every quantum-number point.

    cv_values maps parameter symbols to numbers or lists of numbers; list
    values are enumerated as a product.  Each row carries the closed-form
    energy of its model, validated by the positivity filter; rows that fail
    are returned flagged (the CLI omits them and counts them).
    """
    if p_max < 0:
        raise ValueError("p_max must be nonnegative")
    keys = sorted(cv_values.keys())
    pools = [cv_values[k] if isinstance(cv_values[k], (list, tuple)) else [cv_values[k]] for k in keys]
    rows: list[SpectrumRow] = []
    for combo in itertools.product(*pools):
        mapping = dict(zip(keys, combo))
        cv = central_values_from_mapping(model, mapping)
        rows.extend(_rows_for_point(model, cv, p_max, branch, eta_variant, qn_binding))
    rows.sort(key=lambda r: (tuple(float(q) for q in r.qn), r.p, float(r.E)))
    return rows


def _rows_for_point(model, cv, p_max, branch, eta_variant, qn_binding):
    qn_syms = QN_SYMBOLS[model]
    qn = (cv[qn_syms[0]], cv[qn_syms[1]])
    problem = unirrep_problem(model, cv, eta_variant=eta_variant)
    rows = []
    half = Fraction(1, 2)
    for p in range(p_max + 1):
        if model is ModelId.YANG_COULOMB:
            aux = yc_aux(cv.replace(E=-1), need_eta=False)
            u = aux.mu_pp if branch == (1, 1) else {
                (1, -1): aux.mu_pm, (-1, 1): aux.mu_mp, (-1, -1): aux.mu_mm}[branch]
            energies = [energy_yc(p, cv)]
            eprimes = [None]
        elif model is ModelId.KEPLER_MONOPOLE:
            aux = kepler_aux(cv.replace(E=0), need_beta=False)
            u = {(1, 1): aux.tau_pp, (1, -1): aux.tau_pm,
                 (-1, 1): aux.tau_mp, (-1, -1): aux.tau_mm}[branch]
            energies = energy_kepler(p, branch, cv)
            eprimes = [None] * len(energies)
        else:
            eps2 = branch[1]
            u = eps2 * cv["qL"] + half
            ep = energy_mic_primed(p, eps2, cv)
            energies = [ccm_invert(ep, p, eps2, cv, qn_binding)]
            eprimes = [ep]
        for E, ep in zip(energies, eprimes):
            check_E = ep if model is ModelId.MIC_OSCILLATOR else E
            ok, reason, resid = _positivity_and_residual(problem, p, u, check_E)
            rows.append(SpectrumRow(
                model=model, qn=qn, p=p, u=u,
                E=E, E_primed=ep, branch=branch,
                accepted=ok, reject_reason=reason, max_residual=resid,
            ))
    return rows


# ---------------------------------------------------------------------------
# Brute-force (u, E) grid oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridScanResult:
    isolated: tuple  # UnirrepSolution, sorted
    continuum_u: tuple  # u values of vertical zero lines that were dropped


def _point_residual(problem: UnirrepProblem, p: int, u: float, E: float) -> float:
    try:
        return max(abs(problem.point_eval(u, E, 0.0)), abs(problem.point_eval(u, E, float(p + 1))))
    except (DomainError, ZeroDivisionError, ValueError, OverflowError):
        return math.inf


def _cluster_cells(cells, link_distance: int = 2) -> list[list[tuple]]:
    """Group grid cells by Chebyshev adjacency using breadth-first sweeps."""
    remaining = set(cells)
    clusters = []
    while remaining:
        seed = min(remaining)
        remaining.discard(seed)
        group = [seed]
        frontier = [seed]
        while frontier:
            ci, cj = frontier.pop()
            near = [c for c in remaining if abs(c[0] - ci) <= link_distance and abs(c[1] - cj) <= link_distance]
            for c in near:
                remaining.discard(c)
                group.append(c)
                frontier.append(c)
        clusters.append(group)
    return clusters


def _refine_candidate(problem, p, u0, E0, du, dE, box):
    """Deterministic local refinement of max(|Phi(0)|, |Phi(p+1)|):
    compass/pattern search into the basin, then damped 2D Newton with a
    finite-difference Jacobian (linear-rate tolerant of the double-root
    case where the Jacobian degenerates at the solution)."""
    u_lo, u_hi, E_lo, E_hi = box

    def clamp(u, E):
        return (min(max(u, u_lo), u_hi), min(max(E, E_lo), E_hi))

    u_c, E_c = u0, E0
    best = _point_residual(problem, p, u_c, E_c)
    hu, hE = du, dE
    moves = 300
    while (hu > 1e-9 * du or hE > 1e-9 * dE) and moves > 0:
        best_off = (0, 0)
        for iu in (-2, -1, 0, 1, 2):
            for iE in (-2, -1, 0, 1, 2):
                if iu == 0 and iE == 0:
                    continue
                uu, EE = clamp(u_c + iu * hu, E_c + iE * hE)
                v = _point_residual(problem, p, uu, EE)
                if v < best:
                    best = v
                    best_off = (iu, iE)
        if best_off == (0, 0):
            hu *= 0.5
            hE *= 0.5
        else:
            u_c, E_c = clamp(u_c + best_off[0] * hu, E_c + best_off[1] * hE)
            moves -= 1

    # Newton polish on (Phi(0), Phi(p+1)) with damping
    def f_pair(u, E):
        try:
            return (problem.point_eval(u, E, 0.0), problem.point_eval(u, E, float(p + 1)))
        except (DomainError, ZeroDivisionError, ValueError, OverflowError):
            return (math.inf, math.inf)

    max_step_u, max_step_E = 40.0 * du, 40.0 * dE
    for _ in range(160):
        f0, f1 = f_pair(u_c, E_c)
        r = max(abs(f0), abs(f1))
        if not math.isfinite(r) or r == 0.0:
            break
        hu_fd = 3e-8 * (1.0 + abs(u_c))
        hE_fd = 3e-8 * (1.0 + abs(E_c))
        g0u, g1u = f_pair(u_c + hu_fd, E_c)
        g0e, g1e = f_pair(u_c, E_c + hE_fd)
        if not all(map(math.isfinite, (g0u, g1u, g0e, g1e))):
            break
        j00, j01 = (g0u - f0) / hu_fd, (g0e - f0) / hE_fd
        j10, j11 = (g1u - f1) / hu_fd, (g1e - f1) / hE_fd
        det = j00 * j11 - j01 * j10
        if det == 0.0 or not math.isfinite(det):
            break
        step_u = (j11 * f0 - j01 * f1) / det
        step_E = (-j10 * f0 + j00 * f1) / det
        step_u = min(max(step_u, -max_step_u), max_step_u)
        step_E = min(max(step_E, -max_step_E), max_step_E)
        t = 1.0
        improved = False
        while t > 1e-8:
            uu, EE = clamp(u_c - t * step_u, E_c - t * step_E)
            v = _point_residual(problem, p, uu, EE)
            if v < r:
                u_c, E_c = uu, EE
                improved = True
                break
            t *= 0.5
        if not improved:
            break
    return u_c, E_c, _point_residual(problem, p, u_c, E_c)


def grid_scan_unirreps(problem: UnirrepProblem, p: int, u_range, E_range,
                       n: int = 200, *, entry_tol: float = ENTRY_TOL,
                       positivity_margin: float = 1e-6,
                       reps_per_cluster: int = 12) -> GridScanResult:
    """Locate all isolated simultaneous zeros of Phi(0) and Phi(p+1) on a
    dense (u, E) grid, refine them locally, and validate positivity.

    Vertical lines where both constraints vanish for every E (parameter
    roots closing both ends) are detected by probing along E and reported
    separately instead of as solutions.  Positivity uses a relative margin
    so that knife-edge candidates whose interior value is an exact zero of
    the nearby isolated configuration are treated as the solver treats
    them.
    """
    u_lo, u_hi = float(u_range[0]), float(u_range[1])
    E_lo, E_hi = float(E_range[0]), float(E_range[1])
    du = (u_hi - u_lo) / (n - 1)
    dE = (E_hi - E_lo) / (n - 1)
    grid = [[_point_residual(problem, p, u_lo + i * du, E_lo + j * dE) for j in range(n)]
            for i in range(n)]

    cells = []
    for i in range(n):
        for j in range(n):
            v = grid[i][j]
            if math.isinf(v):
                continue
            neighbours = [grid[i + di][j + dj]
                          for di in (-1, 0, 1) for dj in (-1, 0, 1)
                          if (di or dj) and 0 <= i + di < n and 0 <= j + dj < n]
            if all(v <= w for w in neighbours):
                cells.append((i, j))

    # Valleys and zero lines produce long chains of touching minima: keep a
    # few well-separated representatives per connected cluster.
    representatives = []
    for group in _cluster_cells(cells):
        group.sort(key=lambda c: (grid[c[0]][c[1]], c))
        kept: list[tuple] = []
        for c in group:
            if len(kept) >= reps_per_cluster:
                break
            if all(max(abs(c[0] - k[0]), abs(c[1] - k[1])) >= 5 for k in kept):
                kept.append(c)
        representatives.extend(kept)

    refined = [
        _refine_candidate(problem, p, u_lo + i * du, E_lo + j * dE, du, dE,
                          (u_lo, u_hi, E_lo, E_hi))
        for i, j in sorted(representatives)
    ]

    isolated = []
    continuum_u = []
    probe = (E_hi - E_lo) / 7.3
    for u_c, E_c, _ in refined:
        try:
            scale = 1.0 + problem.phi_family(u_c, E_c).expanded.max_abs_coeff()
        except DomainError:
            continue
        if _point_residual(problem, p, u_c, E_c) > entry_tol * scale:
            continue
        # vertical-continuum probe: both constraints still vanish away from E_c?
        probes = [e for e in (E_c + probe, E_c - probe) if E_lo <= e <= E_hi]
        line = bool(probes) and all(
            _point_residual(problem, p, u_c, e) <= entry_tol * scale for e in probes
        )
        if line:
            if not any(abs(u_c - w) < 1e-6 * (1 + abs(w)) for w in continuum_u):
                continuum_u.append(u_c)
            continue
        sol = _validate_candidate(problem, p, u_c, E_c, entry_tol=entry_tol,
                                  positivity_margin=positivity_margin)
        if sol is None:
            continue
        if not any(_near(sol.u, s.u, 1e-6) and _near(sol.E, s.E, 1e-6) for s in isolated):
            isolated.append(sol)
    isolated.sort(key=UnirrepSolution.sort_key)
    return GridScanResult(isolated=tuple(isolated), continuum_u=tuple(sorted(continuum_u)))


def solutions_match(a, b, tol: float = 1e-6) -> bool:
    """Set equality of two solution lists on (u, E) within tol."""
    if len(a) != len(b):
        return False
    used = [False] * len(b)
    for sa in a:
        hit = False
        for idx, sb in enumerate(b):
            if used[idx]:
                continue
            if _near(sa.u, sb.u, tol) and _near(sa.E, sb.E, tol):
                used[idx] = True
                hit = True
                break
        if not hit:
            return False
    return True
