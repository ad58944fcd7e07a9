"""Symmetry-algebra spectra for superintegrable monopole systems.

Exact rational polynomial arithmetic, the three-generator quadratic
algebra with its deformed-oscillator structure function, the Kepler /
Yang-Coulomb / MIC-oscillator model catalog, finite-dimensional Fock
representations, and the unirrep solver behind the `monospectra` CLI.
"""
from ._kernels import BACKEND as KERNEL_BACKEND
from .algebra import (
    AlgebraSpec,
    CasimirValue,
    CentralValues,
    RelationReport,
    casimir_from_generators,
    check_q3_relations,
    generic_structure_function,
    structure_function_parts,
)
from .errors import (
    ConstraintViolationError,
    DomainError,
    EvaluationError,
    MonospectraError,
    RootIsolationError,
    UsageError,
    VerificationError,
)
from .fock import (
    FockRep,
    MicGenerators,
    OscillatorReport,
    build_fock,
    build_mic_generators,
    mic_commutator_residuals,
    verify_oscillator,
)
from .linsolve import LinearSolveResult, solve_linear
from .models import (
    KeplerAux,
    ModelId,
    UnirrepProblem,
    YcAux,
    central_values_from_mapping,
    kepler_aux,
    kepler_structure_function,
    metric_profile,
    mic_structure_function,
    quadratic_algebra_spec,
    structure_function,
    unirrep_problem,
    yc_aux,
    yc_structure_function,
)
from .poly import DensePoly, FactoredPoly, poly_eval, poly_from_factors, real_roots
from .solver import (
    CasimirMatch,
    GridScanResult,
    SpectrumRow,
    UnirrepSolution,
    best_casimir_match,
    ccm_invert,
    energy_kepler,
    energy_mic_primed,
    energy_yc,
    grid_scan_unirreps,
    match_casimir,
    solutions_match,
    solve_model_unirreps,
    solve_unirrep,
    spectrum_table,
)

__version__ = "0.1.0"
