"""jpocoupler: analytic pipeline for a four-body coupler between
Josephson parametric oscillators.

Layers:

* :mod:`jpocoupler.circuit` — closed-form constants chain from circuit
  parameters to the four-body coupling gamma4, including the capacitance
  network algebra and tuning helpers.
* :mod:`jpocoupler.algebra` — exact symbolic engine over normal-ordered
  6-mode bosonic polynomials with graded g'-truncation and rotating-frame
  phase bookkeeping.
* :mod:`jpocoupler.derivation` — mechanical re-derivation of the
  effective Hamiltonian (generator determination, conjugation, frame
  rotation, rotating-wave filtering, coefficient extraction).
* :mod:`jpocoupler.fock` — independent truncated-Fock-space oracle:
  dense matrix representation, exact conjugation, coefficient fits.
* :mod:`jpocoupler.config`, :mod:`jpocoupler.sweep`, :mod:`jpocoupler.cli`
  — key=value configs, figure-preset parameter sweeps with CSV output,
  and the ``jpocoupler`` command-line interface.
"""

from .circuit import (
    CircuitError,
    CircuitParams,
    DerivedConstants,
    EffectiveConstants,
    InternalConsistencyError,
    NoSolutionError,
    PerturbativeRegimeWarning,
    QuartonPoleError,
    ResonanceSingularityError,
    SingularCapacitanceError,
    UnphysicalBranchError,
    UnphysicalParameterError,
    capacitance_matrix,
    derived_constants,
    effective_constants,
    fourbody_phase,
    gamma4,
    gamma4_routes,
    inverse_capacitance_analytic,
    inverse_capacitance_matrix,
    make_params,
    nonlinearity_ratio,
    nonlinearity_ratio_abs,
    retune_to_Omega,
    solve_EJg_for_Omega,
)

from .algebra import (
    AlgebraError,
    GradedCoefficient,
    OperatorExpr,
    PhaseTag,
    QC,
    bch_conjugate,
    commutator,
    monomial,
)
from .derivation import (
    ComparisonRecord,
    DerivationRegressionError,
    DerivationResult,
    ResidualTerm,
    compare_to_reference,
    derive_effective_hamiltonian,
    load_golden,
    main_text_check,
    write_golden,
)
from .fock import (
    FockConfig,
    FockError,
    FourBodyReport,
    coherent_residual_check,
    verify_four_body,
    verify_symbolic_engine,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "ComparisonRecord",
    "DerivationRegressionError",
    "DerivationResult",
    "FockConfig",
    "FockError",
    "FourBodyReport",
    "GradedCoefficient",
    "OperatorExpr",
    "PhaseTag",
    "QC",
    "ResidualTerm",
    "bch_conjugate",
    "coherent_residual_check",
    "commutator",
    "compare_to_reference",
    "derive_effective_hamiltonian",
    "load_golden",
    "main_text_check",
    "monomial",
    "verify_four_body",
    "verify_symbolic_engine",
    "write_golden",
    "CircuitError",
    "CircuitParams",
    "DerivedConstants",
    "EffectiveConstants",
    "InternalConsistencyError",
    "NoSolutionError",
    "PerturbativeRegimeWarning",
    "QuartonPoleError",
    "ResonanceSingularityError",
    "SingularCapacitanceError",
    "UnphysicalBranchError",
    "UnphysicalParameterError",
    "capacitance_matrix",
    "derived_constants",
    "effective_constants",
    "fourbody_phase",
    "gamma4",
    "gamma4_routes",
    "inverse_capacitance_analytic",
    "inverse_capacitance_matrix",
    "make_params",
    "nonlinearity_ratio",
    "nonlinearity_ratio_abs",
    "retune_to_Omega",
    "solve_EJg_for_Omega",
    "__version__",
]
