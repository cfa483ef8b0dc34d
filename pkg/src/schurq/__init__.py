"""schurq: exact Schur functions, Schur Q-functions and bilinear Q-expansions.

Everything is computed over the graded ring of polynomials in the flow
variables t1, t2, ... with exact rational coefficients; a free-fermion
Fock-space oracle provides an independent route to every identity.
"""

from .partitions import (
    FrobeniusCoords,
    Partition,
    StrictPartition,
    double_of,
    frobenius_from_partition,
    partition_from_frobenius,
    partitions_of,
    shift_up,
    supplement,
)
from .polyring import GradedPoly, Monomial, Rational, exp_truncated
from .symfunc import (
    PolyMatrix,
    SymSeries,
    complete_h,
    determinant,
    hook_schur,
    neutral_q,
    pfaffian,
    q_matrix_entry,
    schur,
    schur_giambelli,
    schur_q,
    schur_q_half,
)
from .polarization import (
    MarkingIndex,
    Polarization,
    binary_marking,
    enumerate_polarizations,
    enumerate_polarizations_by_scan,
    polarization_sign,
    s_and_t,
)
from .expansion import (
    ExpansionTerm,
    SymmetryError,
    VerificationReport,
    bilinear_expansion,
    dedupe_symmetric,
    evaluate_expansion,
    sweep,
    verify_identity,
)
from .fock import (
    FockVector,
    GaussianRationalPoly,
    Generator,
    MayaState,
    WickHypothesisError,
    apply_dressed,
    apply_phi,
    apply_psi,
    apply_psi_dag,
    check_factorization,
    check_wick,
    vev,
    vev_schur,
    vev_schur_q,
)

__version__ = "0.1.0"

__all__ = [
    "FrobeniusCoords",
    "Partition",
    "StrictPartition",
    "double_of",
    "frobenius_from_partition",
    "partition_from_frobenius",
    "partitions_of",
    "shift_up",
    "supplement",
    "GradedPoly",
    "Monomial",
    "Rational",
    "exp_truncated",
    "PolyMatrix",
    "SymSeries",
    "complete_h",
    "determinant",
    "hook_schur",
    "neutral_q",
    "pfaffian",
    "q_matrix_entry",
    "schur",
    "schur_giambelli",
    "schur_q",
    "schur_q_half",
    "MarkingIndex",
    "Polarization",
    "binary_marking",
    "enumerate_polarizations",
    "enumerate_polarizations_by_scan",
    "polarization_sign",
    "s_and_t",
    "ExpansionTerm",
    "SymmetryError",
    "VerificationReport",
    "bilinear_expansion",
    "dedupe_symmetric",
    "evaluate_expansion",
    "sweep",
    "verify_identity",
    "FockVector",
    "GaussianRationalPoly",
    "Generator",
    "MayaState",
    "WickHypothesisError",
    "apply_dressed",
    "apply_phi",
    "apply_psi",
    "apply_psi_dag",
    "check_factorization",
    "check_wick",
    "vev",
    "vev_schur",
    "vev_schur_q",
]
