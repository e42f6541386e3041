"""Recovery of a real square signal from its 2D autocorrelation.

The 2D problem is reduced to the 1D autocorrelation of the row-flattened
signal, every 1D candidate is enumerated by flipping polynomial zero pairs,
and a single corner entry of the 2D grid picks out the true signal up to
sign and half-turn rotation.
"""

from .core import (
    Autocorr1D,
    Autocorr2D,
    MagnitudeGrid,
    Matrix2D,
    Signal1D,
    autocorr_1d,
    autocorr_2d,
    fourier_magnitude_2d,
    measurements_to_autocorr_2d,
    reshape_rowwise,
    trivially_equivalent_1d,
    trivially_equivalent_2d,
    vectorize_rowwise,
)
from .errors import (
    AsymmetricInput,
    AutophaseError,
    DegenerateSize,
    InvalidOversampling,
    LengthMismatch,
    NoMatch,
    NonRealCoefficients,
    NonRealResult,
    NotAnAutocorrelation,
    ResidualExceeded,
    RootFindingFailed,
    SearchSpaceTooLarge,
    UnitCircleZero,
    UnpairedComplexZero,
    ZeroEndpoint,
)
from .oracle import OracleResult, exhaustive_integer_search, planted_roundtrip
from .polyfactor import (
    Candidate,
    ConjugatePair,
    FlipUnits,
    Polynomial,
    RealZero,
    ZeroPairing,
    associated_polynomial,
    elementary_symmetric,
    f_direct,
    f_vieta,
    find_zero_pairs,
    group_flip_units,
    reconstruct_candidate,
)
from .reduction import (
    ConstraintSpec,
    key_constraint,
    reduce_2d_to_1d,
    residual_constraint_set,
    verify_reduction,
)
from .solver import (
    CensusData,
    ProbeResult,
    SolveReport,
    SolverOptions,
    ambiguity_census,
    asymptotic_probe,
    enumerate_candidates,
    filter_by_constraint,
    solve_2d,
)

__version__ = "0.1.0"

__all__ = [
    "Autocorr1D",
    "Autocorr2D",
    "MagnitudeGrid",
    "Matrix2D",
    "Signal1D",
    "autocorr_1d",
    "autocorr_2d",
    "fourier_magnitude_2d",
    "measurements_to_autocorr_2d",
    "reshape_rowwise",
    "trivially_equivalent_1d",
    "trivially_equivalent_2d",
    "vectorize_rowwise",
    "AsymmetricInput",
    "AutophaseError",
    "DegenerateSize",
    "InvalidOversampling",
    "LengthMismatch",
    "NoMatch",
    "NonRealCoefficients",
    "NonRealResult",
    "NotAnAutocorrelation",
    "ResidualExceeded",
    "RootFindingFailed",
    "SearchSpaceTooLarge",
    "UnitCircleZero",
    "UnpairedComplexZero",
    "ZeroEndpoint",
    "OracleResult",
    "exhaustive_integer_search",
    "planted_roundtrip",
    "Candidate",
    "ConjugatePair",
    "FlipUnits",
    "Polynomial",
    "RealZero",
    "ZeroPairing",
    "associated_polynomial",
    "elementary_symmetric",
    "f_direct",
    "f_vieta",
    "find_zero_pairs",
    "group_flip_units",
    "reconstruct_candidate",
    "ConstraintSpec",
    "key_constraint",
    "reduce_2d_to_1d",
    "residual_constraint_set",
    "verify_reduction",
    "CensusData",
    "ProbeResult",
    "SolveReport",
    "SolverOptions",
    "ambiguity_census",
    "asymptotic_probe",
    "enumerate_candidates",
    "filter_by_constraint",
    "solve_2d",
]
