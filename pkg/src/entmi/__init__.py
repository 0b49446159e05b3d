"""Monte Carlo statistics of concurrence vs. post-measurement mutual information.

The package samples random two-qubit pure states, computes for each the
concurrence and the mutual information left in the outcome distribution
of a local product-basis measurement, and aggregates the pairs into
mergeable 2D histograms.  Closed-form curves (the entanglement bound and
the ridge of the joint density) plus an executable verification suite
make the sampled statistics checkable end to end.
"""

from .curves import (
    MIExtrema,
    RidgePoint,
    entanglement_bound,
    mi_extrema,
    mi_from_angles,
    ridge_concurrence,
    ridge_mi,
    ridge_point,
)
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DomainError,
    EmptyHistogramError,
    EmptySliceError,
    EntmiError,
    InsufficientDataError,
    NotNormalizedError,
    OutOfRangeError,
    ShapeMismatchError,
    ZeroVectorError,
)
from .histogram import (
    Density1D,
    JointHistogram,
    SliceStats,
    bin_count,
    load_histogram,
    write_density_csv,
    write_slice_stats_csv,
)
from .pipeline import (
    BLOCK_SIZE,
    BOUND_TOL,
    observables,
    run_bound_scan,
    run_histogram_job,
)
from .sampling import (
    Ensemble,
    EnsembleSpec,
    SeedSpec,
    StateStream,
    sample_amplitudes,
    sample_complex_sphere,
    sample_real_sphere,
    sample_uniform_params,
    sample_zero_mi_family,
    stream_generator,
)
from .states import (
    ParamState,
    TwoQubitState,
    binary_entropy,
    concurrence,
    concurrence_polar,
    entanglement_entropy,
    entanglement_from_concurrence,
    from_params,
    make_state,
    marginal_entropies,
    mutual_information,
    params_to_amplitudes,
    probabilities,
    total_entropy,
)
from .verify import (
    VerificationReport,
    check_angle_oracle,
    check_bound,
    check_ridge,
    check_zero_mi_family,
    write_reports_jsonl,
)

__version__ = "0.1.0"

__all__ = [
    "BLOCK_SIZE",
    "BOUND_TOL",
    "ConsistencyError",
    "ConvergenceError",
    "Density1D",
    "DomainError",
    "EmptyHistogramError",
    "EmptySliceError",
    "Ensemble",
    "EnsembleSpec",
    "EntmiError",
    "InsufficientDataError",
    "JointHistogram",
    "MIExtrema",
    "NotNormalizedError",
    "OutOfRangeError",
    "ParamState",
    "RidgePoint",
    "SeedSpec",
    "ShapeMismatchError",
    "SliceStats",
    "StateStream",
    "TwoQubitState",
    "VerificationReport",
    "ZeroVectorError",
    "bin_count",
    "binary_entropy",
    "check_angle_oracle",
    "check_bound",
    "check_ridge",
    "check_zero_mi_family",
    "concurrence",
    "concurrence_polar",
    "entanglement_bound",
    "entanglement_entropy",
    "entanglement_from_concurrence",
    "from_params",
    "load_histogram",
    "make_state",
    "marginal_entropies",
    "mi_extrema",
    "mi_from_angles",
    "mutual_information",
    "observables",
    "params_to_amplitudes",
    "probabilities",
    "ridge_concurrence",
    "ridge_mi",
    "ridge_point",
    "run_bound_scan",
    "run_histogram_job",
    "sample_amplitudes",
    "sample_complex_sphere",
    "sample_real_sphere",
    "sample_uniform_params",
    "sample_zero_mi_family",
    "stream_generator",
    "total_entropy",
    "write_density_csv",
    "write_reports_jsonl",
    "write_slice_stats_csv",
]
