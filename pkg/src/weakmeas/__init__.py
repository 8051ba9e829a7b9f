"""Continuous Gaussian weak-measurement simulation toolkit.

Provides dense-matrix quantum operators, the measurement-induced Lindblad
generator and its propagator, quasiprobability multi-time correlators via
superoperator chains, selective measurement-record sampling via Gaussian
Kraus updates, a Langevin Monte Carlo route through noisy Heisenberg
dynamics, and the closed-form two-level-system / harmonic-oscillator
results the numerical routes are validated against.
"""

from .operators import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    HermitianOperator,
    DensityMatrix,
    ModelParams,
    commutator,
    anticommutator,
    matrix_exponential,
    pauli_decompose,
    fock_operators,
)
from .lindblad import (
    MeasurementSetup,
    Superoperator,
    liouvillian,
    propagator,
    jordan_superoperator,
    evolve,
)
from .correlators import (
    MomentQuery,
    CorrelationResult,
    quasi_moment,
    quasi_polynomial_moment,
    leggett_garg_x2,
    weak_positivity_gram,
    detector_variance_time_avg,
    detector_variance_fourier,
    snr_commuting,
)
from .records import (
    RecordConfig,
    MeasurementRecord,
    sample_step,
    simulate_record,
    simulate_ensemble,
    record_time_average,
    record_fourier,
)
from .langevin import (
    NoiseTrajectory,
    McConfig,
    heisenberg_propagate,
    mc_quasi_moment,
    ho_trajectory_solution,
    ho_mc_position_correlation,
)
from .closed_forms import (
    TlsParams,
    HoParams,
    tls_z,
    tls_corr,
    lg_x2_closed,
    ho_mean_x,
    ho_free_corr,
    ho_backaction,
    ho_fourier_noise,
    zeno_rate,
)

__version__ = "0.1.0"

__all__ = [
    "SIGMA_X", "SIGMA_Y", "SIGMA_Z",
    "HermitianOperator", "DensityMatrix", "ModelParams",
    "commutator", "anticommutator", "matrix_exponential",
    "pauli_decompose", "fock_operators",
    "MeasurementSetup", "Superoperator", "liouvillian", "propagator",
    "jordan_superoperator", "evolve",
    "MomentQuery", "CorrelationResult", "quasi_moment",
    "quasi_polynomial_moment", "leggett_garg_x2", "weak_positivity_gram",
    "detector_variance_time_avg", "detector_variance_fourier", "snr_commuting",
    "RecordConfig", "MeasurementRecord", "sample_step", "simulate_record",
    "simulate_ensemble", "record_time_average", "record_fourier",
    "NoiseTrajectory", "McConfig", "heisenberg_propagate", "mc_quasi_moment",
    "ho_trajectory_solution", "ho_mc_position_correlation",
    "TlsParams", "HoParams", "tls_z", "tls_corr", "lg_x2_closed",
    "ho_mean_x", "ho_free_corr", "ho_backaction", "ho_fourier_noise",
    "zeno_rate",
]
