"""Electric-field noise of correlated anharmonic adatom fluctuators.

Exact decomposition of the collective N-adatom dipole noise spectrum into
independent Lorentzians, low-temperature perturbative limits, and 1/f noise
from 1/N patch-size distributions.
"""

__version__ = "0.1.0"

from .errors import (
    AdnoiseError,
    CapacityError,
    ConvergenceError,
    DomainError,
    InsufficientLevelsError,
    InvalidParametersError,
    NumericalError,
    ReducibilityError,
    ResolutionError,
)
from .basis import (
    SymmetricBasis,
    apply_lowering,
    apply_raising,
    basis_dipoles,
    basis_size,
    enumerate_basis,
    state_dipole,
)
from .master import (
    EigenDecomposition,
    RateMatrix,
    ThermalParams,
    build_rate_matrix,
    decompose,
    steady_state,
)
from .oracle import (
    SampledSpectrum,
    TrajectoryConfig,
    correlator_spectrum,
    gillespie_spectrum,
)
from .potential import (
    LevelStructure,
    MaterialParams,
    PotentialParams,
    anharmonic_shift,
    coverage_parameter,
    evaluate_potential,
    harmonic_frequency,
    harmonic_rate,
    potential_derivative,
    solve_bound_states,
)
from .spectrum import (
    PatchDistribution,
    SpectralDecomposition,
    aggregate_patches,
    evaluate_spectrum,
    log_log_slope,
    lorentzian_weights,
    low_temperature_spectrum,
    pink_noise_closed_form,
    second_order_white_noise,
)

__all__ = [name for name in dir() if not name.startswith("_")]
