"""Particle creation and two-point correlations in a waveguide whose
propagation speed changes in time.

The package computes, to machine precision, the Bogoliubov coefficients,
particle spectra and symmetrized two-point correlation functions of the
flux field in a finite waveguide with Neumann ends, for a sudden speed
step v0 -> v1 and for a smooth tanh quench of width tau.  Closed-form
results are validated against brute-force oracles: direct integration of
the parametric mode equation and time stepping of the discrete LC ladder.
"""

from ._backend import backend_name
from .grids import CorrelatorGrid
from .model import (
    BogoliubovPair,
    ModeSpectrum,
    SuddenStep,
    TanhStep,
    VelocityProfile,
    WaveguideGeometry,
    bogoliubov_sudden,
    bogoliubov_tanh,
    mode_frequency,
    mode_shape,
    particle_number,
    spectrum,
    speed_at,
    tanh_log_particle_number,
)
from .oracle import (
    LadderState,
    LadderTrajectory,
    ModeTrajectory,
    StepSizeError,
    estimate_frequency,
    extract_bogoliubov,
    integrate_mode,
    kappa_from_trajectories,
    ladder_mode_frequency,
    ladder_mode_state,
    simulate_ladder,
)
from .smooth import (
    PairPhase,
    SmoothKappaParts,
    ValidityWarning,
    approx_is_reliable,
    approx_validity_threshold,
    grid_evaluate_smooth,
    kappa_pair_approx,
    kappa_pair_exact,
    kappa_smooth,
    kappa_stationary_approx,
    kappa_stationary_exact,
    pair_phase,
    pair_phase_offset,
    sign_change_lines,
    smooth_singularity_lines,
)
from .special import (
    GammaPoleError,
    SeriesDivergenceError,
    arctan_sine_sum,
    log_cosine_sum,
    log_gamma_complex,
)
from .sudden import (
    SingularMarker,
    SingularityLine,
    SpacetimePoint,
    XiSpec,
    grid_evaluate,
    kappa_mode_sum,
    kappa_sudden,
    pair_creation_coefficient,
    pair_creation_part,
    singularity_lines,
    xi_value,
)

__version__ = "0.1.0"
