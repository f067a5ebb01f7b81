"""Steady-state entanglement and Gaussian steering in a three-mode closed coupling loop."""

from .analytic import analytic_moments, tmss_only_moments, tmss_only_steering_conditions
from .errors import (
    ClosedLoopError,
    ConfigError,
    ContractError,
    NumericalError,
    ParameterError,
    StabilityError,
)
from .lyapunov import solve_steady_state, steady_state, verify_physicality
from .measures import (
    correlation_report,
    gaussian_steering,
    hz_criteria,
    log_negativity,
    moments_from_cm,
    reduce_pair,
)
from .model import (
    SystemParams,
    build_diffusion_matrix,
    build_drift_matrix,
    check_stability,
    thermal_occupation,
)
from .sweep import SweepSpec, run_sweep

__version__ = "0.1.0"
