"""CHSH values, modified local bounds and violation maps for unsharp spin-POVMs."""

from .analysis import (
    ScanCell,
    ViolationClass,
    critical_eta_standard,
    delta_modified_biased,
    delta_modified_unbiased,
    delta_standard_biased,
    max_alpha_modified,
    scan_region,
)
from .linalg import BlochVector, bloch_to_observable, kron, min_eigenvalue_hermitian2, trace_product
from .lhv import (
    ALL_STRATEGIES,
    DeterministicStrategy,
    LhvBoundResult,
    lhv_bound_bruteforce,
    strategy_chsh,
    strategy_correlation,
)
from .povm import EffectPair, PovmParams, ProjectorPair, biased_povm, projectors, unbiased_povm
from .quantum import (
    CANONICAL_SETTINGS,
    DensityMatrix,
    MeasurementSettings,
    chsh_value,
    closed_form_biased,
    closed_form_unbiased,
    correlation,
    pure_state,
    werner_state,
)

__version__ = "0.1.0"
