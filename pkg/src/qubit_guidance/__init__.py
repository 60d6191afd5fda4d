"""Feedback-free two-qubit guidance through a measured CV ancilla."""

from .dynamics import (
    ALL_OUTCOMES,
    BOTH_CLICK,
    BOTH_NO_CLICK,
    CLICK_A_ONLY,
    CLICK_B_ONLY,
    JCUnitary,
    OutcomeLabel,
    jc_unitary,
    oracle_step,
    outcome_probabilities,
)
from .errors import (
    ConvergenceError,
    DeadBranchError,
    GuidanceError,
    ParameterDomainError,
    StateValidationError,
)
from .fock import (
    AncillaState,
    damped_weights,
    mean_photon_number,
    photon_distribution,
    pss_state,
    schmidt_entropy,
    tmsv_state,
)
from .guidance import (
    FixedPointResult,
    StepCoefficientTable,
    TrappedState,
    apply_step,
    dominant_eigenpair,
    fixed_point,
    guided_evolution,
    negative_event_step,
    outcome_sequence,
    step_coefficients,
)
from .ideal import (
    EffectiveOperator,
    OperatorSpectrum,
    effective_operator,
    ideal_iterate,
    operator_spectrum,
)
from .metrics import (
    BellWeights,
    TwoQubitState,
    bell_decomposition,
    fidelity_phi_minus,
    linear_entropy,
    negativity,
    partial_transpose,
)
from .trace import ProtocolTrace, StepRecord

__all__ = [name for name in dir() if not name.startswith("_")]
