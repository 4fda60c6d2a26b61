"""Multipartite entanglement detection from correlation tensors."""

__version__ = "0.1.0"

from .basis import OperatorBasis, build_su_generators
from .correlation import (
    CorrelationTensor,
    MatricizationSpec,
    bloch_tensor,
    check_pure_factorization,
    full_correlation_tensor,
    m_body_tensor,
    matricize,
    outer_product,
    vectorize,
)
from .criteria import (
    CriterionResult,
    Detection,
    DimensionMismatch,
    chsh_violation_2qubit,
    evaluate,
    meaningful_bound_audit,
    theorem1_tripartite_gme,
    theorem2_3qubit_gme,
    theorem3_4qubit_gme,
    theorem4_full_separability,
    white_noise_tolerance,
)
from .norms import (
    PartialMatrix,
    frobenius_norm,
    ky_fan_norm,
    singular_values,
    standard_norm,
    trace_norm,
    trace_norm_lower_bound,
)
from .states import (
    DensityMatrix,
    PureState,
    apply_local_unitaries,
    dicke_state,
    ghz_state,
    hamiltonian_h1,
    hamiltonian_h2,
    partial_trace,
    thermal_state,
    w_state,
    white_noise_mix,
)
