"""Truncated-Fock numerical backend: operators, states, overlaps, phase space."""

from .operators import (
    FockCutoff,
    GateParams,
    ModeOperator,
    beamsplitter,
    build_gate,
    embed_operator,
    ladder_operators,
    operator_max_norm_defect,
    position_operator,
)
from .overlaps import (
    closed_form_overlap,
    coherent_overlap,
    displaced_squeezed_overlap,
    squeezed_overlap,
)
from .phase_space import (
    WignerGrid,
    default_phase_space_axes,
    hermite_functions,
    heterodyne_pdf,
    quadrature_pdf,
    wigner_grid,
)
from .states import (
    DEFAULT_TAIL_TOLERANCE,
    TruncatedFockState,
    apply_gate,
    coherent_series,
    displaced_squeezed_series,
    expectation_value,
    inner_product,
    joint_photon_number_distribution,
    mean_photon_number,
    partial_trace,
    photon_number_distribution,
    prepare_state,
    squeezed_series,
    tensor_product,
)

__all__ = [
    "FockCutoff",
    "GateParams",
    "ModeOperator",
    "TruncatedFockState",
    "WignerGrid",
    "DEFAULT_TAIL_TOLERANCE",
    "apply_gate",
    "beamsplitter",
    "build_gate",
    "closed_form_overlap",
    "coherent_overlap",
    "coherent_series",
    "default_phase_space_axes",
    "displaced_squeezed_overlap",
    "displaced_squeezed_series",
    "embed_operator",
    "expectation_value",
    "hermite_functions",
    "heterodyne_pdf",
    "inner_product",
    "joint_photon_number_distribution",
    "ladder_operators",
    "mean_photon_number",
    "operator_max_norm_defect",
    "partial_trace",
    "photon_number_distribution",
    "position_operator",
    "prepare_state",
    "quadrature_pdf",
    "squeezed_overlap",
    "squeezed_series",
    "tensor_product",
    "wigner_grid",
]
