"""Coherence concurrence: coherence measures, convex roofs and their link to entanglement."""

from .channels import (
    KrausChannel,
    apply_channel,
    attach_ancilla,
    cnot_gate,
    generalized_cnot,
    random_incoherent_channel,
    selective_outcomes,
    validate_icptp,
)
from .convexroof import (
    RoofConfig,
    RoofResult,
    coherence_concurrence,
    convex_roof_minimize,
    decomposition_from_isometry,
    intrinsic_randomness,
    mixed_concurrence_upper,
)
from .entanglement import (
    pure_concurrence,
    pure_concurrence_determinant_form,
    spin_flip_spectrum,
    wootters_concurrence,
)
from .gellmann import antisymmetric_ggm, diagonal_ggm, ggm_basis, symmetric_ggm
from .measures import (
    binary_entropy_of_concurrence,
    is_incoherent,
    is_mcs,
    l1_coherence,
    l1_coherence_via_ggm,
    pure_coherence_concurrence,
    pure_intrinsic_randomness,
    qubit_coherence_concurrence,
    qubit_intrinsic_randomness,
    relative_entropy_coherence,
)
from .statespace import (
    BipartiteSplit,
    DensityMatrix,
    Ensemble,
    PureState,
    dephase,
    ensemble_to_density,
    maximally_coherent_state,
    mcs_with_phases,
    partial_trace,
    pure_to_density,
    random_density,
    random_incoherent,
    random_pure,
    tensor,
    validate_density,
    von_neumann_entropy,
)

__version__ = "0.1.0"
