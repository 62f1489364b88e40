"""Wave/particle information measures for small quantum systems.

Implements entropic wavelike/particlelike information in a chosen reference
basis, the complementarity equality they satisfy, CHSH nonlocality and
concurrence for two qubits, and circuit-level models of interferometer
scenarios where the duality shows up operationally.
"""

from .channels import (
    ImpossibleOutcomeError,
    InformerModel,
    ReferenceObservable,
    dephase,
    measure_select,
    measure_select_joint,
    purify,
    reduced_from_informer,
)
from .experiments import (
    BEAM_SPLITTER,
    ExperimentReport,
    MziConfig,
    ReportState,
    WernerInput,
    balanced_path_state,
    dce_analyze,
    measurement_model,
    morphing_scan,
    mzi_run,
    path_basis,
    phase_shifter,
    recombined_state,
    wave_detector_run,
)
from .measures import (
    NATURAL_UNITS,
    ThermalContext,
    demon_work_gap,
    information,
    max_entropy,
    particlelike_info,
    shannon,
    tsallis_entropy,
    wavelike_info,
    wavelike_upper_bound,
    work,
)
from .nonlocality import (
    ChshSettings,
    chsh_bruteforce,
    chsh_nl,
    chsh_operator,
    chsh_value,
    concurrence,
    correlation_matrix,
    linear_entanglement,
)
from .states import (
    BipartiteSplit,
    ValidationError,
    basis_state,
    eig_hermitian,
    partial_trace,
    projector,
    tensor,
    validate_density,
    validate_pure,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "BEAM_SPLITTER",
    "BipartiteSplit",
    "CheckResult",
    "ChshSettings",
    "ExperimentReport",
    "ImpossibleOutcomeError",
    "InformerModel",
    "MziConfig",
    "NATURAL_UNITS",
    "ReferenceObservable",
    "ReportState",
    "ThermalContext",
    "ValidationError",
    "WernerInput",
    "balanced_path_state",
    "basis_state",
    "chsh_bruteforce",
    "chsh_nl",
    "chsh_operator",
    "chsh_value",
    "concurrence",
    "correlation_matrix",
    "dce_analyze",
    "demon_work_gap",
    "dephase",
    "eig_hermitian",
    "information",
    "linear_entanglement",
    "max_entropy",
    "measure_select",
    "measure_select_joint",
    "measurement_model",
    "morphing_scan",
    "mzi_run",
    "particlelike_info",
    "partial_trace",
    "path_basis",
    "phase_shifter",
    "projector",
    "purify",
    "recombined_state",
    "reduced_from_informer",
    "run_checks",
    "shannon",
    "tensor",
    "tsallis_entropy",
    "validate_density",
    "validate_pure",
    "wave_detector_run",
    "wavelike_info",
    "wavelike_upper_bound",
    "work",
]
