"""Unified-(q,s) entropies, entanglement measures and multi-qubit monogamy."""

__version__ = "0.1.0"

from .concurrence import (
    ConcurrenceResult,
    concurrence,
    concurrence_pure,
    concurrence_wootters,
    eof_from_concurrence,
    eof_two_qubit,
    spin_flip,
    tangle_two_qubit,
)
from .entropy import (
    Branch,
    MeasureParams,
    renyi_entropy,
    tsallis_entropy,
    unified_entropy,
    von_neumann,
)
from .linalg import (
    DensityMatrix,
    DomainError,
    PureState,
    herm_eig,
    kron,
    mat_pow,
    mat_sqrt,
    partial_trace,
    random_haar_pure,
    random_mixed,
    random_unitary,
    schmidt,
)
from .monogamy import (
    DomainCell,
    MonogamyReport,
    ckw_slack,
    domain_sweep,
    ghz_state,
    h_qs,
    lemma_fn,
    monogamy_slack,
    violation_search,
    w_class_state,
)
from .roof import (
    Ensemble,
    RoofResult,
    SpectralMeasure,
    concurrence_measure,
    ensemble_from_isometry,
    roof_minimize,
    tangle_measure,
    unified_measure,
)
from .unified import (
    NonCertifiedWarning,
    OutOfDomainError,
    TwoQubitFormulaDomain,
    f_qs,
    renyi_ent_two_qubit,
    tsallis_ent_two_qubit,
    unified_ent_pure,
    unified_ent_two_qubit,
)
