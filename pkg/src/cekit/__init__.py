"""cekit: unified-entropy concentratable entanglement for small multipartite systems."""

from .convex_roof import (
    Ensemble,
    RoofResult,
    cce_mixed_upper,
    mixed_ordering_spotcheck,
    mixing_ensemble,
)
from .entropy import (
    EntropyParams,
    alpha_monotonicity_gap,
    binary_entropy,
    fannes_audenaert_bound,
    majorizes,
    schur_concavity_witness,
    unified_entropy,
    unified_entropy_spectrum,
)
from .errors import ResourceLimitError
from .measures import (
    MeasureReport,
    NamedMeasures,
    cce_pure,
    continuity_gap,
    gme_certificate,
    locc_monotonicity_spotcheck,
    named_measures,
    ordering_report,
    subadditivity_gap,
    tensor_identity_residual,
)
from .states import StateRecipe, dicke, ghz, haar_random, random_density, random_product, star, w
from .swaptest import (
    ControlDistribution,
    ShotRecord,
    bounds_from_estimate,
    cce_from_distribution,
    sample_shots,
    swap_test_distribution,
)
from .tensor import (
    DensityOperator,
    PureState,
    apply_local_kraus,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    reduced_state,
    trace_distance,
    trace_power,
)

__version__ = "0.1.0"
