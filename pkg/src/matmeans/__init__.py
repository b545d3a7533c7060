"""Matrix means on the positive definite cone and their inequality suite."""

from .densela import (
    EigenDecomposition,
    JacobiConvergenceError,
    apply_spectral_fn,
    is_positive_definite,
    multiply,
    pd_log,
    pd_power,
    random_pd,
    singular_values,
    sym_eigen,
    sym_exp,
)
from .means import (
    MeanParams,
    WeightVector,
    arithmetic_path,
    cross_term,
    geometric_mean,
    geometric_mean_unitary_factor,
    hermitian_part,
    log_euclidean,
    power_mean,
    power_mean_multi,
    sandwich_mean,
)
from .spectra import (
    eigenvalues_desc,
    ky_fan_norm,
    loewner_leq,
    log_majorize,
    majorize,
    product_eigenvalues,
    schatten_norm,
    weak_log_majorize,
    weak_majorize,
)
from .compound import compound_matrix, compound_spectrum_check
from .suite import (
    CampaignConfig,
    CampaignReport,
    InstanceSpec,
    PROPERTY_IDS,
    check_property,
    paper_counterexample,
    run_campaign,
)

__version__ = "0.1.0"
