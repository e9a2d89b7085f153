"""High-dimensional spectral density estimation by thresholding averaged
periodograms, with VARMA simulation, frequency-domain threshold tuning,
shrinkage and coherence-network utilities."""

from .dft import FourierGrid, cos_sin_vectors, dft_matrix_norm_check, periodogram, periodogram_all
from .errors import (
    DataError,
    ModelError,
    NumericalError,
    ParameterError,
    SpecthreshError,
)
from .estimator import (
    SpectralEstimate,
    ThresholdOperator,
    aggregate_coherence_graph,
    apply_threshold,
    averaged_periodogram,
    coherence,
    coherence_threshold,
    shrinkage_all,
    shrinkage_estimate,
    smoothed_estimate,
    threshold_estimate,
)
from .metrics import (
    EvaluationReport,
    RocCurve,
    replicate_summary,
    rmise,
    roc_points,
    support_scores,
)
from .model import (
    AutocovSequence,
    TimeSeriesMatrix,
    VarmaModel,
    autocov,
    block_varma_model,
    check_order_bias_bounds,
    l_n,
    omega_n,
    simulate,
    simulate_ensemble,
    stability_measure,
    true_spectral_density,
    weak_sparsity_norm,
)
from .tuning import (
    SplitRisk,
    TuningConfig,
    default_lambda_grid,
    default_span,
    select_threshold,
    split_frequencies,
    theoretical_threshold,
    tuned_threshold_estimate,
)

__version__ = "0.1.0"
