"""Residual-eigenspace feature construction for two-class problems.

Thin re-export of the compiled core: truncated expansions of empirical
covariances, four residual-subspace constructions, a Markov concentration
bound, an SMO-trained SVM, synthetic two-class generators, k-NN
imputation, and the leave-pair-out evaluation loop.
"""

from finder._core import (  # noqa: F401
    AcaMode,
    ClassSplit,
    CoefficientLaw,
    CvReport,
    DataError,
    Dataset,
    Eigensystem,
    FeatureTransform,
    Kernel,
    KernelType,
    MaPolicy,
    MarkovBound,
    NumericError,
    PipelineConfig,
    Regime,
    RoundResult,
    SubspaceBasis,
    SvmModel,
    SynthSpec,
    UsageError,
    Variant,
    accuracy,
    aca_subspace,
    auc,
    complement_basis,
    default_rbf_gamma,
    direct_residual,
    eigendecompose,
    eigendecompose_dual,
    empirical_covariance,
    empirical_mean,
    energy_truncation,
    knn_impute,
    load_csv,
    make_splits,
    markov_rhs,
    mls_basis,
    run_experiment,
    run_lpocv,
    sample,
    svm_score,
    svm_train,
    tail_bound,
    truncation_error,
    two_class_scenario,
    write_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
