"""Bias-corrected distance correlation with fast chi-square testing."""

from .distance import (
    EUCLIDEAN,
    MetricSpec,
    as_sample_matrix,
    double_center,
    median_bandwidth,
    pairwise_matrix,
    u_center,
)
from .errors import (
    DegenerateDataError,
    FastDcorError,
    InvalidInputError,
    NumericalError,
    ParseError,
    SmallSampleError,
    UnsupportedPathError,
)
from .fast1d import TripleSums, fast_dcor_1d, fast_dcov_1d, triple_sums_1d
from .inference import (
    TestResult,
    chisq_pvalue,
    chisq_test,
    ksample_encode,
    ksample_test,
    pdcor,
    pdcor_test,
    permutation_test,
    ttest,
)
from .nulldist import (
    NullSample,
    NullSpectrum,
    centered_chisq_cdf,
    dominance_level,
    normal_dominance_level,
    simulate_null,
    spectrum,
    tail_crossing,
)
from .simulate import KINDS, PowerResult, Scenario, generate, power_estimate
from .stats import DcorValue, dcor_biased, dcor_from_pairwise, dcor_unbiased, dcov_unbiased

__all__ = [
    "EUCLIDEAN",
    "MetricSpec",
    "as_sample_matrix",
    "pairwise_matrix",
    "median_bandwidth",
    "u_center",
    "double_center",
    "DcorValue",
    "dcov_unbiased",
    "dcor_unbiased",
    "dcor_biased",
    "dcor_from_pairwise",
    "TripleSums",
    "triple_sums_1d",
    "fast_dcov_1d",
    "fast_dcor_1d",
    "TestResult",
    "chisq_pvalue",
    "chisq_test",
    "permutation_test",
    "ttest",
    "ksample_encode",
    "ksample_test",
    "pdcor",
    "pdcor_test",
    "NullSpectrum",
    "NullSample",
    "spectrum",
    "simulate_null",
    "centered_chisq_cdf",
    "tail_crossing",
    "dominance_level",
    "normal_dominance_level",
    "KINDS",
    "Scenario",
    "PowerResult",
    "generate",
    "power_estimate",
    "FastDcorError",
    "InvalidInputError",
    "DegenerateDataError",
    "SmallSampleError",
    "UnsupportedPathError",
    "NumericalError",
    "ParseError",
]

__version__ = "0.1.0"
