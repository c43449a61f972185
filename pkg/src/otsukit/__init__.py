"""Grayscale thresholding: exhaustive Otsu, a bisection-accelerated variant,
and the instrumentation to compare them."""

from otsukit.analysis import (
    AggregateStats,
    ComparisonRecord,
    UnimodalityReport,
    aggregate,
    check_unimodal,
    compare,
    render_report,
)
from otsukit.errors import (
    DegenerateHistogram,
    ImageFormatError,
    InvalidBracket,
    InvalidConfig,
    MaxIterationsExceeded,
    OtsuKitError,
)
from otsukit.histogram import (
    Histogram,
    MomentTable,
    build_moments,
    compute_histogram,
)
from otsukit.imageio import (
    GrayImage,
    binary_mask,
    load_image,
    write_binary_mask,
    write_image,
)
from otsukit.rootfind import RootResult, bisect_root
from otsukit.search import (
    BisectionConfig,
    Decision,
    SearchTrace,
    ThresholdResult,
    bisection_otsu,
    exhaustive_otsu,
    reduction_factor,
)
from otsukit.synth import (
    BimodalSpec,
    bimodal_histogram,
    image_from_histogram,
    two_delta_histogram,
)
from otsukit.variance import (
    VarianceEvaluator,
    VarianceProfile,
    direct_sigma,
    full_profile,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateStats",
    "BimodalSpec",
    "BisectionConfig",
    "ComparisonRecord",
    "Decision",
    "DegenerateHistogram",
    "GrayImage",
    "Histogram",
    "ImageFormatError",
    "InvalidBracket",
    "InvalidConfig",
    "MaxIterationsExceeded",
    "MomentTable",
    "OtsuKitError",
    "RootResult",
    "SearchTrace",
    "ThresholdResult",
    "UnimodalityReport",
    "VarianceEvaluator",
    "VarianceProfile",
    "aggregate",
    "bimodal_histogram",
    "binary_mask",
    "bisect_root",
    "bisection_otsu",
    "build_moments",
    "check_unimodal",
    "compare",
    "compute_histogram",
    "direct_sigma",
    "exhaustive_otsu",
    "full_profile",
    "image_from_histogram",
    "load_image",
    "reduction_factor",
    "render_report",
    "two_delta_histogram",
    "write_binary_mask",
    "write_image",
    "__version__",
]
