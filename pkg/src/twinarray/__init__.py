"""TwinArray Sort, baseline integer sorts, seeded datasets and a benchmark harness."""

from .baselines import ALGORITHMS, BaselineAlgo, baseline_sort, reference_sort
from .core import (
    DEFAULT_MAX_SLOTS,
    SortPath,
    SortReport,
    TwinArrays,
    build_twin_arrays,
    find_max,
    has_duplicates,
    reconstruct_distinct,
    reconstruct_frequency,
    twinarray_sort,
)
from .datagen import DatasetSpec, Distribution, Prng, displace, generate
from .errors import (
    DegenerateInput,
    EmptyInput,
    InvalidElement,
    MalformedFile,
    PathMisuse,
    RangeGuardExceeded,
    SpecInvalid,
    TwinArrayError,
    ZeroBound,
)

__all__ = [
    "ALGORITHMS",
    "BaselineAlgo",
    "DEFAULT_MAX_SLOTS",
    "DatasetSpec",
    "DegenerateInput",
    "Distribution",
    "EmptyInput",
    "InvalidElement",
    "MalformedFile",
    "PathMisuse",
    "Prng",
    "RangeGuardExceeded",
    "SortPath",
    "SortReport",
    "SpecInvalid",
    "TwinArrayError",
    "TwinArrays",
    "ZeroBound",
    "baseline_sort",
    "build_twin_arrays",
    "displace",
    "find_max",
    "generate",
    "has_duplicates",
    "reconstruct_distinct",
    "reconstruct_frequency",
    "reference_sort",
    "twinarray_sort",
]
