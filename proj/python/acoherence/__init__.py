"""Counting statistics of quantum radiation fields in resonant detectors."""

from ._core import (
    DomainError,
    FieldState,
    TruncationError,
    UnsupportedError,
    classify_ratio,
    coherent,
    dt_max,
    fock,
    gaussian,
    mandel_q,
    normal_ordered_moment,
    probabilities,
    ratios,
    reference_ratio,
    sample_clicks,
    squeezed_vacuum,
    state,
    test_coherent_null,
    thermal,
    weber_gamma0,
)

__all__ = [
    "DomainError",
    "FieldState",
    "TruncationError",
    "UnsupportedError",
    "classify_ratio",
    "coherent",
    "dt_max",
    "fock",
    "gaussian",
    "mandel_q",
    "normal_ordered_moment",
    "probabilities",
    "ratios",
    "reference_ratio",
    "sample_clicks",
    "squeezed_vacuum",
    "state",
    "test_coherent_null",
    "thermal",
    "weber_gamma0",
]
