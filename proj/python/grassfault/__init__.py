"""Grassmann-kernel classification of three-phase fault waveform windows.

Windows are tau x 6 arrays (Va, Vb, Vc, Ia, Ib, Ic). Each window is fitted
with an SVD-based state-space model, its truncated observability matrix is
orthonormalized into a subspace representative, and a one-vs-one SVM with a
projection-metric Gaussian kernel votes on the class.
"""

from grassfault._core import (
    FAULT_CLASSES,
    SAMPLE_RATE_HZ,
    Classifier,
    DataError,
    NumericError,
    ParameterError,
    cross_validate,
    desk_dataset,
    embed,
    fit,
    generate_case,
    gram,
    load_csv,
    load_model,
    projection_distance,
    projection_kernel,
    save_csv,
    save_model,
)

__all__ = [
    "FAULT_CLASSES",
    "SAMPLE_RATE_HZ",
    "Classifier",
    "DataError",
    "NumericError",
    "ParameterError",
    "cross_validate",
    "desk_dataset",
    "embed",
    "fit",
    "generate_case",
    "gram",
    "load_csv",
    "load_model",
    "projection_distance",
    "projection_kernel",
    "save_csv",
    "save_model",
]
