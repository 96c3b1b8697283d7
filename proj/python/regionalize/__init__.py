"""Spatially constrained spectral regionalization.

Labels are 0-based integer sequences; files written by the command-line tool
use 1-based region ids.
"""

from ._regionalize import (
    ConstraintGraph,
    DataError,
    Dataset,
    Error,
    InvalidArgument,
    NumericalError,
    adjusted_rand,
    agglomerative,
    cbalance,
    combine_hadamard,
    combine_weighted,
    contiguity_c,
    delineate,
    evaluate,
    generalized_eigs,
    generate_synthetic,
    hssc,
    kmeans,
    laplacian,
    load_dataset,
    load_dataset_dir,
    median_sigma,
    pct_ml,
    rbf_similarity,
    ssw,
)

__all__ = [
    "ConstraintGraph",
    "DataError",
    "Dataset",
    "Error",
    "InvalidArgument",
    "NumericalError",
    "adjusted_rand",
    "agglomerative",
    "cbalance",
    "combine_hadamard",
    "combine_weighted",
    "contiguity_c",
    "delineate",
    "evaluate",
    "generalized_eigs",
    "generate_synthetic",
    "hssc",
    "kmeans",
    "laplacian",
    "load_dataset",
    "load_dataset_dir",
    "median_sigma",
    "pct_ml",
    "rbf_similarity",
    "ssw",
]

__version__ = "0.1.0"
