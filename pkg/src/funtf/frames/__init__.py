"""
Frames module for funtf.

A frame is N vectors in R^d or C^d held as the columns of a d x N matrix.
This package provides the Frame value object and its structural analyses.

Architecture:
    - Frame: immutable synthesis matrix with field tag and JSON round trip
    - check_funtf / funtf_residual: unit-norm and tightness checks
    - CorrelationGraph / od_margin: orthodecomposability, exact and quantified
    - spark / nod_reorder / od_perturb: spark, NOD bases, OD density
    - naimark_complement / canonical_simplex: complements and fixed simplices
    - FramePath: sampled frame paths with per-sample metrics
"""

from funtf.frames.analysis import (
    CorrelationGraph,
    SparkReport,
    correlation_graph,
    is_od,
    nod_reorder,
    od_components,
    od_margin,
    od_perturb,
    require_spark_budget,
    spark,
    spark_enumeration_size,
)
from funtf.frames.frame import (
    Frame,
    FuntfReport,
    as_permutation,
    check_funtf,
    dump_frame,
    frame_operator,
    funtf_residual,
    inverse_permutation,
    load_frame,
    permute,
    require_funtf,
)
from funtf.frames.naimark import canonical_simplex, naimark_complement
from funtf.frames.path import FramePath, PathMetadata

__all__ = [
    "CorrelationGraph",
    "Frame",
    "FramePath",
    "FuntfReport",
    "PathMetadata",
    "SparkReport",
    "as_permutation",
    "canonical_simplex",
    "check_funtf",
    "correlation_graph",
    "dump_frame",
    "frame_operator",
    "funtf_residual",
    "inverse_permutation",
    "is_od",
    "load_frame",
    "naimark_complement",
    "nod_reorder",
    "od_components",
    "od_margin",
    "od_perturb",
    "permute",
    "require_funtf",
    "require_spark_budget",
    "spark",
    "spark_enumeration_size",
]
