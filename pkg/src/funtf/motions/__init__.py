"""
Motions module for funtf.

Explicit paths that keep the frame operator fixed at every sample.

Architecture:
    - spin: rotate a tight subframe inside the subspace it spans
    - swaps: chaperone transpositions of two-basis frames, vector negation
    - morph: the simplex to two-basis morph and its alignment pre-rotation
    - two_basis: the NOD pair F_*, G_* and the staged path between them
"""

from funtf.motions.morph import align_simplex, morph_path, simplex_onb_morph
from funtf.motions.spin import (
    SubframeSelector,
    planar_family,
    plane_rotation,
    rotate_columns,
    rotation_taking,
    spin,
)
from funtf.motions.swaps import negate_vector_path, swap_pair_path, tight_split, two_onb_split
from funtf.motions.two_basis import TwoBasisFrames, two_onb_swap_frames, two_onb_swap_path

__all__ = [
    "SubframeSelector",
    "TwoBasisFrames",
    "align_simplex",
    "morph_path",
    "negate_vector_path",
    "planar_family",
    "plane_rotation",
    "rotate_columns",
    "rotation_taking",
    "simplex_onb_morph",
    "spin",
    "swap_pair_path",
    "tight_split",
    "two_onb_split",
    "two_onb_swap_frames",
    "two_onb_swap_path",
]
