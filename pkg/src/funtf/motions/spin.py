"""
Spinning: rotating a tight subframe inside the subspace it spans.

If G is a tight frame for a subspace W and U(t) is a family of unitaries
with U(t)W = W, replacing G by U(t)G leaves the frame operator unchanged.
Every motion in this package is built from this one move.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np
import scipy.linalg

from funtf.errors import NotTightOnSpanError, RotationLeaksSubspaceError
from funtf.frames.path import FramePath

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from funtf.frames.frame import Frame

logger = logging.getLogger(__name__)

RotationFamily = Callable[[float], "NDArray[Any]"]

DEFAULT_STEPS = 64
TIGHT_TOLERANCE = 1e-8
LEAK_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SubframeSelector:
    """
    Columns to spin and the subspace they are spun in.

    Attributes:
        indices: Column positions of the subframe
        subspace: Orthonormal basis (d x r) of the invariant subspace; the
            span of the selected columns when omitted
    """

    indices: tuple[int, ...]
    subspace: NDArray[Any] | None = None

    def basis(self, frame: Frame) -> NDArray[Any]:
        """Orthonormal basis of the subspace for ``frame``."""
        if self.subspace is not None:
            return np.asarray(self.subspace)
        return np.asarray(scipy.linalg.orth(frame.matrix[:, list(self.indices)]))


def plane_rotation(q1: NDArray[Any], q2: NDArray[Any], angle: float) -> NDArray[Any]:
    """
    Givens rotation by ``angle`` in the plane of the orthonormal pair (q1, q2).

    q1 goes to cos·q1 + sin·q2 and q2 to -sin·q1 + cos·q2; the orthogonal
    complement of the plane is fixed.
    """
    q1 = np.asarray(q1)
    q2 = np.asarray(q2)
    projector = np.outer(q1, q1.conj()) + np.outer(q2, q2.conj())
    generator = np.outer(q2, q1.conj()) - np.outer(q1, q2.conj())
    return np.eye(len(q1)) + (np.cos(angle) - 1.0) * projector + np.sin(angle) * generator


def planar_family(q1: NDArray[Any], q2: NDArray[Any], angle: float) -> RotationFamily:
    """t -> plane_rotation(q1, q2, t·angle): constant angular speed."""
    return lambda t: plane_rotation(q1, q2, t * angle)


def rotation_taking(
    a: NDArray[np.float64],
    b: NDArray[np.float64],
) -> tuple[NDArray[np.float64], NDArray[np.float64], float]:
    """
    Minimal-angle plane rotation taking unit vector a to unit vector b.

    Returns (q1, q2, angle) for plane_rotation. Antipodal vectors turn by pi
    through the coordinate direction e_k with the smallest |a_k|.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    cosine = float(np.clip(a @ b, -1.0, 1.0))
    residual = b - cosine * a
    norm = float(np.linalg.norm(residual))
    if norm > 1e-12:
        return a, residual / norm, float(np.arctan2(norm, cosine))
    if cosine > 0:
        return a, a, 0.0
    direction = np.zeros_like(a)
    direction[int(np.argmin(np.abs(a)))] = 1.0
    direction -= (direction @ a) * a
    return a, direction / np.linalg.norm(direction), float(np.pi)


def rotate_columns(
    frame: Frame,
    indices: tuple[int, ...] | list[int],
    rotation: RotationFamily,
    steps: int = DEFAULT_STEPS,
    construction: str = "rotation",
) -> FramePath:
    """Path t -> frame with columns ``indices`` replaced by rotation(t) applied to them."""
    positions = list(indices)
    selected = frame.matrix[:, positions]
    times = np.linspace(0.0, 1.0, steps + 1)
    frames = [frame.with_columns(positions, rotation(float(t)) @ selected) for t in times]
    return FramePath.from_frames(times, frames, construction=construction, steps=steps)


def spin(
    frame: Frame,
    selector: SubframeSelector,
    rotation: RotationFamily,
    steps: int = DEFAULT_STEPS,
    construction: str = "spin",
) -> FramePath:
    """
    Spin a tight subframe inside its subspace.

    Args:
        frame: Any frame
        selector: Subframe and invariant subspace W
        rotation: U(t) for t in [0, 1], each mapping W to itself
        steps: Number of uniform intervals
        construction: Name recorded in the path metadata

    Raises:
        NotTightOnSpanError: If the subframe's frame operator is not a
            multiple of the projection onto W (within 1e-8)
        RotationLeaksSubspaceError: If |(I - P_W) U(t) P_W| > 1e-9 at a sample
    """
    positions = list(selector.indices)
    selected = frame.matrix[:, positions]
    basis = selector.basis(frame)
    projection = basis @ basis.conj().T
    operator = selected @ selected.conj().T
    scale = float(np.trace(operator).real) / max(basis.shape[1], 1)
    residual = float(np.max(np.abs(operator - scale * projection), initial=0.0))
    if residual > TIGHT_TOLERANCE:
        raise NotTightOnSpanError(residual=residual)

    complement = np.eye(frame.d) - projection
    for t in np.linspace(0.0, 1.0, steps + 1):
        leak = float(np.linalg.norm(complement @ rotation(float(t)) @ projection, 2))
        if leak > LEAK_TOLERANCE:
            raise RotationLeaksSubspaceError(t=float(t), leak=leak)

    logger.debug("spinning columns %s", positions)
    return rotate_columns(frame, positions, rotation, steps, construction)
