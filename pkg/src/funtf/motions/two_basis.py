"""
Two positively oriented bases whose union is NOD, and a NOD swap path.

With a = sqrt(2)/2, H2 = [[a, a], [a, -a]] and a small FUNTF F of d-2
vectors in dimension d-3 with complement sign vector xi,

    S = [ xi / sqrt(d-2) ; sqrt((d-3)/(d-2)) F ]      (orthogonal, det S = -1)
    U = [[H2, 0], [0, S]]

and V is U with rows 1 and 2 exchanged and the xi row negated. Both have
determinant +1. Writing u_k, v_k for their columns,

    F_* = (u1 v1 u2 v2 v3 ... vd u3 ... ud)
    G_* = (v1 u1 u2 v2 v3 ... vd u3 ... ud)

differ by one transposition, yet a path through NOD frames joins them:

    1. turn the tail block (columns 4..) by pi/4 in the e2-e3 plane
    2. turn the head block (u1 v1 u2 v2) by pi/2 in the e2-e3 plane, a
       4-cycle of its columns
    3-5. three spins of orthonormal pairs that realise the inverse 3-cycle
    6. undo step 1

Steps 1, 2 and 6 rotate a block whose frame operator commutes with the
rotation; steps 3-5 are spins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from funtf.errors import BadSubframeError
from funtf.frames.frame import Frame, check_funtf
from funtf.frames.naimark import canonical_simplex, naimark_complement
from funtf.frames.path import FramePath
from funtf.motions.spin import (
    DEFAULT_STEPS,
    SubframeSelector,
    planar_family,
    rotate_columns,
    spin,
)
from funtf.schema import FieldTag

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

HALF_ROOT = np.sqrt(2.0) / 2


@dataclass(frozen=True, eq=False)
class TwoBasisFrames:
    """
    The two bases and the two frames built from them.

    Attributes:
        U: First basis, d x d, determinant +1
        V: Second basis, d x d, determinant +1
        F_star: (u1 v1 u2 v2 v3..vd u3..ud)
        G_star: (v1 u1 u2 v2 v3..vd u3..ud)
        xi: Sign vector of the small frame's complement, oriented so det S = -1
    """

    U: NDArray[np.float64]
    V: NDArray[np.float64]
    F_star: Frame
    G_star: Frame
    xi: NDArray[np.float64]

    @property
    def d(self) -> int:
        """Dimension."""
        return int(self.U.shape[0])


def _small_frame(d: int, F_small: Frame | None) -> NDArray[np.float64]:
    """The (d-3) x (d-2) small frame; the canonical simplex when omitted."""
    if d == 3:
        if F_small is not None:
            raise BadSubframeError(expected=(0, 1), actual=F_small.shape)
        return np.zeros((0, 1))
    if F_small is None:
        return np.asarray(canonical_simplex(d - 2).matrix)
    if (
        F_small.shape != (d - 3, d - 2)
        or F_small.field_tag != FieldTag.REAL
        or not check_funtf(F_small).ok
    ):
        raise BadSubframeError(expected=(d - 3, d - 2), actual=F_small.shape)
    return np.asarray(F_small.matrix)


def two_onb_swap_frames(d: int, F_small: Frame | None = None) -> TwoBasisFrames:
    """
    Build U, V, F_* and G_* in dimension d.

    Args:
        d: Dimension, at least 3
        F_small: Real FUNTF of d-2 vectors in dimension d-3; must be None
            for d = 3 and defaults to the canonical simplex otherwise

    Raises:
        BadSubframeError: If d < 3 or F_small has the wrong shape or is not a FUNTF
    """
    if d < 3:
        raise BadSubframeError(expected=(d - 3, d - 2), actual=(d,))
    small = _small_frame(d, F_small)
    if d == 3:
        xi = np.array([1.0])
    else:
        xi = np.sign(naimark_complement(Frame(small, FieldTag.REAL)).matrix[0]).astype(np.float64)

    def assemble_s(signs: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.vstack([signs / np.sqrt(d - 2), np.sqrt((d - 3) / (d - 2)) * small])

    if np.linalg.det(assemble_s(xi)) > 0:
        xi = -xi
    S = assemble_s(xi)

    a = HALF_ROOT
    U = np.zeros((d, d))
    U[:2, :2] = [[a, a], [a, -a]]
    U[2:, 2:] = S
    V = U[[0, 2, 1, *range(3, d)], :].copy()
    V[1] = -V[1]

    u = [U[:, k] for k in range(d)]
    v = [V[:, k] for k in range(d)]
    tail = v[2:] + u[2:]
    F_star = Frame.from_columns([u[0], v[0], u[1], v[1], *tail], FieldTag.REAL)
    G_star = Frame.from_columns([v[0], u[0], u[1], v[1], *tail], FieldTag.REAL)
    logger.debug("two-basis frames in d=%d with xi=%s", d, xi.tolist())
    return TwoBasisFrames(U=U, V=V, F_star=F_star, G_star=G_star, xi=xi)


def two_onb_swap_path(
    d: int,
    F_small: Frame | None = None,
    steps: int = DEFAULT_STEPS,
) -> FramePath:
    """
    NOD path from F_* to G_* in six stages of ``steps`` intervals each.

    Raises:
        BadSubframeError: As for two_onb_swap_frames
    """
    frames = two_onb_swap_frames(d, F_small)
    e = np.eye(d)
    a = HALF_ROOT
    head = (0, 1, 2, 3)
    tail = tuple(range(4, 2 * d))

    stages: list[FramePath] = []
    current = frames.F_star

    def record(path: FramePath) -> None:
        nonlocal current
        stages.append(path)
        current = path.end
        logger.debug("stage %d (%s) done", len(stages), path.metadata.construction)

    record(rotate_columns(current, tail, planar_family(e[1], e[2], np.pi / 4), steps, "tilt tail"))
    record(rotate_columns(current, head, planar_family(e[1], e[2], np.pi / 2), steps, "quarter turn"))
    record(spin(current, SubframeSelector((1, 3)), planar_family(e[0], e[1], np.pi / 4), steps, "spin 1"))
    b1 = np.array([a, 0.0, -a, *([0.0] * (d - 3))])
    record(spin(current, SubframeSelector((2, 3)), planar_family(b1, e[1], -np.pi / 2), steps, "spin 2"))
    record(spin(current, SubframeSelector((1, 2)), planar_family(e[0], e[1], np.pi / 4), steps, "spin 3"))
    record(rotate_columns(current, tail, planar_family(e[1], e[2], -np.pi / 4), steps, "untilt tail"))
    return FramePath.concatenate(stages, construction="two-basis swap")
