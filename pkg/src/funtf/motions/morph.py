"""
The simplex to two-basis morph.

For a simplex H (d unit vectors in dimension d-1 summing to zero against
the sign vector xi) and a second simplex H' with sign pattern zeta, the
2d-column frame

    V(t) = [ sqrt((2-t)/d) xi ; sqrt((d-2+t)/d) H  ]
    U(t) = [ sqrt(t/d)   zeta ; sqrt((d-t)/d)   H' ]

is a FUNTF for every t in [0, 1]: V(t)V(t)* = diag(2-t, (d-2+t)/(d-1), ...)
and U(t)U(t)* = diag(t, (d-t)/(d-1), ...) add up to 2I. At t = 1 both blocks
are orthonormal bases. The frame stays NOD as long as the first vector of
U(1) meets every column of V(1) at a nonzero angle.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

import numpy as np

from funtf.errors import DegenerateAlignmentError, NotSimplexError
from funtf.frames.frame import Frame, check_funtf
from funtf.frames.naimark import canonical_simplex
from funtf.frames.path import FramePath
from funtf.motions.spin import DEFAULT_STEPS, plane_rotation
from funtf.schema import DEFAULT_TOLERANCES, FieldTag, Tolerances

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

ALIGNMENT_MARGIN = 1e-6
ALIGNMENT_ANGLE = 0.01
ALIGNMENT_ATTEMPTS = 629


def _sign_vector(values: Any, d: int, name: str) -> NDArray[np.float64]:
    signs = np.asarray(values, dtype=np.float64).reshape(-1)
    if signs.shape != (d,) or not np.all(np.abs(np.abs(signs) - 1.0) <= 1e-12):
        msg = f"{name} must be a vector of {d} signs"
        raise ValueError(msg)
    return signs


def _simplex(matrix: Any, signs: NDArray[np.float64], d: int, name: str) -> NDArray[np.float64]:
    """Check that ``matrix`` is a real FUNTF of d vectors in d-1 dimensions annihilating ``signs``."""
    simplex = np.asarray(matrix)
    if simplex.shape != (d - 1, d) or np.iscomplexobj(simplex):
        raise NotSimplexError(name=name)
    simplex = simplex.astype(np.float64)
    if not check_funtf(Frame(simplex, FieldTag.REAL)).ok:
        raise NotSimplexError(name=name)
    if float(np.max(np.abs(simplex @ signs))) > 1e-8:
        raise NotSimplexError(
            name=name,
            message=f"{name} does not annihilate its sign vector",
        )
    return simplex


def alignment_values(
    xi: NDArray[np.float64],
    H: NDArray[np.float64],
    H_prime: NDArray[np.float64],
    zeta: NDArray[np.float64],
) -> NDArray[np.float64]:
    """<u_1(1), v_i(1)> for every column i."""
    d = len(xi)
    return np.asarray(zeta[0] * xi / d + ((d - 1) / d) * (H_prime[:, 0] @ H))


def _require_aligned(values: NDArray[np.float64], threshold: float) -> None:
    index = int(np.argmin(np.abs(values)))
    if abs(values[index]) <= threshold:
        raise DegenerateAlignmentError(index=index, value=float(values[index]))


def align_simplex(
    xi: Any,
    H: Any,
    H_prime: Any,
    zeta: Any,
) -> NDArray[np.float64]:
    """
    Rotate H' until the morph is nondegenerate.

    Tries Givens rotations of angle 0.01·k (k = 0, 1, ...) in the first
    coordinate plane of R^(d-1), applied on the left of H', and returns the
    first whose alignment values all exceed 1e-6 in magnitude. Left rotations
    keep H' a simplex with the same sign pattern. In d = 2 there is no plane
    to turn and the given H' is only checked.

    Raises:
        NotSimplexError: If H or H' is not a simplex for its sign vector
        DegenerateAlignmentError: If no tried rotation works
    """
    xi_signs = np.asarray(xi, dtype=np.float64).reshape(-1)
    d = len(xi_signs)
    xi_signs = _sign_vector(xi_signs, d, "xi")
    zeta_signs = _sign_vector(zeta, d, "zeta")
    simplex = _simplex(H, xi_signs, d, "H")
    candidate = _simplex(H_prime, zeta_signs, d, "H_prime")

    if d - 1 < 2:
        _require_aligned(alignment_values(xi_signs, simplex, candidate, zeta_signs), ALIGNMENT_MARGIN)
        return candidate

    e1 = np.eye(d - 1)[0]
    e2 = np.eye(d - 1)[1]
    best = (0, 0.0)
    for k in range(ALIGNMENT_ATTEMPTS + 1):
        rotated = plane_rotation(e1, e2, ALIGNMENT_ANGLE * k) @ candidate
        margin = float(np.min(np.abs(alignment_values(xi_signs, simplex, rotated, zeta_signs))))
        if margin > ALIGNMENT_MARGIN:
            if k:
                logger.debug("aligned H' after %d Givens steps (margin %.3e)", k, margin)
            return np.asarray(rotated)
        if margin > best[1]:
            best = (k, margin)
    raise DegenerateAlignmentError(index=best[0], value=best[1])


def simplex_onb_morph(
    xi: Any,
    H: Any,
    H_prime: Any,
    zeta: Any,
    t: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Frame:
    """
    The morph frame [V(t) | U(t)] at parameter t.

    Args:
        xi: Sign vector with H·xi = 0
        H: Simplex, (d-1) x d
        H_prime: Simplex, (d-1) x d
        zeta: Sign vector with H'·zeta = 0
        t: Parameter in [0, 1]
        tolerances: Tolerance set (edge bounds the alignment values)

    Returns:
        Real frame of 2d columns, V(t) first

    Raises:
        NotSimplexError: If H or H' is not a simplex for its sign vector
        DegenerateAlignmentError: If the nondegeneracy condition fails
    """
    if not 0.0 <= t <= 1.0:
        msg = f"t must lie in [0, 1], got {t}"
        raise ValueError(msg)
    xi_signs = np.asarray(xi, dtype=np.float64).reshape(-1)
    d = len(xi_signs)
    xi_signs = _sign_vector(xi_signs, d, "xi")
    zeta_signs = _sign_vector(zeta, d, "zeta")
    simplex = _simplex(H, xi_signs, d, "H")
    partner = _simplex(H_prime, zeta_signs, d, "H_prime")
    _require_aligned(alignment_values(xi_signs, simplex, partner, zeta_signs), tolerances.edge)

    V = np.vstack([np.sqrt((2 - t) / d) * xi_signs, np.sqrt((d - 2 + t) / d) * simplex])
    U = np.vstack([np.sqrt(t / d) * zeta_signs, np.sqrt((d - t) / d) * partner])
    return Frame(np.hstack([V, U]), FieldTag.REAL)


def morph_path(
    d: int,
    steps: int = DEFAULT_STEPS,
    *,
    xi: Any = None,
    H: Any = None,
    H_prime: Any = None,
    zeta: Any = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FramePath:
    """
    Sample the morph on a uniform grid of ``steps`` intervals.

    Defaults: H is the canonical simplex, xi = zeta = all ones, and H' is
    align_simplex applied to H.
    """
    if d < 2:
        msg = f"the morph needs d >= 2, got {d}"
        raise ValueError(msg)
    xi = np.ones(d) if xi is None else xi
    zeta = np.ones(d) if zeta is None else zeta
    H = canonical_simplex(d).matrix if H is None else H
    H_prime = align_simplex(xi, H, H if H_prime is None else H_prime, zeta)

    times = np.linspace(0.0, 1.0, steps + 1)
    frames = [simplex_onb_morph(xi, H, H_prime, zeta, float(t), tolerances) for t in times]
    return FramePath.from_frames(times, frames, construction="morph", steps=steps)
