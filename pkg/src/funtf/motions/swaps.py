"""
Transpositions and negations of real frame vectors by spinning.

A union of two orthonormal bases can exchange any two of its vectors:

    - Across bases (i in A, j in B): spin all of A until f_i lands on f_j,
      then spin the regrouped basis (A without i, plus j) back. Columns i
      and j have traded places and every other column is restored
    - Within a basis: three cross swaps through a chaperone c from the
      other basis, (i, c), (i, j), (j, c), which return c to its place

A frame made of two spanning tight subframes can negate a target vector
with the help of a chaperone from the other subframe: align the target
orthogonally to the chaperone, turn the pair a quarter, hand the target
position to the chaperone's subframe for another quarter turn, then undo
the auxiliary rotations.

All of this is real-field only; complex frames connect through lifting.
"""

from __future__ import annotations

import itertools
import logging
from typing import TYPE_CHECKING

import numpy as np

from funtf.errors import (
    FieldUnsupportedError,
    MissingChaperoneError,
    NotTightError,
    NotTwoONBsError,
    SameSubframeError,
)
from funtf.frames.path import FramePath
from funtf.motions.spin import DEFAULT_STEPS, SubframeSelector, planar_family, rotation_taking, spin
from funtf.schema import FieldTag

if TYPE_CHECKING:
    from collections.abc import Sequence

    from funtf.frames.frame import Frame

logger = logging.getLogger(__name__)

SPLIT_TOLERANCE = 1e-8

Groups = list[list[int]]


def _require_real(frame: Frame, command: str) -> None:
    if frame.field_tag != FieldTag.REAL:
        raise FieldUnsupportedError(
            field_name=frame.field_tag.value,
            command=command,
            suggestion="Complex frames are connected with `funtf connect`",
        )


def _constant(frame: Frame, steps: int, construction: str) -> FramePath:
    times = np.linspace(0.0, 1.0, steps + 1)
    return FramePath.from_frames(times, [frame] * len(times), construction=construction, steps=steps)


# =============================================================================
# Split detection
# =============================================================================


def _is_orthonormal(frame: Frame, indices: Sequence[int]) -> bool:
    columns = frame.matrix[:, list(indices)]
    gram = columns.conj().T @ columns
    return float(np.max(np.abs(gram - np.eye(len(indices))))) <= SPLIT_TOLERANCE


def _is_tight(frame: Frame, indices: Sequence[int]) -> bool:
    columns = frame.matrix[:, list(indices)]
    operator = columns @ columns.conj().T
    target = (len(indices) / frame.d) * np.eye(frame.d)
    return float(np.max(np.abs(operator - target))) <= SPLIT_TOLERANCE


def two_onb_split(frame: Frame) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Split a frame of 2d vectors into two orthonormal bases.

    The first basis is the one containing column 0.

    Raises:
        NotTwoONBsError: If N != 2d or no split exists
    """
    d, N = frame.shape
    if N != 2 * d:
        raise NotTwoONBsError()
    for rest in itertools.combinations(range(1, N), d - 1):
        first = (0, *rest)
        second = tuple(k for k in range(N) if k not in first)
        if _is_orthonormal(frame, first) and _is_orthonormal(frame, second):
            return first, second
    raise NotTwoONBsError()


def tight_split(
    frame: Frame,
    target: int,
    chaperone: int,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Two spanning tight subframes, the first holding target, the second chaperone.

    Raises:
        NotTightError: If no such split exists
    """
    d, N = frame.shape
    others = [k for k in range(N) if k not in (target, chaperone)]
    for size in range(d - 1, N - d):
        for rest in itertools.combinations(others, size):
            first = tuple(sorted((target, *rest)))
            second = tuple(k for k in range(N) if k not in first)
            if _is_tight(frame, first) and _is_tight(frame, second):
                return first, second
    raise NotTightError()


# =============================================================================
# Swaps
# =============================================================================


def _cross_swap(
    frame: Frame,
    i: int,
    j: int,
    groups: Groups,
    steps: int,
) -> tuple[list[FramePath], Frame, Groups]:
    """Exchange columns i and j lying in different orthonormal bases."""
    home = next(group for group in groups if i in group)
    away = next(group for group in groups if j in group)
    q1, q2, angle = rotation_taking(frame.matrix[:, i], frame.matrix[:, j])

    align = spin(frame, SubframeSelector(tuple(home)), planar_family(q1, q2, angle), steps, "align")
    regrouped = sorted([k for k in home if k != i] + [j])
    restore = spin(
        align.end, SubframeSelector(tuple(regrouped)), planar_family(q1, q2, -angle), steps, "restore"
    )
    remaining = sorted([k for k in away if k != j] + [i])
    return [align, restore], restore.end, [regrouped, remaining]


def swap_pair_path(
    frame: Frame,
    i: int,
    j: int,
    chaperone: int | None = None,
    steps: int = DEFAULT_STEPS,
    blocks: tuple[Sequence[int], Sequence[int]] | None = None,
) -> FramePath:
    """
    Exchange columns i and j of a union of two orthonormal bases.

    Args:
        frame: Real frame of 2d vectors forming two orthonormal bases
        i: First column
        j: Second column
        chaperone: Column from the other basis; required when i and j share one
        steps: Intervals per spin stage
        blocks: The two bases as column lists (detected when omitted)

    Raises:
        FieldUnsupportedError: For complex frames
        NotTwoONBsError: If the frame (or the given blocks) are not two bases
        MissingChaperoneError: If i and j share a basis and no chaperone is given
        SameSubframeError: If the chaperone sits in the same basis as i and j
    """
    _require_real(frame, "swap")
    if i == j:
        return _constant(frame, steps, "swap")
    if blocks is None:
        first, second = two_onb_split(frame)
    else:
        first, second = tuple(blocks[0]), tuple(blocks[1])
        if (
            sorted(first + second) != list(range(frame.N))
            or not _is_orthonormal(frame, first)
            or not _is_orthonormal(frame, second)
        ):
            raise NotTwoONBsError()
    groups: Groups = [list(first), list(second)]

    def group_of(k: int) -> int:
        return 0 if k in groups[0] else 1

    if group_of(i) != group_of(j):
        sequence = [(i, j)]
    else:
        if chaperone is None:
            raise MissingChaperoneError(i=i, j=j)
        if group_of(chaperone) == group_of(i):
            raise SameSubframeError(target=i, chaperone=chaperone)
        sequence = [(i, chaperone), (i, j), (j, chaperone)]

    stages: list[FramePath] = []
    current = frame
    for p, q in sequence:
        logger.debug("cross swap of columns %d and %d", p, q)
        paths, current, groups = _cross_swap(current, p, q, groups, steps)
        stages.extend(paths)
    return FramePath.concatenate(stages, construction="swap")


# =============================================================================
# Negation
# =============================================================================


def negate_vector_path(
    frame: Frame,
    target: int,
    chaperone: int,
    steps: int = DEFAULT_STEPS,
    subframes: tuple[Sequence[int], Sequence[int]] | None = None,
) -> FramePath:
    """
    Replace column ``target`` by its negative, leaving every other column in place.

    Args:
        frame: Real frame that splits into two spanning tight subframes
        target: Column to negate
        chaperone: Column of the other tight subframe
        steps: Intervals per spin stage
        subframes: The split (target's subframe first); detected when omitted

    Raises:
        FieldUnsupportedError: For complex frames
        SameSubframeError: If target and chaperone share a subframe
        NotTightError: If no split into two spanning tight subframes exists
    """
    _require_real(frame, "negate")
    if target == chaperone:
        raise SameSubframeError(target=target, chaperone=chaperone)
    if subframes is None:
        home, away = tight_split(frame, target, chaperone)
    else:
        home, away = tuple(subframes[0]), tuple(subframes[1])
        if target in away:
            home, away = away, home
        if chaperone in home or target not in home:
            raise SameSubframeError(target=target, chaperone=chaperone)
        if not (_is_tight(frame, home) and _is_tight(frame, away)):
            raise NotTightError()

    a = frame.matrix[:, target]
    b = frame.matrix[:, chaperone]
    orthogonal = a - (a @ b) * b
    if np.linalg.norm(orthogonal) <= 1e-12:
        direction = np.zeros_like(b)
        direction[int(np.argmin(np.abs(b)))] = 1.0
        orthogonal = direction - (direction @ b) * b
    turned = orthogonal / np.linalg.norm(orthogonal)
    q1, q2, angle = rotation_taking(a, turned)
    quarter = np.pi / 2

    align = spin(frame, SubframeSelector(tuple(home)), planar_family(q1, q2, angle), steps, "align")
    pair = spin(
        align.end, SubframeSelector((target, chaperone)), planar_family(turned, b, quarter), steps, "pair"
    )
    handed = tuple(sorted([k for k in away if k != chaperone] + [target]))
    hand_over = spin(pair.end, SubframeSelector(handed), planar_family(turned, b, quarter), steps, "hand over")
    give_back = spin(
        hand_over.end, SubframeSelector(tuple(away)), planar_family(turned, b, -quarter), steps, "give back"
    )
    restore = spin(
        give_back.end, SubframeSelector(tuple(home)), planar_family(q1, q2, -angle), steps, "restore"
    )
    return FramePath.concatenate([align, pair, hand_over, give_back, restore], construction="negate")
