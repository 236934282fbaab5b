"""
Continuous frame paths over eigensteps paths.

lift_path follows a straight eigensteps segment with the fiber coordinates
held fixed; fiber_path keeps the eigensteps fixed and moves the fiber
coordinates along unitary geodesics.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

import numpy as np

from funtf.eigensteps import EigenstepsPath, is_interior, linear_path, of_frame
from funtf.errors import (
    DimensionMismatchError,
    EigenstepsMismatchError,
    NotInteriorError,
    OrientationMismatchError,
    OrientationObstructionError,
)
from funtf.frames.frame import Frame
from funtf.frames.path import FramePath
from funtf.lifting.steps import all_index_data
from funtf.lifting.synthesis import (
    assemble_base_data,
    block_matrices,
    recover_base_data,
    synthesize_along,
)
from funtf.numerics import UnitaryGeodesic
from funtf.schema import DEFAULT_TOLERANCES, FieldTag, Tolerances

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from funtf.eigensteps import EigenstepsTable

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 64
EIGENSTEPS_MATCH_TOLERANCE = 1e-7
TAIL_START = 0.9


def lift_t_grid(steps: int) -> NDArray[np.float64]:
    """
    steps + 1 parameters from 0 to 1, refined toward t = 1.

    The first steps - max(1, steps // 10) intervals are uniform on [0, 0.9];
    the rest follow t = 1 - 0.1·(1 - s)^2 for s uniform on [0, 1].
    """
    if steps < 2:
        msg = f"steps must be at least 2, got {steps}"
        raise ValueError(msg)
    tail_count = max(1, steps // 10)
    head = np.linspace(0.0, TAIL_START, steps - tail_count, endpoint=False)
    s = np.linspace(0.0, 1.0, tail_count + 1)
    tail = 1.0 - (1.0 - TAIL_START) * (1.0 - s) ** 2
    grid = np.concatenate([head, tail])
    grid[-1] = 1.0
    return grid


def lift_path(
    frame: Frame,
    target: EigenstepsTable,
    steps: int = DEFAULT_STEPS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FramePath:
    """
    Lift the segment from of_frame(frame) to ``target`` to a frame path.

    The fiber coordinates of ``frame`` stay fixed. Sample k has eigensteps
    (1 - t_k)·of_frame(frame) + t_k·target; a boundary target is reached
    as the endpoint limit.

    Args:
        frame: FUNTF with interior eigensteps
        target: Any valid table with the same (N, d)
        steps: Number of intervals
        tolerances: Tolerance set

    Raises:
        NotInteriorError: If the frame's eigensteps are on the boundary
        InvalidTableError: If target does not validate
        DimensionMismatchError: If (N, d) differ
    """
    source = of_frame(frame)
    if (source.N, source.d) != (target.N, target.d):
        raise DimensionMismatchError(
            expected=(source.N, source.d), actual=(target.N, target.d), what="lift target"
        )
    segment: EigenstepsPath = linear_path(source, target, tolerances)
    if not is_interior(source, tolerances=tolerances):
        raise NotInteriorError()
    times = lift_t_grid(steps)

    if source.max_deviation(target) <= tolerances.eq:
        return FramePath.from_frames(
            times,
            [frame] * len(times),
            construction="lift",
            steps=steps,
            notes=["target equals the start eigensteps"],
            declared=[source] * len(times),
        )

    base = recover_base_data(frame, table=source, tolerances=tolerances)
    index_data = all_index_data(source, tolerances)
    frames = [frame]
    for t in times[1:]:
        frames.append(synthesize_along(source, target, float(t), base, index_data, tolerances))
    logger.debug("lifted %d samples toward target", len(frames))
    return FramePath.from_frames(
        times,
        frames,
        construction="lift",
        steps=steps,
        declared=[segment.at(float(t)) for t in times],
    )


def fiber_path(
    start: Frame,
    end: Frame,
    steps: int = DEFAULT_STEPS,
    *,
    boundary_ok: bool = False,
    table: EigenstepsTable | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FramePath:
    """
    Path between two frames with the same eigensteps.

    Both frames are expressed in fiber coordinates over one shared table;
    U_1 and every block of every V_n then follow a unitary geodesic.

    Args:
        start: FUNTF
        end: FUNTF with the same eigensteps within 1e-7
        steps: Number of uniform intervals
        boundary_ok: Allow boundary eigensteps (uses the table's own structure)
        table: Shared eigensteps (defaults to of_frame(start))
        tolerances: Tolerance set

    Raises:
        EigenstepsMismatchError: If the eigensteps differ by more than 1e-7
        DegenerateSpectraError: If the eigensteps are on the boundary and
            boundary_ok is False
        OrientationObstructionError: For real frames whose fiber coordinates
            lie in different orientation classes
    """
    if start.shape != end.shape:
        raise DimensionMismatchError(expected=start.shape, actual=end.shape, what="fiber endpoints")
    start_table, end_table = of_frame(start), of_frame(end)
    deviation = start_table.max_deviation(end_table)
    if deviation > EIGENSTEPS_MATCH_TOLERANCE:
        raise EigenstepsMismatchError(deviation=deviation, tolerance=EIGENSTEPS_MATCH_TOLERANCE)
    shared = start_table if table is None else table

    base_start = recover_base_data(start, boundary_ok=boundary_ok, table=shared, tolerances=tolerances)
    base_end = recover_base_data(end, boundary_ok=boundary_ok, table=shared, tolerances=tolerances)
    field_tag = (
        FieldTag.REAL
        if start.field_tag == FieldTag.REAL and end.field_tag == FieldTag.REAL
        else FieldTag.COMPLEX
    )
    index_data = all_index_data(shared, tolerances)
    if field_tag == FieldTag.COMPLEX:
        start = Frame(start.matrix, FieldTag.COMPLEX)
        end = Frame(end.matrix, FieldTag.COMPLEX)

    def geodesic(a: NDArray[Any], b: NDArray[Any], label: str) -> UnitaryGeodesic:
        if field_tag == FieldTag.COMPLEX:
            a, b = a.astype(np.complex128), b.astype(np.complex128)
        try:
            return UnitaryGeodesic.between(a, b, tolerances)
        except OrientationMismatchError as exc:
            raise OrientationObstructionError(block=label) from exc

    U1_path = geodesic(base_start.U1, base_end.U1, "U1")
    block_paths = [
        [
            geodesic(a, b, f"V_{data.n}{list(block)}")
            for block, a, b in zip(data.blocks, pieces_a, pieces_b, strict=True)
        ]
        for data, pieces_a, pieces_b in zip(
            index_data,
            block_matrices(base_start, index_data),
            block_matrices(base_end, index_data),
            strict=True,
        )
    ]
    detours = sum(
        path.detour_epsilon is not None for step in block_paths for path in step
    ) + int(U1_path.detour_epsilon is not None)

    times = np.linspace(0.0, 1.0, steps + 1)
    frames = [start]
    for t in times[1:-1]:
        base = assemble_base_data(
            U1_path(float(t)),
            [[path(float(t)) for path in step] for step in block_paths],
            index_data,
        )
        frames.append(synthesize_along(shared, shared, 0.0, base, index_data, tolerances))
    frames.append(end)

    notes = [f"{detours} geodesic detour(s) around the branch cut"] if detours else []
    return FramePath.from_frames(
        times,
        frames,
        construction="fiber",
        steps=steps,
        notes=notes,
        declared=[shared] * len(times),
    )
