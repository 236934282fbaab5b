"""
Frame synthesis from eigensteps and the inverse recovery of base data.

Given an eigensteps table and base data (a unitary U_1 and block-diagonal
unitaries V_n), the recursion

    f_1     = U_1 e_1
    f_{n+1} = U_n V_n P_n [v_n; 0]
    U_{n+1} = U_n V_n P_n diag(W_n, I) Q_n^T

produces a FUNTF whose eigensteps are the table. Every FUNTF with that table
arises this way, so (U_1, V_n) are coordinates on the fiber over the table.

Design Decisions:
    - The index data driving the recursion comes from a "source" table. For
      an interior table the source is the table itself. For a boundary
      table it is the fixed interior anchor for (N, d) and the table is
      reached as the t = 1 limit along the segment from the anchor, which
      is how boundary frames are reached by lifting
    - Tables with N < d + 2 have no interior; they, and callers passing
      ``own_structure=True``, use their own multiplicity structure, for
      which the recursion never divides by zero
    - recover_base_data fixes the gauge: on each moving block the
      coefficients of f_{n+1} in the basis U_n V_n are real and
      nonnegative. Blocks are completed with positive determinant in the
      real case
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from funtf.eigensteps import EigenstepsTable, interior_anchor, is_interior, of_frame, require_valid
from funtf.errors import DegenerateSpectraError, DimensionMismatchError, InvalidBaseDataError
from funtf.frames.frame import Frame
from funtf.lifting.steps import StepIndexData, all_index_data, evaluate_step
from funtf.numerics import field_of, haar_unitary, orthonormal_completion, unitarity_residual
from funtf.schema import DEFAULT_TOLERANCES, FieldTag, Tolerances

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

logger = logging.getLogger(__name__)


# =============================================================================
# Base data
# =============================================================================


@dataclass(frozen=True, eq=False)
class BaseData:
    """
    Fiber coordinates of a frame over its eigensteps.

    Attributes:
        U1: d x d unitary whose first column is f_1
        V: N - 1 unitaries; V[n-1] is V_n, block-diagonal with respect to
            the multiplicity blocks of row n of the source table
    """

    U1: NDArray[Any]
    V: tuple[NDArray[Any], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "V", tuple(np.asarray(v) for v in self.V))
        object.__setattr__(self, "U1", np.asarray(self.U1))

    @property
    def d(self) -> int:
        """Dimension."""
        return int(self.U1.shape[0])

    @property
    def N(self) -> int:
        """Number of frame vectors the base data drives."""
        return len(self.V) + 1

    @property
    def field_tag(self) -> FieldTag:
        """COMPLEX if any matrix is complex, REAL otherwise."""
        if field_of(self.U1) == FieldTag.COMPLEX:
            return FieldTag.COMPLEX
        if any(field_of(v) == FieldTag.COMPLEX for v in self.V):
            return FieldTag.COMPLEX
        return FieldTag.REAL

    def check(
        self,
        index_data: Sequence[StepIndexData],
        tolerances: Tolerances = DEFAULT_TOLERANCES,
    ) -> None:
        """
        Verify shapes, unitarity and block structure.

        Raises:
            DimensionMismatchError: If the shapes do not match the index data
            InvalidBaseDataError: If a matrix is not unitary or leaks across blocks
        """
        d = index_data[0].d if index_data else self.d
        if self.U1.shape != (d, d) or len(self.V) != len(index_data):
            raise DimensionMismatchError(
                expected=(d, len(index_data) + 1),
                actual=(self.U1.shape[0], self.N),
                what="base data (d, N)",
            )
        _check_unitary(self.U1, 0, tolerances)
        for data, block_matrix in zip(index_data, self.V, strict=True):
            if block_matrix.shape != (d, d):
                raise DimensionMismatchError(expected=(d, d), actual=block_matrix.shape, what=f"V_{data.n}")
            _check_unitary(block_matrix, data.n, tolerances)
            mask = np.ones((d, d), dtype=bool)
            for block in data.blocks:
                mask[np.ix_(block, block)] = False
            leak = float(np.max(np.abs(block_matrix[mask]), initial=0.0))
            if leak > tolerances.unit:
                raise InvalidBaseDataError(
                    step=data.n,
                    reason=f"entries outside the blocks {list(data.blocks)} reach {leak:.3e}",
                )


def _check_unitary(matrix: NDArray[Any], step: int, tolerances: Tolerances) -> None:
    residual = unitarity_residual(matrix)
    if residual > tolerances.unit:
        raise InvalidBaseDataError(step=step, reason=f"not unitary (residual {residual:.3e})")


def _block_diagonal(blocks: Sequence[tuple[int, ...]], pieces: Sequence[NDArray[Any]], d: int) -> NDArray[Any]:
    dtype = np.result_type(*pieces) if pieces else np.float64
    matrix = np.zeros((d, d), dtype=dtype)
    for block, piece in zip(blocks, pieces, strict=True):
        matrix[np.ix_(block, block)] = piece
    return matrix


def identity_base_data(
    table: EigenstepsTable,
    field_tag: FieldTag = FieldTag.COMPLEX,
) -> BaseData:
    """U_1 = I and every V_n = I."""
    dtype = np.complex128 if field_tag == FieldTag.COMPLEX else np.float64
    identity = np.eye(table.d, dtype=dtype)
    return BaseData(U1=identity, V=tuple(identity.copy() for _ in range(table.N - 1)))


def random_base_data(
    table: EigenstepsTable,
    field_tag: FieldTag,
    rng: np.random.Generator | int | None = None,
    *,
    own_structure: bool = False,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> BaseData:
    """
    Haar-random U_1 and Haar-random blocks for every V_n.

    Blocks follow the structure ``synthesize`` will use for this table. On
    1 x 1 blocks this is a uniform phase (COMPLEX) or a random sign (REAL).
    The resulting distribution on frames is defined by this construction;
    it is not the uniform measure on the fiber.
    """
    generator = np.random.default_rng(rng)
    source = structure_table(table, own_structure=own_structure, tolerances=tolerances)
    index_data = all_index_data(source, tolerances)
    U1 = haar_unitary(table.d, field_tag, generator)
    V = tuple(
        _block_diagonal(
            data.blocks,
            [haar_unitary(len(block), field_tag, generator) for block in data.blocks],
            table.d,
        )
        for data in index_data
    )
    return BaseData(U1=U1, V=V)


# =============================================================================
# Synthesis
# =============================================================================


def structure_table(
    table: EigenstepsTable,
    *,
    own_structure: bool = False,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> EigenstepsTable:
    """
    The table whose index data drives synthesis of ``table``.

    Raises:
        InvalidTableError: If the table does not validate
    """
    require_valid(table, tolerances)
    if own_structure or table.N < table.d + 2 or is_interior(table, tolerances=tolerances):
        return table
    return interior_anchor(table.N, table.d)


def _advance(
    U: NDArray[Any],
    V: NDArray[Any],
    data: StepIndexData,
    W: NDArray[np.float64],
) -> tuple[NDArray[Any], NDArray[Any]]:
    """One recursion step: returns (U_n V_n P_n, U_{n+1})."""
    moved = (U @ V)[:, list(data.sigma_n)]
    K = data.K_n
    mixed = moved.copy()
    mixed[:, :K] = moved[:, :K] @ W
    following = np.empty_like(mixed)
    following[:, list(data.tau_n)] = mixed
    return moved, following


def synthesize_along(
    source: EigenstepsTable,
    target: EigenstepsTable,
    t: float,
    base: BaseData,
    index_data: Sequence[StepIndexData],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Frame:
    """Frame over (1-t)·source + t·target using the index data of source."""
    field_tag = base.field_tag
    dtype = np.complex128 if field_tag == FieldTag.COMPLEX else np.float64
    U = base.U1.astype(dtype)
    columns = [U[:, 0]]
    for data, V in zip(index_data, base.V, strict=True):
        evaluation = evaluate_step(source, target, data, t, tolerances)
        moved, U = _advance(U, V.astype(dtype), data, evaluation.W)
        columns.append(moved[:, : data.K_n] @ evaluation.v)
    return Frame(np.column_stack(columns), field_tag)


def synthesize(
    table: EigenstepsTable,
    base: BaseData,
    *,
    own_structure: bool = False,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Frame:
    """
    The FUNTF with eigensteps ``table`` at fiber coordinates ``base``.

    Args:
        table: Valid eigensteps table
        base: Base data matching the structure of ``structure_table(table)``
        own_structure: Use the table's own multiplicity structure even on
            the boundary (the form recover_base_data(..., boundary_ok=True)
            returns)
        tolerances: Tolerance set

    Returns:
        Frame whose first column is the first column of U_1 and whose
        eigensteps equal the table

    Raises:
        InvalidTableError: If the table does not validate
        DimensionMismatchError: If the base data has the wrong shape
        InvalidBaseDataError: If the base data is not unitary or not block-diagonal
    """
    source = structure_table(table, own_structure=own_structure, tolerances=tolerances)
    index_data = all_index_data(source, tolerances)
    base.check(index_data, tolerances)
    if source is table:
        return synthesize_along(table, table, 0.0, base, index_data, tolerances)
    logger.debug("boundary table (N=%d, d=%d): limit from the interior anchor", table.N, table.d)
    return synthesize_along(source, table, 1.0, base, index_data, tolerances)


# =============================================================================
# Recovery
# =============================================================================


def recover_base_data(
    frame: Frame,
    *,
    boundary_ok: bool = False,
    table: EigenstepsTable | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> BaseData:
    """
    Fiber coordinates of a FUNTF, in the canonical gauge.

    Args:
        frame: FUNTF
        boundary_ok: Accept boundary eigensteps; the result then uses the
            table's own structure (pass ``own_structure=True`` to synthesize)
        table: Eigensteps to recover against (defaults to of_frame(frame));
            lets two numerically close frames share one structure
        tolerances: ``rank`` decides when a block coefficient is zero

    Raises:
        DegenerateSpectraError: If the eigensteps are not interior and
            boundary_ok is False
    """
    table = of_frame(frame) if table is None else table
    if not boundary_ok and not is_interior(table, tolerances=tolerances):
        raise DegenerateSpectraError()
    require_valid(table, tolerances)
    if (table.N, table.d) != (frame.N, frame.d):
        raise DimensionMismatchError(expected=(frame.N, frame.d), actual=(table.N, table.d), what="(N, d)")

    matrix = frame.matrix
    d = frame.d
    first = matrix[:, 0] / np.linalg.norm(matrix[:, 0])
    U1 = orthonormal_completion(first, tolerances, positive=True)
    U = U1
    blocks_out: list[NDArray[Any]] = []
    for data in all_index_data(table, tolerances):
        evaluation = evaluate_step(table, table, data, 0.0, tolerances)
        coefficients = U.conj().T @ matrix[:, data.n]
        V = np.eye(d, dtype=matrix.dtype)
        for block in data.blocks:
            if block[0] not in data.I_n:
                continue
            segment = coefficients[list(block)]
            norm = float(np.linalg.norm(segment))
            if norm > tolerances.rank:
                V[np.ix_(block, block)] = orthonormal_completion(
                    segment / norm, tolerances, positive=True
                )
        blocks_out.append(V)
        _, U = _advance(U, V, data, evaluation.W)
    return BaseData(U1=U1, V=tuple(blocks_out))


def block_matrices(base: BaseData, index_data: Sequence[StepIndexData]) -> list[list[NDArray[Any]]]:
    """Split every V_n into its diagonal blocks."""
    return [
        [V[np.ix_(block, block)] for block in data.blocks]
        for data, V in zip(index_data, base.V, strict=True)
    ]


def assemble_base_data(
    U1: NDArray[Any],
    pieces: Sequence[Sequence[NDArray[Any]]],
    index_data: Sequence[StepIndexData],
) -> BaseData:
    """Inverse of block_matrices."""
    d = U1.shape[0]
    return BaseData(
        U1=U1,
        V=tuple(
            _block_diagonal(data.blocks, list(step_pieces), d)
            for data, step_pieces in zip(index_data, pieces, strict=True)
        ),
    )

