"""
The Frame value object and its basic invariants.

A frame is stored as its d x N synthesis matrix [f_1 ... f_N]. Frames are
immutable: every operation returns a new Frame.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from funtf.errors import DimensionMismatchError, NotAPermutationError, NotFUNTFError
from funtf.numerics import as_field, field_of
from funtf.schema import FieldTag, FrameDocument, load_frame_document, write_document

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from pathlib import Path

    from numpy.typing import NDArray

DEFAULT_FUNTF_TOLERANCE = 1e-8


# =============================================================================
# Frame
# =============================================================================


@dataclass(frozen=True, eq=False)
class Frame:
    """
    N vectors in R^d or C^d, stored column-wise.

    Attributes:
        matrix: Read-only d x N array (float64 for REAL, complex128 for COMPLEX)
        field_tag: Scalar field

    The second constructor argument fixes the field; when it is None the
    field is inferred from the array dtype.
    """

    matrix: NDArray[Any]
    tag: InitVar[FieldTag | None] = None
    field_tag: FieldTag = field(init=False)

    def __post_init__(self, tag: FieldTag | None) -> None:
        raw = np.asarray(self.matrix)
        if raw.ndim == 1:
            raw = raw[:, np.newaxis]
        if raw.ndim != 2 or raw.shape[0] < 1:
            raise DimensionMismatchError(expected=(-1, -1), actual=raw.shape, what="frame matrix")
        resolved = tag if tag is not None else field_of(raw)
        array = as_field(raw, resolved)
        array.setflags(write=False)
        object.__setattr__(self, "matrix", array)
        object.__setattr__(self, "field_tag", resolved)

    @classmethod
    def from_columns(
        cls,
        columns: Iterable[Any],
        field_tag: FieldTag | None = None,
    ) -> Frame:
        """Build a frame from an iterable of length-d vectors."""
        stacked = np.column_stack([np.asarray(column) for column in columns])
        return cls(stacked, field_tag)

    @property
    def d(self) -> int:
        """Ambient dimension."""
        return int(self.matrix.shape[0])

    @property
    def N(self) -> int:
        """Number of vectors."""
        return int(self.matrix.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        """(d, N)."""
        return (self.d, self.N)

    def column(self, n: int) -> NDArray[Any]:
        """The vector f_n (0-based)."""
        return self.matrix[:, n]

    def with_columns(self, indices: Sequence[int], columns: NDArray[Any]) -> Frame:
        """Copy with the given columns replaced."""
        updated = self.matrix.copy()
        updated[:, list(indices)] = columns
        return Frame(updated, self.field_tag)

    def distance(self, other: Frame) -> float:
        """Max-norm distance between two frames of the same shape."""
        if self.shape != other.shape:
            raise DimensionMismatchError(expected=self.shape, actual=other.shape, what="frame")
        return float(np.max(np.abs(self.matrix - other.matrix)))

    def gram(self) -> NDArray[Any]:
        """The N x N Gram matrix F* F."""
        return self.matrix.conj().T @ self.matrix

    def to_document(self) -> FrameDocument:
        """Convert to the JSON document model."""
        complex_matrix = self.matrix.astype(np.complex128)
        columns = [
            [(float(entry.real), float(entry.imag)) for entry in complex_matrix[:, n]]
            for n in range(self.N)
        ]
        return FrameDocument(field=self.field_tag, d=self.d, N=self.N, columns=columns)

    @classmethod
    def from_document(cls, document: FrameDocument) -> Frame:
        """Build from a validated JSON document."""
        data = np.array(document.columns, dtype=np.float64).reshape(document.N, document.d, 2)
        matrix = (data[..., 0] + 1j * data[..., 1]).T
        return cls(matrix, document.field)

    def __repr__(self) -> str:
        return f"Frame(d={self.d}, N={self.N}, field={self.field_tag.value})"


def load_frame(path: Path | str) -> Frame:
    """Read a Frame JSON file."""
    return Frame.from_document(load_frame_document(path))


def dump_frame(frame: Frame, path: Path | str) -> Path:
    """Write a Frame JSON file."""
    return write_document(frame.to_document(), path)


# =============================================================================
# Frame operator and FUNTF checks
# =============================================================================


def frame_operator(frame: Frame) -> NDArray[Any]:
    """S = F F*."""
    return frame.matrix @ frame.matrix.conj().T


@dataclass(frozen=True)
class FuntfReport:
    """Unit-norm and tightness residuals of a frame."""

    unit_norm_resid: float
    tightness_resid: float
    tolerance: float

    @property
    def ok(self) -> bool:
        """True when both residuals are within tolerance."""
        return self.unit_norm_resid <= self.tolerance and self.tightness_resid <= self.tolerance


def _tightness_residual(frame: Frame) -> float:
    target = (frame.N / frame.d) * np.eye(frame.d)
    return float(np.max(np.abs(frame_operator(frame) - target)))


def check_funtf(frame: Frame, tol: float = DEFAULT_FUNTF_TOLERANCE) -> FuntfReport:
    """
    Measure how far a frame is from a FUNTF.

    unit_norm_resid is max |‖f_n‖^2 - 1|; tightness_resid is max |FF* - (N/d) I|.
    """
    squared_norms = np.sum(np.abs(frame.matrix) ** 2, axis=0)
    return FuntfReport(
        unit_norm_resid=float(np.max(np.abs(squared_norms - 1.0))),
        tightness_resid=_tightness_residual(frame),
        tolerance=tol,
    )


def require_funtf(frame: Frame, tol: float = DEFAULT_FUNTF_TOLERANCE) -> None:
    """Raise NotFUNTFError unless check_funtf passes."""
    report = check_funtf(frame, tol)
    if not report.ok:
        raise NotFUNTFError(
            unit_norm_resid=report.unit_norm_resid,
            tightness_resid=report.tightness_resid,
            tolerance=tol,
        )


def funtf_residual(frame: Frame) -> float:
    """Path metric: max of |‖f_n‖ - 1| and max |FF* - (N/d) I|."""
    norms = np.linalg.norm(frame.matrix, axis=0)
    return max(float(np.max(np.abs(norms - 1.0))), _tightness_residual(frame))


# =============================================================================
# Permutations
# =============================================================================


def as_permutation(sigma: Sequence[int], N: int) -> tuple[int, ...]:
    """
    Validate a 0-based permutation of range(N).

    Raises:
        NotAPermutationError: If sigma is not a bijection on range(N)
    """
    values = tuple(int(s) for s in sigma)
    if sorted(values) != list(range(N)):
        raise NotAPermutationError(sigma=list(values), N=N)
    return values


def inverse_permutation(sigma: Sequence[int]) -> tuple[int, ...]:
    """The permutation undoing sigma."""
    inverse = [0] * len(sigma)
    for position, source in enumerate(sigma):
        inverse[source] = position
    return tuple(inverse)


def permute(frame: Frame, sigma: Sequence[int]) -> Frame:
    """Column n of the result is f_{sigma(n)}."""
    order = as_permutation(sigma, frame.N)
    return Frame(frame.matrix[:, list(order)], frame.field_tag)
