"""
Dense linear-algebra kernel for funtf.

Everything here is field-generic: a real input produces a real output and a
complex input a complex one. No frame semantics live in this module; frames,
eigensteps and lifting build on these contracts:

- hermitian_eig: spectra sorted nonincreasing, the convention used everywhere
- UnitaryGeodesic / unitary_geodesic: continuous paths in U(d) or SO(d)
- orthonormal_completion: extend orthonormal columns to a full unitary
- haar_unitary: random unitary or orthogonal matrices

Design Decisions:
    - Geodesics use the complex Schur form of U0* U1, which is unitary even
      for repeated eigenvalues, so the principal logarithm never needs an
      eigenvector inverse
    - An eigenvalue of U0* U1 at -1 sits on the branch cut; the path then
      detours through U0 exp(eps K) for a fixed skew K and records it
    - Degenerate eigenspaces get whatever orthonormal basis LAPACK returns;
      callers must not rely on a canonical choice there
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
import scipy.linalg

from funtf.errors import (
    DimensionMismatchError,
    NotOrthonormalError,
    NotSelfAdjointError,
    NotUnitaryError,
    OrientationMismatchError,
)
from funtf.schema import DEFAULT_TOLERANCES, FieldTag, Tolerances

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

# Eigenvalues of U0* U1 closer than this to -1 trigger the branch-cut detour.
BRANCH_CUT_GUARD = 1e-6
DETOUR_EPSILONS = (0.05, 0.1, 0.2, 0.4)


# =============================================================================
# Field helpers
# =============================================================================


def field_of(matrix: NDArray[Any]) -> FieldTag:
    """Return the field tag of a numpy array."""
    return FieldTag.COMPLEX if np.iscomplexobj(matrix) else FieldTag.REAL


def as_field(matrix: Any, field_tag: FieldTag) -> NDArray[Any]:
    """Convert to a float64 or complex128 array for the given field."""
    if field_tag == FieldTag.REAL:
        array = np.asarray(matrix)
        if np.iscomplexobj(array):
            array = array.real
        return np.array(array, dtype=np.float64)
    return np.array(matrix, dtype=np.complex128)


def unitarity_residual(matrix: NDArray[Any]) -> float:
    """Return max |U*U - I| entrywise."""
    size = matrix.shape[1]
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(size)), initial=0.0))


def require_unitary(
    matrix: NDArray[Any],
    tolerance: float,
    name: str = "matrix",
) -> None:
    """Raise NotUnitaryError unless ``matrix`` is square and unitary within tolerance."""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(
            expected=(matrix.shape[0], matrix.shape[0]), actual=matrix.shape, what=name
        )
    residual = unitarity_residual(matrix)
    if residual > tolerance:
        raise NotUnitaryError(residual=residual, tolerance=tolerance, name=name)


# =============================================================================
# Hermitian eigendecomposition
# =============================================================================


@dataclass(frozen=True)
class SpectralDecomposition:
    """
    Eigenvalues sorted nonincreasing with matching unitary eigenvectors.

    Attributes:
        eigenvalues: Real eigenvalues, largest first
        eigenvectors: Unitary matrix whose column i belongs to eigenvalues[i]
    """

    eigenvalues: NDArray[np.float64]
    eigenvectors: NDArray[Any]

    def reconstruct(self) -> NDArray[Any]:
        """Return U diag(e) U*."""
        vectors = self.eigenvectors
        return (vectors * self.eigenvalues) @ vectors.conj().T


def hermitian_eig(
    matrix: NDArray[Any],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> SpectralDecomposition:
    """
    Diagonalize a self-adjoint matrix.

    Args:
        matrix: Square real-symmetric or complex-Hermitian matrix
        tolerances: ``sym`` bounds the accepted asymmetry

    Returns:
        SpectralDecomposition with nonincreasing eigenvalues

    Raises:
        NotSelfAdjointError: If max |A - A*| exceeds tolerances.sym
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(
            expected=(matrix.shape[0], matrix.shape[0]), actual=matrix.shape, what="eig input"
        )
    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))
    if asymmetry > tolerances.sym:
        raise NotSelfAdjointError(asymmetry=asymmetry, tolerance=tolerances.sym)

    symmetric = (matrix + matrix.conj().T) / 2
    values, vectors = scipy.linalg.eigh(symmetric)
    return SpectralDecomposition(
        eigenvalues=np.ascontiguousarray(values[::-1]),
        eigenvectors=np.ascontiguousarray(vectors[:, ::-1]),
    )


def sorted_spectrum(matrix: NDArray[Any]) -> NDArray[np.float64]:
    """Eigenvalues of an already-Hermitian matrix, largest first, no checks."""
    values = scipy.linalg.eigvalsh((matrix + matrix.conj().T) / 2)
    return np.ascontiguousarray(values[::-1])


# =============================================================================
# Geodesics
# =============================================================================


def _detour_generator(size: int) -> NDArray[np.float64]:
    """Fixed skew-symmetric matrix with distinct irrational-looking entries."""
    rows, cols = np.triu_indices(size, k=1)
    upper = np.zeros((size, size))
    upper[rows, cols] = np.sqrt(rows + 2.0) / (cols + 1.0)
    return upper - upper.T


@dataclass(frozen=True)
class _Leg:
    start: NDArray[Any]
    basis: NDArray[np.complex128]
    angles: NDArray[np.float64]

    def at(self, t: float) -> NDArray[np.complex128]:
        phases = np.exp(1j * t * self.angles)
        return self.start @ (self.basis * phases) @ self.basis.conj().T


def _principal_leg(start: NDArray[Any], end: NDArray[Any]) -> _Leg | None:
    """Leg from start to end, or None when U0* U1 has an eigenvalue near -1."""
    relative = start.conj().T @ end
    triangular, basis = scipy.linalg.schur(relative.astype(np.complex128), output="complex")
    eigenvalues = np.diag(triangular)
    if np.min(np.abs(eigenvalues + 1.0), initial=np.inf) < BRANCH_CUT_GUARD:
        return None
    return _Leg(start=start, basis=basis, angles=np.angle(eigenvalues))


@dataclass(frozen=True)
class UnitaryGeodesic:
    """
    A continuous path in U(d) (or SO(d) for real input) from ``start`` to ``end``.

    Build with :meth:`between`; evaluate with ``path(t)``. When the principal
    logarithm hits the branch cut, the path runs through one intermediate
    point and ``detour_epsilon`` records the perturbation size used.
    """

    start: NDArray[Any]
    end: NDArray[Any]
    field_tag: FieldTag
    legs: tuple[_Leg, ...] = field(repr=False)
    detour_epsilon: float | None = None

    @classmethod
    def between(
        cls,
        start: NDArray[Any],
        end: NDArray[Any],
        tolerances: Tolerances = DEFAULT_TOLERANCES,
    ) -> UnitaryGeodesic:
        """
        Prepare the geodesic between two unitaries.

        Raises:
            NotUnitaryError: If either endpoint is not unitary within tolerances.unit
            DimensionMismatchError: If the shapes differ
            OrientationMismatchError: For real input with opposite determinant signs
        """
        start = np.asarray(start)
        end = np.asarray(end)
        if start.shape != end.shape:
            raise DimensionMismatchError(expected=start.shape, actual=end.shape, what="geodesic endpoints")
        require_unitary(start, tolerances.unit, "U0")
        require_unitary(end, tolerances.unit, "U1")

        field_tag = (
            FieldTag.COMPLEX
            if np.iscomplexobj(start) or np.iscomplexobj(end)
            else FieldTag.REAL
        )
        if field_tag == FieldTag.REAL:
            det_start = float(np.sign(np.linalg.det(start)))
            det_end = float(np.sign(np.linalg.det(end)))
            if det_start * det_end < 0:
                raise OrientationMismatchError(det_start=det_start, det_end=det_end)

        leg = _principal_leg(start, end)
        if leg is not None:
            return cls(start=start, end=end, field_tag=field_tag, legs=(leg,))

        generator = _detour_generator(start.shape[0])
        for epsilon in DETOUR_EPSILONS:
            waypoint = start @ scipy.linalg.expm(epsilon * generator)
            first = _principal_leg(start, waypoint)
            second = _principal_leg(waypoint, end)
            if first is not None and second is not None:
                logger.debug("geodesic detour through exp(%g K)", epsilon)
                return cls(
                    start=start,
                    end=end,
                    field_tag=field_tag,
                    legs=(first, second),
                    detour_epsilon=epsilon,
                )
        msg = "no detour avoids the branch cut"  # pragma: no cover
        raise RuntimeError(msg)  # pragma: no cover

    def __call__(self, t: float) -> NDArray[Any]:
        """Evaluate the path at t in [0, 1]."""
        if not 0.0 <= t <= 1.0:
            msg = f"t must lie in [0, 1], got {t}"
            raise ValueError(msg)
        if t == 0.0:
            return self.start.copy()
        if t == 1.0:
            return self.end.copy()
        if len(self.legs) == 1:
            value = self.legs[0].at(t)
        elif t <= 0.5:
            value = self.legs[0].at(2 * t)
        else:
            value = self.legs[1].at(2 * t - 1)
        if self.field_tag == FieldTag.REAL:
            return np.ascontiguousarray(value.real)
        return value


def unitary_geodesic(
    U0: NDArray[Any],
    U1: NDArray[Any],
    t: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> NDArray[Any]:
    """
    Point at parameter t on the geodesic from U0 to U1.

    For repeated evaluation along one path prefer ``UnitaryGeodesic.between``.
    """
    return UnitaryGeodesic.between(U0, U1, tolerances)(t)


# =============================================================================
# Completion and random unitaries
# =============================================================================


def orthonormal_completion(
    columns: NDArray[Any],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    *,
    positive: bool = False,
) -> NDArray[Any]:
    """
    Extend orthonormal columns to a square unitary.

    Args:
        columns: d x k matrix (or a length-d vector) with orthonormal columns
        tolerances: ``unit`` bounds |V*V - I|
        positive: For real input, flip the last added column so det = +1

    Returns:
        d x d unitary whose first k columns equal ``columns``

    Raises:
        NotOrthonormalError: If the columns are not orthonormal
    """
    matrix = np.asarray(columns)
    if matrix.ndim == 1:
        matrix = matrix[:, np.newaxis]
    size, count = matrix.shape
    if count > size:
        raise DimensionMismatchError(expected=(size, size), actual=matrix.shape, what="completion input")
    residual = unitarity_residual(matrix)
    if residual > tolerances.unit:
        raise NotOrthonormalError(residual=residual, tolerance=tolerances.unit)
    if count == size:
        return matrix.copy()

    complement = scipy.linalg.null_space(matrix.conj().T)
    completed = np.hstack([matrix, complement.astype(matrix.dtype, copy=False)])
    if positive and not np.iscomplexobj(completed) and np.linalg.det(completed) < 0:
        completed[:, -1] *= -1
    return completed


def haar_unitary(
    size: int,
    field_tag: FieldTag,
    rng: np.random.Generator,
) -> NDArray[Any]:
    """
    Draw a Haar-distributed unitary (COMPLEX) or orthogonal (REAL) matrix.

    QR of a Gaussian matrix with the phases of R's diagonal moved into Q.
    """
    if field_tag == FieldTag.COMPLEX:
        gaussian = (rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))) / np.sqrt(2)
    else:
        gaussian = rng.standard_normal((size, size))
    q, r = scipy.linalg.qr(gaussian)
    diagonal = np.diag(r)
    phases = diagonal / np.where(np.abs(diagonal) > 0, np.abs(diagonal), 1.0)
    return q * phases
