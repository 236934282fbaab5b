"""
Naimark complements and the canonical simplex.

For a FUNTF F of N vectors in dimension d, a complement G of N vectors in
dimension N - d satisfies (d/N) F*F + ((N-d)/N) G*G = I_N. Complements share
equal-norm, OD and full-spark structure with F.
"""

from __future__ import annotations

import numpy as np

from funtf.errors import NoComplementError
from funtf.frames.frame import DEFAULT_FUNTF_TOLERANCE, Frame, require_funtf
from funtf.numerics import hermitian_eig
from funtf.schema import FieldTag


def naimark_complement(frame: Frame, tol: float = DEFAULT_FUNTF_TOLERANCE) -> Frame:
    """
    A Naimark complement of a FUNTF.

    The projection I_N - P*P, with P = sqrt(d/N) F the Parseval scaling, has
    N - d unit eigenvalues; its eigenvectors give the Parseval complement,
    which is then scaled to unit columns. The complement is unique only up to
    a left unitary; this returns the eigendecomposition's representative.

    Raises:
        NoComplementError: If N = d
        NotFUNTFError: If the frame is not a FUNTF within tol
    """
    d, N = frame.shape
    if N <= d:
        raise NoComplementError(N=N, d=d)
    require_funtf(frame, tol)

    parseval = np.sqrt(d / N) * frame.matrix
    projection = np.eye(N) - parseval.conj().T @ parseval
    decomposition = hermitian_eig((projection + projection.conj().T) / 2)
    directions = decomposition.eigenvectors[:, : N - d]
    complement = np.sqrt(N / (N - d)) * directions.conj().T
    complement = complement / np.linalg.norm(complement, axis=0)
    return Frame(complement, frame.field_tag)


def canonical_simplex(size: int, field_tag: FieldTag = FieldTag.REAL) -> Frame:
    """
    The fixed simplex of ``size`` unit vectors in dimension size - 1.

    It is the Naimark complement of the all-ones 1 x size frame.
    """
    if size < 2:
        raise NoComplementError(N=size, d=1)
    ones = Frame(np.ones((1, size)), field_tag)
    return naimark_complement(ones)
