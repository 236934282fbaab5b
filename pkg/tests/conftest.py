"""
Pytest configuration and fixtures for funtf tests.

This module provides shared frames and tables used across unit,
integration and property tests.
"""

import tempfile
from pathlib import Path
from typing import Generator

import numpy as np
import pytest

from funtf.engine import random_funtf
from funtf.frames import Frame
from funtf.schema import FieldTag

SQRT3_HALF = np.sqrt(3.0) / 2.0


def rotation2(angle: float) -> np.ndarray:
    """Planar rotation matrix."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def mercedes_benz() -> Frame:
    """Three unit vectors in R^2 at 120 degrees: the smallest real FUNTF with N > d."""
    return Frame(
        np.array(
            [
                [0.0, -SQRT3_HALF, SQRT3_HALF],
                [1.0, -0.5, -0.5],
            ]
        )
    )


@pytest.fixture
def mercedes_benz_rows() -> list[list[float]]:
    """Eigensteps of the Mercedes-Benz frame."""
    return [[0.0, 0.0], [1.0, 0.0], [1.5, 0.5], [1.5, 1.5]]


@pytest.fixture
def two_onb_frame() -> Frame:
    """Standard basis of R^3 followed by a rotated orthonormal basis."""
    c, s = np.cos(0.4), np.sin(0.4)
    about_z = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    c, s = np.cos(0.7), np.sin(0.7)
    about_x = np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    return Frame(np.hstack([np.eye(3), about_z @ about_x]))


@pytest.fixture
def simplex_onb_frame(mercedes_benz: Frame) -> Frame:
    """Mercedes-Benz frame followed by a rotated orthonormal basis of R^2."""
    return Frame(np.hstack([mercedes_benz.matrix, rotation2(0.3)]))


@pytest.fixture
def complex_funtf() -> Frame:
    """Seeded random complex FUNTF with interior eigensteps, N=6, d=3."""
    return random_funtf(6, 3, FieldTag.COMPLEX, rng=11)


@pytest.fixture
def other_complex_funtf() -> Frame:
    """A second seeded complex FUNTF of the same shape."""
    return random_funtf(6, 3, FieldTag.COMPLEX, rng=29)


@pytest.fixture
def real_funtf() -> Frame:
    """Seeded random real FUNTF with interior eigensteps, N=6, d=3."""
    return random_funtf(6, 3, FieldTag.REAL, rng=3)
