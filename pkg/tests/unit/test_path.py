"""
Unit tests for FramePath.

Tests cover:
- Construction checks on times and sample shapes
- Per-sample metrics computed by from_frames
- Concatenation, reversal and permutation
"""

import numpy as np
import pytest

from funtf.eigensteps import of_frame
from funtf.errors import DimensionMismatchError
from funtf.frames import Frame, FramePath, permute


def constant_path(frame: Frame, samples: int = 3, construction: str = "constant") -> FramePath:
    """A path that never moves."""
    return FramePath.from_frames(
        np.linspace(0.0, 1.0, samples), [frame] * samples, construction=construction
    )


class TestConstruction:
    """Tests for FramePath validation."""

    def test_metrics(self, mercedes_benz: Frame) -> None:
        """Residuals and margins are filled per sample."""
        path = constant_path(mercedes_benz)
        assert len(path) == 3
        assert path.max_funtf_residual < 1e-12
        assert path.min_od_margin == pytest.approx(0.5)
        assert path.max_eigensteps_deviation is None
        assert path.metadata.steps == 2

    def test_declared_tables(self, mercedes_benz: Frame) -> None:
        """Declared eigensteps produce deviations."""
        table = of_frame(mercedes_benz)
        path = FramePath.from_frames(
            [0.0, 1.0], [mercedes_benz] * 2, construction="c", declared=[table, None]
        )
        assert path.eigensteps_deviation[0] == pytest.approx(0.0)
        assert np.isnan(path.eigensteps_deviation[1])
        assert path.max_eigensteps_deviation == pytest.approx(0.0)

    def test_times_must_span_unit_interval(self, mercedes_benz: Frame) -> None:
        """Times start at 0 and end at 1."""
        with pytest.raises(ValueError):
            FramePath.from_frames([0.0, 0.5], [mercedes_benz] * 2, construction="c")

    def test_times_strictly_increasing(self, mercedes_benz: Frame) -> None:
        """Repeated times are rejected."""
        with pytest.raises(ValueError):
            FramePath.from_frames([0.0, 0.0, 1.0], [mercedes_benz] * 3, construction="c")

    def test_single_sample(self, mercedes_benz: Frame) -> None:
        """A path has at least two samples."""
        with pytest.raises(ValueError):
            FramePath.from_frames([0.0], [mercedes_benz], construction="c")

    def test_shape_mismatch(self, mercedes_benz: Frame) -> None:
        """Every sample has the shape of the first."""
        with pytest.raises(DimensionMismatchError):
            FramePath.from_frames(
                [0.0, 1.0], [mercedes_benz, Frame(np.eye(2))], construction="c"
            )


class TestOperations:
    """Tests for concatenate, reversed, permuted and with_notes."""

    def test_concatenate(self, mercedes_benz: Frame) -> None:
        """Shares of [0, 1] are equal and junction samples are dropped."""
        first = constant_path(mercedes_benz, 3, "a")
        second = constant_path(mercedes_benz, 5, "b")
        joined = FramePath.concatenate([first, second], "joined")
        assert len(joined) == 3 + 4
        np.testing.assert_allclose(joined.times, [0.0, 0.25, 0.5, 0.625, 0.75, 0.875, 1.0])
        assert joined.metadata.stages == (("a", 0.0, 0.5), ("b", 0.5, 1.0))
        assert "junction 1: gap 0.000e+00" in joined.metadata.notes
        assert joined.metadata.steps == 2 + 4

    def test_concatenate_single(self, mercedes_benz: Frame) -> None:
        """One path is returned as is."""
        path = constant_path(mercedes_benz)
        assert FramePath.concatenate([path], "x") is path

    def test_concatenate_empty(self) -> None:
        """Nothing to join is an error."""
        with pytest.raises(ValueError):
            FramePath.concatenate([], "x")

    def test_reversed(self, mercedes_benz: Frame) -> None:
        """Reversal swaps the endpoints and mirrors stages."""
        moved = mercedes_benz.with_columns([0], -mercedes_benz.matrix[:, [0]])
        path = FramePath.concatenate(
            [
                FramePath.from_frames([0.0, 1.0], [mercedes_benz, moved], construction="a"),
                constant_path(moved, 2, "b"),
            ],
            "both",
        )
        back = path.reversed()
        assert back.start.distance(moved) == 0.0
        assert back.end.distance(mercedes_benz) == 0.0
        assert back.metadata.stages == (("b", 0.0, 0.5), ("a", 0.5, 1.0))
        assert back.metadata.construction == "reversed both"

    def test_permuted(self, mercedes_benz: Frame) -> None:
        """Every sample is permuted and a note records it."""
        path = constant_path(mercedes_benz).permuted((1, 2, 0))
        expected = permute(mercedes_benz, (1, 2, 0))
        assert all(frame.distance(expected) == 0.0 for frame in path.frames)
        assert path.metadata.notes[-1] == "columns permuted by [1, 2, 0]"

    def test_with_notes(self, mercedes_benz: Frame) -> None:
        """Notes are appended."""
        path = constant_path(mercedes_benz).with_notes("one", "two")
        assert path.metadata.notes == ("one", "two")

    def test_max_step(self, mercedes_benz: Frame) -> None:
        """max_step measures the largest jump between samples."""
        assert constant_path(mercedes_benz).max_step() == 0.0
