"""
FramePath: a sampled continuous path of frames with per-sample checks.

Every sample carries its FUNTF residual and OD margin; samples built against
a declared eigensteps value also carry the deviation of their actual
eigensteps from it (NaN elsewhere).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from funtf.eigensteps import of_frame
from funtf.errors import DimensionMismatchError
from funtf.frames.analysis import od_margin
from funtf.frames.frame import Frame, as_permutation, funtf_residual, permute

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from funtf.eigensteps import EigenstepsTable


@dataclass(frozen=True)
class PathMetadata:
    """
    Provenance of a path.

    Attributes:
        construction: Name of the generator (lift, fiber, swap, ...)
        steps: Requested step count
        notes: Free-form remarks (anchors, detours, permutations, junction gaps)
        stages: (name, t_start, t_end) for multi-stage paths
    """

    construction: str
    steps: int
    notes: tuple[str, ...] = ()
    stages: tuple[tuple[str, float, float], ...] = ()


@dataclass(frozen=True, eq=False)
class FramePath:
    """
    Samples (t_k, F_k) with t strictly increasing from 0 to 1.

    Build with :meth:`from_frames`, which computes the metrics.
    """

    times: NDArray[np.float64]
    frames: tuple[Frame, ...]
    funtf_residual: NDArray[np.float64]
    od_margin: NDArray[np.float64]
    eigensteps_deviation: NDArray[np.float64]
    metadata: PathMetadata = field(default_factory=lambda: PathMetadata("path", 0))

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=np.float64)
        if len(times) != len(self.frames) or len(times) < 2:
            msg = "a path needs at least two samples and one time per frame"
            raise ValueError(msg)
        if times[0] != 0.0 or times[-1] != 1.0 or np.any(np.diff(times) <= 0):
            msg = "path times must increase strictly from 0 to 1"
            raise ValueError(msg)
        first = self.frames[0]
        for frame in self.frames[1:]:
            if frame.shape != first.shape or frame.field_tag != first.field_tag:
                raise DimensionMismatchError(
                    expected=first.shape, actual=frame.shape, what="path sample"
                )
        object.__setattr__(self, "times", times)

    @classmethod
    def from_frames(
        cls,
        times: Sequence[float] | NDArray[np.float64],
        frames: Sequence[Frame],
        *,
        construction: str,
        steps: int | None = None,
        notes: Sequence[str] = (),
        stages: Sequence[tuple[str, float, float]] = (),
        declared: Sequence[EigenstepsTable | None] | None = None,
    ) -> FramePath:
        """Assemble a path and compute every per-sample metric."""
        frames = tuple(frames)
        deviations = np.full(len(frames), np.nan)
        if declared is not None:
            for k, (frame, table) in enumerate(zip(frames, declared, strict=True)):
                if table is not None:
                    deviations[k] = of_frame(frame).max_deviation(table)
        return cls(
            times=np.asarray(times, dtype=np.float64),
            frames=frames,
            funtf_residual=np.array([funtf_residual(f) for f in frames]),
            od_margin=np.array([od_margin(f) for f in frames]),
            eigensteps_deviation=deviations,
            metadata=PathMetadata(
                construction=construction,
                steps=len(frames) - 1 if steps is None else steps,
                notes=tuple(notes),
                stages=tuple(stages),
            ),
        )

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def start(self) -> Frame:
        """First sample."""
        return self.frames[0]

    @property
    def end(self) -> Frame:
        """Last sample."""
        return self.frames[-1]

    @property
    def max_funtf_residual(self) -> float:
        """Worst FUNTF residual over the samples."""
        return float(np.max(self.funtf_residual))

    @property
    def min_od_margin(self) -> float:
        """Smallest OD margin over the samples."""
        return float(np.min(self.od_margin))

    @property
    def max_eigensteps_deviation(self) -> float | None:
        """Worst declared-eigensteps deviation, None if nothing was declared."""
        declared = self.eigensteps_deviation[~np.isnan(self.eigensteps_deviation)]
        return float(np.max(declared)) if declared.size else None

    def max_step(self) -> float:
        """Largest max-norm distance between consecutive samples."""
        return max(a.distance(b) for a, b in zip(self.frames, self.frames[1:], strict=False))

    def with_notes(self, *notes: str) -> FramePath:
        """Copy with extra metadata notes."""
        metadata = PathMetadata(
            construction=self.metadata.construction,
            steps=self.metadata.steps,
            notes=self.metadata.notes + notes,
            stages=self.metadata.stages,
        )
        return FramePath(
            self.times,
            self.frames,
            self.funtf_residual,
            self.od_margin,
            self.eigensteps_deviation,
            metadata,
        )

    def reversed(self) -> FramePath:
        """The same samples traversed from end to start."""
        metadata = PathMetadata(
            construction=f"reversed {self.metadata.construction}",
            steps=self.metadata.steps,
            notes=self.metadata.notes,
            stages=tuple(
                (name, 1.0 - end, 1.0 - start) for name, start, end in reversed(self.metadata.stages)
            ),
        )
        return FramePath(
            times=(1.0 - self.times)[::-1].copy(),
            frames=self.frames[::-1],
            funtf_residual=self.funtf_residual[::-1].copy(),
            od_margin=self.od_margin[::-1].copy(),
            eigensteps_deviation=self.eigensteps_deviation[::-1].copy(),
            metadata=metadata,
        )

    def permuted(self, sigma: Sequence[int]) -> FramePath:
        """
        Apply one column permutation to every sample.

        Residuals and margins are permutation invariant; eigensteps deviations
        referred to the old order and are dropped.
        """
        order = as_permutation(sigma, self.start.N)
        return FramePath(
            times=self.times,
            frames=tuple(permute(frame, order) for frame in self.frames),
            funtf_residual=self.funtf_residual,
            od_margin=self.od_margin,
            eigensteps_deviation=np.full(len(self.frames), np.nan),
            metadata=PathMetadata(
                construction=self.metadata.construction,
                steps=self.metadata.steps,
                notes=(*self.metadata.notes, f"columns permuted by {list(order)}"),
                stages=self.metadata.stages,
            ),
        )

    @staticmethod
    def concatenate(paths: Sequence[FramePath], construction: str) -> FramePath:
        """
        Join paths end to start, giving each an equal share of [0, 1].

        The first sample of every later path duplicates the previous end and
        is dropped; the size of each such junction gap is recorded in notes.
        """
        if not paths:
            msg = "nothing to concatenate"
            raise ValueError(msg)
        if len(paths) == 1:
            return paths[0]
        share = 1.0 / len(paths)
        times: list[NDArray[np.float64]] = []
        frames: list[Frame] = []
        residuals: list[NDArray[np.float64]] = []
        margins: list[NDArray[np.float64]] = []
        deviations: list[NDArray[np.float64]] = []
        notes: list[str] = []
        stages: list[tuple[str, float, float]] = []

        for index, path in enumerate(paths):
            offset = index * share
            skip = 0 if index == 0 else 1
            if index > 0:
                gap = paths[index - 1].end.distance(path.start)
                notes.append(f"junction {index}: gap {gap:.3e}")
            times.append(offset + share * path.times[skip:])
            frames.extend(path.frames[skip:])
            residuals.append(path.funtf_residual[skip:])
            margins.append(path.od_margin[skip:])
            deviations.append(path.eigensteps_deviation[skip:])
            notes.extend(path.metadata.notes)
            stages.append((path.metadata.construction, offset, offset + share))

        joined_times = np.concatenate(times)
        joined_times[-1] = 1.0
        return FramePath(
            times=joined_times,
            frames=tuple(frames),
            funtf_residual=np.concatenate(residuals),
            od_margin=np.concatenate(margins),
            eigensteps_deviation=np.concatenate(deviations),
            metadata=PathMetadata(
                construction=construction,
                steps=sum(path.metadata.steps for path in paths),
                notes=tuple(notes),
                stages=tuple(stages),
            ),
        )
