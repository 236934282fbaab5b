"""
Eigensteps tables and the polytope they live in.

An eigensteps table records the spectra of the partial frame operators
f_1 f_1* + ... + f_n f_n*, one row per n = 0..N. Tables of FUNTFs are exactly
the points of a convex polytope cut out by four conditions:

    (i)   row 0 is zero
    (ii)  row N is constant N/d
    (iii) consecutive rows interlace
    (iv)  each row's sum exceeds the previous one by exactly 1

Design Decisions:
    - Rows are stored nonincreasing (largest first). Interlacing then reads
      lambda[n+1][i+1] <= lambda[n][i] <= lambda[n+1][i]; every report names
      this convention
    - Some entries are the same on every table (zeros below the diagonal for
      n < d, the value N/d in the top positions near n = N). Interiority
      ignores inequalities between two such forced entries
    - sample_interior is a sequential per-row sampler, not a uniform one
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from funtf.errors import DimensionMismatchError, EmptyInteriorError, InvalidTableError
from funtf.numerics import sorted_spectrum
from funtf.schema import (
    DEFAULT_TOLERANCES,
    EigenstepsDocument,
    Tolerances,
    load_eigensteps_document,
    write_document,
)

if TYPE_CHECKING:
    from pathlib import Path

    from numpy.typing import NDArray

    from funtf.frames.frame import Frame

INTERLACING_CONVENTION = (
    "rows nonincreasing; lambda[n+1][i+1] <= lambda[n][i] <= lambda[n+1][i]"
)
SAMPLE_MARGIN = 1e-6
MAX_SAMPLE_ATTEMPTS = 1000
JITTER_FLOOR = 1e-6


# =============================================================================
# Table
# =============================================================================


@dataclass(frozen=True, eq=False)
class EigenstepsTable:
    """
    An (N+1) x d table of partial spectra.

    Row n holds the nonincreasing spectrum of the frame operator of the first
    n frame vectors. The array is read-only.
    """

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        array = np.array(self.values, dtype=np.float64)
        if array.ndim != 2 or array.shape[0] < 2 or array.shape[1] < 1:
            raise DimensionMismatchError(
                expected=(-1, -1), actual=array.shape, what="eigensteps table"
            )
        array.setflags(write=False)
        object.__setattr__(self, "values", array)

    @classmethod
    def from_rows(cls, rows: Any) -> EigenstepsTable:
        """Build a table from any nested sequence of rows."""
        return cls(np.asarray(rows, dtype=np.float64))

    @property
    def N(self) -> int:
        """Number of frame vectors."""
        return int(self.values.shape[0] - 1)

    @property
    def d(self) -> int:
        """Ambient dimension."""
        return int(self.values.shape[1])

    @property
    def tightness(self) -> float:
        """The constant N/d of the last row."""
        return self.N / self.d

    def row(self, n: int) -> NDArray[np.float64]:
        """Row n (0 <= n <= N)."""
        return self.values[n]

    def max_deviation(self, other: EigenstepsTable) -> float:
        """Largest entrywise difference to another table of the same shape."""
        if self.values.shape != other.values.shape:
            raise DimensionMismatchError(
                expected=self.values.shape, actual=other.values.shape, what="eigensteps table"
            )
        return float(np.max(np.abs(self.values - other.values)))

    def to_document(self) -> EigenstepsDocument:
        """Convert to the JSON document model."""
        return EigenstepsDocument(N=self.N, d=self.d, rows=self.values.tolist())

    @classmethod
    def from_document(cls, document: EigenstepsDocument) -> EigenstepsTable:
        """Build from a validated JSON document."""
        return cls.from_rows(document.rows)

    def __repr__(self) -> str:
        return f"EigenstepsTable(N={self.N}, d={self.d})"


def load_eigensteps(path: Path | str) -> EigenstepsTable:
    """Read an Eigensteps JSON file."""
    return EigenstepsTable.from_document(load_eigensteps_document(path))


def dump_eigensteps(table: EigenstepsTable, path: Path | str) -> Path:
    """Write an Eigensteps JSON file."""
    return write_document(table.to_document(), path)


# =============================================================================
# Validation
# =============================================================================


@dataclass(frozen=True)
class Violation:
    """One failed condition, located by row n and position i (0-based)."""

    condition: str
    n: int
    i: int | None
    magnitude: float

    def describe(self) -> str:
        """Short human-readable form."""
        where = f"n={self.n}" if self.i is None else f"n={self.n}, i={self.i}"
        return f"{self.condition} ({where}, by {self.magnitude:.3e})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate: ok flag plus every violation found."""

    ok: bool
    violations: tuple[Violation, ...] = ()
    convention: str = INTERLACING_CONVENTION
    tolerance: float = 0.0

    @property
    def conditions(self) -> set[str]:
        """Names of the violated conditions."""
        return {violation.condition for violation in self.violations}


def validate(
    table: EigenstepsTable,
    tol: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ValidationReport:
    """
    Check the four defining conditions and nonincreasing rows.

    Args:
        table: Table to check
        tol: Absolute slack per condition (defaults to tolerances.validation)
        tolerances: Tolerance set

    Returns:
        ValidationReport; violations carry condition name, row, position and size
    """
    tol = tolerances.validation if tol is None else tol
    values = table.values
    N, d = table.N, table.d
    violations: list[Violation] = []

    for i in range(d):
        if abs(values[0, i]) > tol:
            violations.append(Violation("zero_row", 0, i, abs(values[0, i])))
        excess = abs(values[N, i] - N / d)
        if excess > tol:
            violations.append(Violation("final_row", N, i, excess))

    for n in range(N + 1):
        for i in range(d - 1):
            rise = values[n, i + 1] - values[n, i]
            if rise > tol:
                violations.append(Violation("nonincreasing", n, i, rise))

    for n in range(N):
        current, following = values[n], values[n + 1]
        for i in range(d):
            drop = current[i] - following[i]
            if drop > tol:
                violations.append(Violation("interlacing", n, i, drop))
            if i + 1 < d:
                overshoot = following[i + 1] - current[i]
                if overshoot > tol:
                    violations.append(Violation("interlacing", n, i + 1, overshoot))
        trace_gap = abs(1.0 + current.sum() - following.sum())
        if trace_gap > tol:
            violations.append(Violation("trace", n, None, trace_gap))

    return ValidationReport(
        ok=not violations, violations=tuple(violations), tolerance=tol
    )


def require_valid(
    table: EigenstepsTable,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> None:
    """Raise InvalidTableError unless the table validates."""
    report = validate(table, tolerances=tolerances)
    if not report.ok:
        raise InvalidTableError(violations=[v.describe() for v in report.violations])


# =============================================================================
# Interior and boundary
# =============================================================================


def forced_entries(N: int, d: int) -> NDArray[np.float64]:
    """
    Entries that take the same value on every valid table, NaN elsewhere.

    Row 0 is zero, row N is N/d, positions i >= n are zero, and positions
    i < d - (N - n) equal N/d.
    """
    forced = np.full((N + 1, d), np.nan)
    tight = N / d
    for n in range(N + 1):
        for i in range(d):
            if n == 0 or i >= n:
                forced[n, i] = 0.0
            elif n == N or i < d - (N - n):
                forced[n, i] = tight
    return forced


def _free_gaps(table: EigenstepsTable) -> list[float]:
    """Slack of every inequality that is not forced to be an equality."""
    values = table.values
    forced = forced_entries(table.N, table.d)
    gaps: list[float] = []

    def add(low: tuple[int, int], high: tuple[int, int]) -> None:
        a, b = forced[low], forced[high]
        if not (np.isnan(a) or np.isnan(b)) and a == b:
            return
        gaps.append(float(values[high] - values[low]))

    for n in range(1, table.N + 1):
        for i in range(table.d):
            add((n - 1, i), (n, i))
            if i >= 1:
                add((n, i), (n - 1, i - 1))
            if i + 1 < table.d:
                add((n, i + 1), (n, i))
    return gaps


def is_interior(
    table: EigenstepsTable,
    margin: float = 1e-9,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """
    True iff every non-forced inequality holds with slack above ``margin``.

    Raises:
        InvalidTableError: If the table does not validate
    """
    require_valid(table, tolerances)
    if table.N < table.d + 2:
        return False
    return all(gap > margin for gap in _free_gaps(table))


def is_boundary_consistent_with_od(
    table: EigenstepsTable,
    margin: float = 1e-9,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """
    Necessary condition for a table to belong to an OD frame.

    OD frames always have boundary eigensteps, so an interior table rules
    them out. The converse does not hold.
    """
    return not is_interior(table, margin, tolerances)


# =============================================================================
# Frames to tables
# =============================================================================


def of_frame(frame: Frame | NDArray[Any]) -> EigenstepsTable:
    """
    Eigensteps of a frame.

    Row k is the nonincreasing spectrum of f_1 f_1* + ... + f_k f_k*.
    Row N equals N/d only when the frame is tight.
    """
    matrix = np.asarray(getattr(frame, "matrix", frame))
    d, N = matrix.shape
    rows = np.zeros((N + 1, d))
    partial = np.zeros((d, d), dtype=matrix.dtype)
    for k in range(N):
        column = matrix[:, k]
        partial = partial + np.outer(column, column.conj())
        rows[k + 1] = sorted_spectrum(partial)
    return EigenstepsTable(rows)


# =============================================================================
# Paths and sampling
# =============================================================================


@dataclass(frozen=True)
class EigenstepsPath:
    """The affine path t -> (1 - t) start + t end inside the polytope."""

    start: EigenstepsTable
    end: EigenstepsTable
    _delta: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_delta", self.end.values - self.start.values)

    def at(self, t: float) -> EigenstepsTable:
        """Table at parameter t; t = 0 and t = 1 return the endpoints exactly."""
        if t == 0.0:
            return self.start
        if t == 1.0:
            return self.end
        return EigenstepsTable((1.0 - t) * self.start.values + t * self.end.values)

    @property
    def is_constant(self) -> bool:
        """True when start and end coincide."""
        return not np.any(self._delta)


def linear_path(
    start: EigenstepsTable,
    end: EigenstepsTable,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> EigenstepsPath:
    """
    Straight segment between two valid tables.

    Raises:
        DimensionMismatchError: If (N, d) differ
        InvalidTableError: If either table is invalid
    """
    if (start.N, start.d) != (end.N, end.d):
        raise DimensionMismatchError(
            expected=(start.N, start.d), actual=(end.N, end.d), what="path endpoints"
        )
    require_valid(start, tolerances)
    require_valid(end, tolerances)
    return EigenstepsPath(start, end)


def _sample_rows(N: int, d: int, rng: np.random.Generator) -> EigenstepsTable | None:
    tight = N / d
    values = np.zeros((N + 1, d))
    values[N] = tight
    for n in range(1, N):
        previous = values[n - 1]
        first_free = max(0, d - (N - n))
        row = np.zeros(d)
        row[:first_free] = tight
        free = np.arange(first_free, min(n, d))
        if free.size:
            low = previous[free]
            high = np.array([tight if i == 0 else min(tight, previous[i - 1]) for i in free])
            width = high - low
            if np.any(width <= 0):
                return None
            ratio = (n - first_free * tight - low.sum()) / width.sum()
            if not 0.0 < ratio < 1.0:
                return None
            # zero width-weighted mean keeps the row sum fixed
            jitter = rng.uniform(-1.0, 1.0, free.size)
            jitter -= (jitter @ width) / width.sum()
            spread = np.max(np.abs(jitter))
            # a single free entry is pinned by the trace
            if free.size > 1 and spread > JITTER_FLOOR:
                jitter *= rng.uniform(0.0, 1.0) * 0.5 * min(ratio, 1.0 - ratio) / spread
            row[free] = low + (ratio + jitter) * width
        values[n] = row
    return EigenstepsTable(values)


def sample_interior(
    N: int,
    d: int,
    rng: np.random.Generator | int | None = None,
) -> EigenstepsTable:
    """
    Draw an interior table row by row.

    Each free entry is placed inside the box its interlacing neighbours in
    the previous row allow, and the row is shifted onto its trace
    hyperplane. Rejected draws are retried.

    Args:
        N: Number of frame vectors
        d: Dimension
        rng: Generator or seed; the same seed reproduces the same table

    Raises:
        EmptyInteriorError: If N < d + 2
    """
    if N < d + 2:
        raise EmptyInteriorError(N=N, d=d)
    generator = np.random.default_rng(rng)
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        table = _sample_rows(N, d, generator)
        if table is not None and validate(table).ok and is_interior(table, SAMPLE_MARGIN):
            return table
    msg = f"no interior sample for N={N}, d={d} after {MAX_SAMPLE_ATTEMPTS} attempts"  # pragma: no cover
    raise RuntimeError(msg)  # pragma: no cover


@functools.cache
def interior_anchor(N: int, d: int) -> EigenstepsTable:
    """The fixed interior table used to reach boundary tables: seed 0."""
    return sample_interior(N, d, np.random.default_rng(0))
