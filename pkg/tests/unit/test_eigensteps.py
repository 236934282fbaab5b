"""
Unit tests for eigensteps tables.

Tests cover:
- Table construction and shape checks
- validate with each defining condition violated
- Eigensteps of concrete frames
- Interior detection, forced entries and interior sampling
- Linear paths between tables and file round trips
"""

from pathlib import Path

import numpy as np
import pytest

from funtf.eigensteps import (
    EigenstepsTable,
    dump_eigensteps,
    forced_entries,
    interior_anchor,
    is_boundary_consistent_with_od,
    is_interior,
    linear_path,
    load_eigensteps,
    of_frame,
    require_valid,
    sample_interior,
    validate,
)
from funtf.errors import DimensionMismatchError, EmptyInteriorError, InvalidTableError
from funtf.frames import Frame

# =============================================================================
# Table
# =============================================================================


class TestEigenstepsTable:
    """Tests for the table type."""

    def test_shape(self, mercedes_benz_rows: list[list[float]]) -> None:
        """N and d come from the array shape."""
        table = EigenstepsTable.from_rows(mercedes_benz_rows)
        assert table.N == 3
        assert table.d == 2
        assert table.tightness == pytest.approx(1.5)

    def test_read_only(self, mercedes_benz_rows: list[list[float]]) -> None:
        """The value array cannot be modified."""
        table = EigenstepsTable.from_rows(mercedes_benz_rows)
        with pytest.raises(ValueError):
            table.values[0, 0] = 1.0

    def test_rejects_single_row(self) -> None:
        """A table needs at least rows 0 and N."""
        with pytest.raises(DimensionMismatchError):
            EigenstepsTable.from_rows([[0.0, 0.0]])

    def test_max_deviation_shape(self, mercedes_benz_rows: list[list[float]]) -> None:
        """Deviation between tables of different shape is an error."""
        table = EigenstepsTable.from_rows(mercedes_benz_rows)
        with pytest.raises(DimensionMismatchError):
            table.max_deviation(EigenstepsTable.from_rows([[0.0], [1.0]]))


# =============================================================================
# Validation
# =============================================================================


class TestValidate:
    """Tests for validate and require_valid."""

    def test_valid_table(self, mercedes_benz_rows: list[list[float]]) -> None:
        """A genuine eigensteps table passes."""
        report = validate(EigenstepsTable.from_rows(mercedes_benz_rows))
        assert report.ok
        assert report.violations == ()

    def test_zero_row(self) -> None:
        """Row 0 must vanish."""
        table = EigenstepsTable.from_rows([[0.5, 0.0], [1.0, 0.0], [1.5, 0.5], [1.5, 1.5]])
        assert "zero_row" in validate(table).conditions

    def test_final_row(self) -> None:
        """Row N must be constant N/d."""
        table = EigenstepsTable.from_rows([[0.0, 0.0], [1.0, 0.0], [1.5, 0.5], [2.0, 1.0]])
        assert "final_row" in validate(table).conditions

    def test_interlacing(self) -> None:
        """A row that jumps past its neighbours breaks interlacing."""
        table = EigenstepsTable.from_rows([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.5, 1.5]])
        report = validate(table)
        assert "interlacing" in report.conditions

    def test_trace(self) -> None:
        """Each row adds exactly one to the trace."""
        table = EigenstepsTable.from_rows([[0.0, 0.0], [1.0, 0.0], [1.2, 0.5], [1.5, 1.5]])
        assert "trace" in validate(table).conditions

    def test_nonincreasing(self) -> None:
        """Rows are listed largest first."""
        table = EigenstepsTable.from_rows([[0.0, 0.0], [0.0, 1.0], [1.5, 0.5], [1.5, 1.5]])
        assert "nonincreasing" in validate(table).conditions

    def test_violation_describe(self) -> None:
        """Violations carry a readable location."""
        table = EigenstepsTable.from_rows([[0.5, 0.0], [1.0, 0.0], [1.5, 0.5], [1.5, 1.5]])
        described = [v.describe() for v in validate(table).violations]
        assert any(text.startswith("zero_row (n=0, i=0") for text in described)

    def test_tolerance_accepts_small_noise(self, mercedes_benz_rows: list[list[float]]) -> None:
        """Slack below tol is accepted."""
        rows = np.array(mercedes_benz_rows)
        rows[2] += 1e-12
        assert validate(EigenstepsTable(rows)).ok

    def test_require_valid_raises(self) -> None:
        """require_valid turns a failed report into InvalidTableError."""
        table = EigenstepsTable.from_rows([[0.0, 0.0], [1.0, 0.0], [1.2, 0.5], [1.5, 1.5]])
        with pytest.raises(InvalidTableError) as exc_info:
            require_valid(table)
        assert exc_info.value.violations


# =============================================================================
# Frames to tables
# =============================================================================


class TestOfFrame:
    """Tests for of_frame."""

    def test_mercedes_benz(
        self, mercedes_benz: Frame, mercedes_benz_rows: list[list[float]]
    ) -> None:
        """The Mercedes-Benz frame has the known table."""
        table = of_frame(mercedes_benz)
        np.testing.assert_allclose(table.values, mercedes_benz_rows, atol=1e-12)

    def test_orthonormal_basis(self) -> None:
        """An orthonormal basis fills one eigenvalue per step."""
        table = of_frame(Frame(np.eye(3)))
        expected = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 1, 1]]
        np.testing.assert_allclose(table.values, expected, atol=1e-12)

    def test_funtf_tables_validate(self, complex_funtf: Frame, real_funtf: Frame) -> None:
        """Eigensteps of a FUNTF always validate."""
        assert validate(of_frame(complex_funtf)).ok
        assert validate(of_frame(real_funtf)).ok

    def test_accepts_plain_arrays(self, mercedes_benz: Frame) -> None:
        """Arrays work as well as frames."""
        np.testing.assert_allclose(
            of_frame(mercedes_benz.matrix).values, of_frame(mercedes_benz).values
        )


# =============================================================================
# Interior and boundary
# =============================================================================


class TestInterior:
    """Tests for interior detection and forced entries."""

    def test_forced_entries(self) -> None:
        """Zeros above the staircase, N/d on the last row and the saturated corner."""
        forced = forced_entries(5, 3)
        assert forced[0].tolist() == [0.0, 0.0, 0.0]
        np.testing.assert_allclose(forced[5], [5 / 3] * 3)
        assert forced[1, 1] == 0.0
        assert forced[4, 0] == pytest.approx(5 / 3)
        assert np.isnan(forced[2, 0])

    def test_small_n_is_never_interior(self, mercedes_benz: Frame) -> None:
        """N < d + 2 has empty interior."""
        assert not is_interior(of_frame(mercedes_benz))

    def test_two_onbs_are_boundary(self, two_onb_frame: Frame) -> None:
        """The union of two orthonormal bases touches the boundary."""
        table = of_frame(two_onb_frame)
        assert not is_interior(table)
        assert is_boundary_consistent_with_od(table)

    def test_random_funtf_is_interior(self, complex_funtf: Frame) -> None:
        """Generated FUNTFs have interior eigensteps."""
        assert is_interior(of_frame(complex_funtf))

    def test_invalid_table_raises(self) -> None:
        """Interior detection needs a valid table."""
        table = EigenstepsTable.from_rows([[0.0, 0.0], [1.0, 0.0], [1.2, 0.5], [1.5, 1.5]])
        with pytest.raises(InvalidTableError):
            is_interior(table)


class TestSampleInterior:
    """Tests for sample_interior and interior_anchor."""

    @pytest.mark.parametrize(("N", "d"), [(4, 2), (5, 2), (5, 3), (7, 3), (8, 4)])
    def test_interior_and_valid(self, N: int, d: int) -> None:
        """Samples are valid interior tables of the requested shape."""
        table = sample_interior(N, d, rng=np.random.default_rng(N * 10 + d))
        assert (table.N, table.d) == (N, d)
        assert validate(table).ok
        assert is_interior(table)

    def test_seed_reproducible(self) -> None:
        """The same seed gives the same table."""
        a = sample_interior(6, 3, rng=5)
        b = sample_interior(6, 3, rng=5)
        np.testing.assert_array_equal(a.values, b.values)

    def test_empty_interior(self) -> None:
        """N < d + 2 cannot be sampled."""
        with pytest.raises(EmptyInteriorError):
            sample_interior(4, 3)

    def test_anchor_is_cached(self) -> None:
        """The anchor for one (N, d) is a single fixed table."""
        assert interior_anchor(6, 3) is interior_anchor(6, 3)
        assert is_interior(interior_anchor(6, 3))

    @pytest.mark.parametrize(("N", "d"), [(4, 2), (5, 2), (5, 3), (6, 2), (6, 3), (7, 4), (8, 3), (8, 5)])
    def test_anchor_every_shape(self, N: int, d: int) -> None:
        """The seed-0 anchor exists for every shape with a nonempty interior."""
        anchor = interior_anchor(N, d)
        assert validate(anchor).ok
        assert is_interior(anchor)

    @pytest.mark.parametrize(("N", "d"), [(4, 2), (5, 2), (5, 3), (6, 2), (6, 3), (7, 4), (8, 3), (8, 5)])
    def test_many_seeds(self, N: int, d: int) -> None:
        """Rows with a single free entry keep their trace for every seed."""
        for seed in range(200):
            table = sample_interior(N, d, rng=seed)
            np.testing.assert_allclose(table.values.sum(axis=1), np.arange(N + 1), atol=1e-9)
            assert is_interior(table)


# =============================================================================
# Paths and files
# =============================================================================


class TestLinearPath:
    """Tests for linear_path."""

    def test_endpoints_and_midpoint(self) -> None:
        """Endpoints are exact and the midpoint is valid."""
        start = sample_interior(6, 3, rng=1)
        end = sample_interior(6, 3, rng=2)
        path = linear_path(start, end)
        assert path.at(0.0) is start
        assert path.at(1.0) is end
        middle = path.at(0.5)
        np.testing.assert_allclose(middle.values, (start.values + end.values) / 2)
        assert validate(middle).ok
        assert not path.is_constant

    def test_shape_mismatch(self) -> None:
        """Both tables need the same (N, d)."""
        with pytest.raises(DimensionMismatchError):
            linear_path(sample_interior(6, 3, rng=1), sample_interior(7, 3, rng=1))


class TestEigenstepsFiles:
    """Tests for the JSON round trip."""

    def test_dump_and_load(self, temp_dir: Path, mercedes_benz_rows: list[list[float]]) -> None:
        """A dumped table loads back unchanged."""
        table = EigenstepsTable.from_rows(mercedes_benz_rows)
        path = dump_eigensteps(table, temp_dir / "table.json")
        loaded = load_eigensteps(path)
        np.testing.assert_array_equal(loaded.values, table.values)
