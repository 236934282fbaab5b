"""
Integration tests for the Report module.

Tests cover:
- JSON dicts for paths, connect results, experiments and errors
- CSV export of paths and eigensteps tables
- Console output of every printer
"""

import csv
import json
from io import StringIO
from pathlib import Path

import numpy as np
import pytest
from rich.console import Console

from funtf.eigensteps import EigenstepsTable
from funtf.engine import ConnectResult, FullSparkSummary, build_path_report
from funtf.errors import EndpointODError
from funtf.frames import Frame, FramePath, check_funtf, spark
from funtf.report import (
    connect_dict,
    dumps,
    error_dict,
    fullspark_dict,
    path_report_dict,
    print_eigensteps,
    print_frame,
    print_fullspark,
    print_funtf_report,
    print_path,
    print_spark,
    write_eigensteps_csv,
    write_path_csv,
)
from funtf.report.csv import path_header
from funtf.schema import FieldTag

pytestmark = pytest.mark.integration


@pytest.fixture
def mercedes_path(mercedes_benz: Frame) -> FramePath:
    """A short path that spins the Mercedes-Benz frame by a quarter turn."""
    times = np.linspace(0.0, 1.0, 5)
    frames = []
    for t in times:
        angle = np.pi / 2 * t
        rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        frames.append(Frame(rotation @ mercedes_benz.matrix))
    return FramePath.from_frames(times, frames, construction="spin", steps=4)


@pytest.fixture
def console_buffer() -> tuple[Console, StringIO]:
    """A console that writes into a buffer."""
    buffer = StringIO()
    return Console(file=buffer, width=120, force_terminal=False), buffer


# =============================================================================
# JSON
# =============================================================================


class TestJsonReports:
    """Tests for the JSON dict builders."""

    def test_path_report_dict(self, mercedes_path: FramePath, mercedes_benz: Frame) -> None:
        """Header, verdict, aggregates and samples."""
        report = build_path_report(mercedes_path, 1e-8, start=mercedes_benz)
        data = path_report_dict(report, mercedes_path)
        assert data["kind"] == "path"
        assert data["report_version"] == "1.0"
        assert data["passed"] is True
        assert data["construction"] == "spin"
        assert data["steps"] == 4
        assert data["sample_count"] == 5
        assert data["max_eigensteps_deviation"] is None
        assert len(data["samples"]["t"]) == 5
        assert data["samples"]["eigensteps_deviation"] == [None] * 5

    def test_samples_optional(self, mercedes_path: FramePath) -> None:
        """samples=False drops the per-sample series."""
        report = build_path_report(mercedes_path, 1e-8)
        assert "samples" not in path_report_dict(report, mercedes_path, samples=False)

    def test_connect_dict(self, mercedes_path: FramePath) -> None:
        """Route and permutations are added to the path report."""
        result = ConnectResult(
            path=mercedes_path,
            report=build_path_report(mercedes_path, 1e-8),
            route="nod",
            permutations={"F": (2, 0, 1)},
        )
        data = connect_dict(result)
        assert data["kind"] == "connect"
        assert data["route"] == "nod"
        assert data["permutations"] == {"F": [2, 0, 1]}
        assert "samples" not in data

    def test_fullspark_dict(self) -> None:
        """Counts, ratio and failures."""
        summary = FullSparkSummary(
            N=6, d=3, field_tag=FieldTag.REAL, trials=4, full_spark_count=3, failures=(2,)
        )
        data = fullspark_dict(summary)
        assert data["kind"] == "experiment-fullspark"
        assert data["field"] == "real"
        assert data["ratio"] == 0.75
        assert data["failures"] == [2]

    def test_error_dict(self) -> None:
        """Library errors carry their code; other exceptions their message."""
        body = error_dict(EndpointODError(endpoint="G"))["error"]
        assert body["error_type"] == "EndpointODError"
        assert body["code"] == 6002
        plain = error_dict(ValueError("bad"))["error"]
        assert plain == {"error_type": "ValueError", "message": "bad"}

    def test_dumps_is_strict(self) -> None:
        """numpy values serialize and infinities become null."""
        text = dumps({"a": np.float64(np.inf), "b": np.arange(3), "c": np.bool_(True)})
        assert json.loads(text) == {"a": None, "b": [0, 1, 2], "c": True}


# =============================================================================
# CSV
# =============================================================================


class TestCsvExport:
    """Tests for the CSV writers."""

    def test_real_path(self, mercedes_path: FramePath, temp_dir: Path) -> None:
        """One header row and one row per sample; entries column by column."""
        target = write_path_csv(mercedes_path, temp_dir / "out" / "path.csv")
        with target.open() as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["t", "funtf_residual", "od_margin", "f0_0", "f0_1", "f1_0", "f1_1", "f2_0", "f2_1"]
        assert len(rows) == 6
        assert float(rows[1][3]) == pytest.approx(0.0, abs=1e-15)
        assert float(rows[1][4]) == pytest.approx(1.0)

    def test_complex_header(self, complex_funtf: Frame) -> None:
        """Complex frames write real and imaginary parts."""
        path = FramePath.from_frames([0.0, 1.0], [complex_funtf] * 2, construction="c")
        header = path_header(path)
        assert header[:5] == ["t", "funtf_residual", "od_margin", "re_f0_0", "im_f0_0"]
        assert len(header) == 3 + 2 * 3 * 6

    def test_eigensteps_csv(self, mercedes_benz_rows: list[list[float]], temp_dir: Path) -> None:
        """Rows n = 0..N with lambda columns."""
        table = EigenstepsTable.from_rows(mercedes_benz_rows)
        target = write_eigensteps_csv(table, temp_dir / "table.csv")
        with target.open() as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["n", "lambda_1", "lambda_2"]
        assert rows[3] == ["2", "1.5", "0.5"]


# =============================================================================
# Console
# =============================================================================


class TestConsoleOutput:
    """Tests for the rich printers."""

    def test_print_path(self, mercedes_path: FramePath, console_buffer: tuple[Console, StringIO]) -> None:
        """Verdict panel, aggregates and a sample table."""
        console, buffer = console_buffer
        report = build_path_report(mercedes_path, 1e-8)
        print_path(console, mercedes_path, report)
        output = buffer.getvalue()
        assert "spin" in output
        assert "PASS" in output
        assert "Max FUNTF residual" in output
        assert "5 samples" in output

    def test_print_path_notes_when_verbose(
        self, mercedes_path: FramePath, console_buffer: tuple[Console, StringIO]
    ) -> None:
        """Notes are shown in verbose mode."""
        console, buffer = console_buffer
        path = mercedes_path.with_notes("quarter turn")
        print_path(console, path, build_path_report(path, 1e-8), verbose=True)
        assert "quarter turn" in buffer.getvalue()

    def test_print_frame_and_report(
        self, mercedes_benz: Frame, console_buffer: tuple[Console, StringIO]
    ) -> None:
        """Frame entries and the FUNTF verdict."""
        console, buffer = console_buffer
        print_frame(console, mercedes_benz)
        print_funtf_report(console, check_funtf(mercedes_benz))
        output = buffer.getvalue()
        assert "Frame" in output
        assert "PASS" in output

    def test_print_eigensteps(
        self, mercedes_benz_rows: list[list[float]], console_buffer: tuple[Console, StringIO]
    ) -> None:
        """The table is printed with its title."""
        console, buffer = console_buffer
        print_eigensteps(console, EigenstepsTable.from_rows(mercedes_benz_rows))
        assert "Eigensteps" in buffer.getvalue()

    def test_print_spark(self, mercedes_benz: Frame, console_buffer: tuple[Console, StringIO]) -> None:
        """Spark and the full spark bound."""
        console, buffer = console_buffer
        print_spark(console, spark(mercedes_benz), mercedes_benz.d)
        assert "spark 3 (full = 3)" in buffer.getvalue()

    def test_print_fullspark(self, console_buffer: tuple[Console, StringIO]) -> None:
        """A failed experiment lists its first failures."""
        console, buffer = console_buffer
        summary = FullSparkSummary(
            N=6, d=3, field_tag=FieldTag.COMPLEX, trials=4, full_spark_count=3, failures=(2,)
        )
        print_fullspark(console, summary)
        output = buffer.getvalue()
        assert "FAIL" in output
        assert "0.7500" in output
        assert "[2]" in output
