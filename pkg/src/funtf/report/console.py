"""
Console output for funtf.

Rich tables and panels for frames, eigensteps, paths and experiment
summaries. Every function takes the Console to print to so the CLI and the
tests can capture output.

Design Principles:
    - Verdict first: a header panel with a status icon, details below
    - Long paths are thinned to a handful of rows unless verbose
    - Numbers in scientific notation where they are residuals or margins
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

if TYPE_CHECKING:
    from rich.console import Console

    from funtf.eigensteps import EigenstepsTable
    from funtf.engine import FullSparkSummary, PathReport
    from funtf.frames.analysis import SparkReport
    from funtf.frames.frame import Frame, FuntfReport
    from funtf.frames.path import FramePath

ICON_PASS = "[green]✓[/green]"
ICON_FAIL = "[red]✗[/red]"

PREVIEW_ROWS = 9


def _number(value: float | None) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "—"
    if math.isinf(value):
        return "inf"
    return f"{value:.3e}"


def _entry(value: complex) -> str:
    if abs(value.imag) <= 1e-15:
        return f"{value.real: .6f}"
    return f"{value.real: .4f}{value.imag:+.4f}i"


def print_header(console: Console, title: str, passed: bool, subtitle: str = "") -> None:
    """Panel with a title and a pass/fail icon."""
    header = Text()
    header.append(f" {title} ", style="bold")
    header.append("│ ", style="dim")
    header.append("PASS" if passed else "FAIL", style="bold green" if passed else "bold red")
    if subtitle:
        header.append(" │ ", style="dim")
        header.append(subtitle, style="cyan")
    console.print(Panel(header, expand=False))


def print_frame(console: Console, frame: Frame, title: str = "Frame") -> None:
    """The synthesis matrix, one row per coordinate."""
    table = Table(title=f"{title} ({frame.field_tag.value}, d={frame.d}, N={frame.N})", header_style="bold")
    table.add_column("", style="dim", justify="right")
    for n in range(frame.N):
        table.add_column(f"f{n}", justify="right")
    for i in range(frame.d):
        table.add_row(str(i), *(_entry(complex(frame.matrix[i, n])) for n in range(frame.N)))
    console.print(table)


def print_funtf_report(console: Console, report: FuntfReport) -> None:
    """Unit-norm and tightness residuals with the verdict."""
    print_header(console, "FUNTF check", report.ok)
    stats = Table(show_header=False, box=None, padding=(0, 2))
    stats.add_column("Metric", style="dim")
    stats.add_column("Value")
    stats.add_row("Unit-norm residual", _number(report.unit_norm_resid))
    stats.add_row("Tightness residual", _number(report.tightness_resid))
    stats.add_row("Tolerance", _number(report.tolerance))
    console.print(stats)


def print_eigensteps(console: Console, table: EigenstepsTable, title: str = "Eigensteps") -> None:
    """One row per n, one column per eigenvalue."""
    grid = Table(title=f"{title} (N={table.N}, d={table.d})", header_style="bold")
    grid.add_column("n", style="dim", justify="right")
    for i in range(table.d):
        grid.add_column(f"λ{i + 1}", justify="right")
    for n in range(table.N + 1):
        grid.add_row(str(n), *(f"{value:.6f}" for value in table.row(n)))
    console.print(grid)


def print_spark(console: Console, report: SparkReport, d: int) -> None:
    """Spark, witness and the full spark verdict."""
    print_header(console, "Spark", report.full_spark, f"spark {report.spark} (full = {d + 1})")
    if report.witness:
        console.print(f"  [dim]Witness:[/dim] {list(report.witness)}")


def _preview_indices(count: int, verbose: bool) -> list[int]:
    if verbose or count <= PREVIEW_ROWS:
        return list(range(count))
    return sorted({int(k) for k in np.linspace(0, count - 1, PREVIEW_ROWS)})


def print_path(
    console: Console,
    path: FramePath,
    report: PathReport,
    verbose: bool = False,
) -> None:
    """Verdict, aggregates and a per-sample table (thinned unless verbose)."""
    print_header(console, path.metadata.construction, report.passed, f"{len(path)} samples")

    stats = Table(show_header=False, box=None, padding=(0, 2))
    stats.add_column("Metric", style="dim")
    stats.add_column("Value")
    stats.add_row("Max FUNTF residual", _number(report.max_funtf_residual))
    stats.add_row("Min OD margin", _number(report.min_od_margin))
    stats.add_row("Max eigensteps deviation", _number(report.max_eigensteps_deviation))
    stats.add_row("Start deviation", _number(report.start_deviation))
    stats.add_row("End deviation", _number(report.end_deviation))
    stats.add_row("Tolerance", _number(report.tol))
    console.print(stats)

    samples = Table(header_style="bold", show_lines=False)
    samples.add_column("#", style="dim", justify="right")
    samples.add_column("t", justify="right")
    samples.add_column("FUNTF residual", justify="right")
    samples.add_column("OD margin", justify="right")
    samples.add_column("Eigensteps dev.", justify="right")
    for k in _preview_indices(len(path), verbose):
        residual = float(report.funtf_residual[k])
        icon = ICON_PASS if residual <= report.tol else ICON_FAIL
        samples.add_row(
            str(k),
            f"{report.times[k]:.4f}",
            f"{_number(residual)} {icon}",
            _number(float(report.od_margin[k])),
            _number(float(report.eigensteps_deviation[k])),
        )
    console.print(samples)

    if path.metadata.stages:
        console.print("[bold]Stages[/bold]")
        for name, start, end in path.metadata.stages:
            console.print(f"  [dim]{start:.3f}–{end:.3f}[/dim] {name}")
    if verbose and path.metadata.notes:
        console.print("[bold]Notes[/bold]")
        for note in path.metadata.notes:
            console.print(f"  [dim]•[/dim] {note}")


def print_fullspark(console: Console, summary: FullSparkSummary) -> None:
    """Trials, full spark count and ratio."""
    print_header(
        console,
        "Full spark experiment",
        summary.full_spark_count == summary.trials,
        f"N={summary.N}, d={summary.d}, {summary.field_tag.value}",
    )
    stats = Table(show_header=False, box=None, padding=(0, 2))
    stats.add_column("Metric", style="dim")
    stats.add_column("Value")
    stats.add_row("Trials", str(summary.trials))
    stats.add_row("Full spark", str(summary.full_spark_count))
    stats.add_row("Ratio", f"{summary.ratio:.4f}")
    if summary.failures:
        stats.add_row("First failures", str(list(summary.failures[:10])))
    console.print(stats)
