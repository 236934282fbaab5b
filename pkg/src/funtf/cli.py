"""
CLI entry point for funtf.

This module provides the Typer-based command-line interface. Every command
reads and writes the Frame JSON, Eigensteps JSON and FramePath CSV formats.

Commands:
    verify                Check that a frame is a FUNTF
    eigensteps            Eigensteps of a frame, or validate a table
    synthesize            Build a FUNTF from an eigensteps table
    lift                  Lift a straight eigensteps segment to a frame path
    connect               Connect two complex FUNTFs
    connect-nod           Connect two complex NOD FUNTFs avoiding OD frames
    naimark               Naimark complement of a FUNTF
    spark                 Spark of a frame
    od                    Orthodecomposability report, optional perturbation
    sample                Random interior eigensteps or random FUNTF
    morph                 Simplex to two-basis morph path
    swap                  Two-basis transposition or the NOD two-basis swap
    negate                Negate one vector of a real frame
    experiment-fullspark  How often random FUNTFs are full spark

Exit Codes:
    0  success / verdict pass
    1  quantitative verdict failure
    2  structural error (bad input, refused operation)

Architecture Note:
    The CLI is intentionally thin: it loads inputs, merges RunConfig from
    defaults, an optional YAML file and flags, and delegates to the library.
"""

import logging
import traceback
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Any, Optional

import numpy as np
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from funtf import __version__
from funtf.eigensteps import (
    dump_eigensteps,
    is_interior,
    load_eigensteps,
    of_frame,
    sample_interior,
    validate,
)
from funtf.engine import Engine, PathReport, build_path_report, random_funtf
from funtf.errors import FuntfError
from funtf.frames.analysis import od_components, od_margin, od_perturb, spark
from funtf.frames.frame import Frame, check_funtf, dump_frame, load_frame, permute
from funtf.frames.naimark import naimark_complement
from funtf.frames.path import FramePath
from funtf.lifting.paths import lift_path
from funtf.lifting.synthesis import identity_base_data, random_base_data, synthesize
from funtf.motions.morph import morph_path
from funtf.motions.swaps import negate_vector_path, swap_pair_path
from funtf.motions.two_basis import two_onb_swap_frames, two_onb_swap_path
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
from funtf.report.json import envelope
from funtf.schema import FieldTag, RunConfig, load_config

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_ERROR = 2

app = typer.Typer(
    name="funtf",
    help="Construct, lift and connect finite unit norm tight frames.",
    add_completion=False,
    no_args_is_help=True,
)

console = Console()
err_console = Console(stderr=True)


# =============================================================================
# Shared state and options
# =============================================================================


@dataclass
class CliState:
    """Global flags shared by every command."""

    json_output: bool = False
    verbose: bool = False
    debug: bool = False


ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", help="YAML file with RunConfig values.", exists=True, dir_okay=False),
]
TolOption = Annotated[Optional[float], typer.Option("--tol", help="Verdict tolerance.")]
StepsOption = Annotated[Optional[int], typer.Option("--steps", help="Intervals per path segment.")]
SeedOption = Annotated[Optional[int], typer.Option("--seed", help="Seed for random choices.")]
FieldOption = Annotated[Optional[FieldTag], typer.Option("--field", help="Scalar field: real or complex.")]
OutputOption = Annotated[Optional[Path], typer.Option("--output", "-o", help="Where to write the result.")]
FrameArgument = Annotated[Path, typer.Argument(help="Frame JSON file.", dir_okay=False)]


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        console.print(f"[bold]funtf[/bold] version {__version__}")
        raise typer.Exit()


def _configure_logging(verbose: bool, debug: bool) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logger = logging.getLogger("funtf")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=err_console, show_path=False, rich_tracebacks=debug))
    logger.setLevel(level)
    logger.propagate = False


@app.callback()
def main(
    ctx: typer.Context,
    version: Annotated[
        Optional[bool],
        typer.Option(
            "--version",
            "-V",
            help="Show version and exit.",
            callback=version_callback,
            is_eager=True,
        ),
    ] = None,
    json_output: Annotated[bool, typer.Option("--json", help="Output results as JSON.")] = False,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log progress.")] = False,
    debug: Annotated[bool, typer.Option("--debug", help="Debug logging and full tracebacks.")] = False,
) -> None:
    """
    funtf - finite unit norm tight frames from eigensteps.

    Validate frames and eigensteps, synthesize frames, lift eigensteps paths,
    connect frames, and run the explicit frame motions.
    """
    _configure_logging(verbose, debug)
    ctx.obj = CliState(json_output=json_output, verbose=verbose, debug=debug)


def _state(ctx: typer.Context) -> CliState:
    return ctx.obj if isinstance(ctx.obj, CliState) else CliState()


def _config(config_path: Path | None, **overrides: Any) -> RunConfig:
    base = load_config(config_path) if config_path is not None else RunConfig()
    return base.merged(**overrides)


@contextmanager
def _guard(state: CliState) -> Iterator[None]:
    """Turn library and input errors into exit code 2."""
    try:
        yield
    except typer.Exit:
        raise
    except (FuntfError, ValidationError, ValueError, OSError) as exc:
        if state.json_output:
            body = error_dict(exc)
            if state.debug:
                body["traceback"] = traceback.format_exc()
            typer.echo(dumps(body))
        else:
            err_console.print(f"[red]{escape(str(exc))}[/red]")
            if state.debug:
                err_console.print(escape(traceback.format_exc()), style="dim")
        raise typer.Exit(code=EXIT_ERROR) from exc


def _emit(data: dict[str, Any]) -> None:
    typer.echo(dumps(data))


def _finish(passed: bool) -> None:
    raise typer.Exit(code=EXIT_OK if passed else EXIT_VERDICT)


def _show_path(
    state: CliState,
    path: FramePath,
    report: PathReport,
    output: Path | None,
) -> None:
    if output is not None:
        write_path_csv(path, output)
    if state.json_output:
        data = path_report_dict(report, path, samples=state.verbose)
        if output is not None:
            data["output"] = str(output)
        _emit(data)
    else:
        print_path(console, path, report, state.verbose)
        if output is not None:
            console.print(f"[dim]Wrote {output}[/dim]")


# =============================================================================
# Frames and eigensteps
# =============================================================================


@app.command()
def verify(
    ctx: typer.Context,
    frame_path: FrameArgument,
    tol: TolOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Check that a frame is a FUNTF within the tolerance.

    Example:
        $ funtf verify frame.json --tol 1e-8
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, tol=tol)
        frame = load_frame(frame_path)
        report = check_funtf(frame, config.tol)
        margin = od_margin(frame)
        if state.json_output:
            _emit(
                envelope(
                    "verify",
                    passed=report.ok,
                    d=frame.d,
                    N=frame.N,
                    field=frame.field_tag.value,
                    unit_norm_resid=report.unit_norm_resid,
                    tightness_resid=report.tightness_resid,
                    tol=config.tol,
                    od_margin=margin if np.isfinite(margin) else None,
                ),
            )
        else:
            print_funtf_report(console, report)
            console.print(f"  [dim]OD margin:[/dim] {margin:.3e}")
    _finish(report.ok)


@app.command()
def eigensteps(
    ctx: typer.Context,
    input_path: Annotated[Path, typer.Argument(help="Frame JSON (or Eigensteps JSON with --table).", dir_okay=False)],
    table_input: Annotated[bool, typer.Option("--table", help="Validate an Eigensteps JSON file.")] = False,
    output: OutputOption = None,
) -> None:
    """
    Print the eigensteps of a frame, or validate an eigensteps table.

    Writes Eigensteps JSON, or CSV when the output ends in .csv.

    Example:
        $ funtf eigensteps mercedes.json
    """
    state = _state(ctx)
    with _guard(state):
        valid = True
        violations: list[str] = []
        if table_input:
            table = load_eigensteps(input_path)
            report = validate(table)
            valid = report.ok
            violations = [violation.describe() for violation in report.violations]
        else:
            table = of_frame(load_frame(input_path))
        interior = valid and is_interior(table)

        if output is not None:
            if output.suffix == ".csv":
                write_eigensteps_csv(table, output)
            else:
                dump_eigensteps(table, output)
        if state.json_output:
            _emit(
                envelope(
                    "eigensteps",
                    N=table.N,
                    d=table.d,
                    rows=table.values.tolist(),
                    valid=valid,
                    interior=interior,
                    violations=violations,
                ),
            )
        else:
            print_eigensteps(console, table)
            console.print(f"  [dim]Valid:[/dim] {valid}  [dim]Interior:[/dim] {interior}")
            for line in violations:
                console.print(f"  [red]•[/red] {line}")
    _finish(valid)


@app.command("synthesize")
def synthesize_command(
    ctx: typer.Context,
    table_path: Annotated[Path, typer.Argument(help="Eigensteps JSON file.", dir_okay=False)],
    identity: Annotated[bool, typer.Option("--identity", help="Use identity base data.")] = False,
    own_structure: Annotated[
        bool, typer.Option("--own-structure", help="Use the table's own structure on the boundary.")
    ] = False,
    seed: SeedOption = None,
    field: FieldOption = None,
    tol: TolOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Build a FUNTF whose eigensteps are the given table.

    Base data is random (seeded) unless --identity is given.

    Example:
        $ funtf synthesize table.json --seed 3 --field real -o frame.json
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, seed=seed, field=field, tol=tol, output=output)
        table = load_eigensteps(table_path)
        if identity:
            base = identity_base_data(table, config.field)
        else:
            base = random_base_data(
                table,
                config.field,
                config.seed,
                own_structure=own_structure,
                tolerances=config.tolerances,
            )
        frame = synthesize(table, base, own_structure=own_structure, tolerances=config.tolerances)
        deviation = of_frame(frame).max_deviation(table)
        report = check_funtf(frame, config.tol)
        if config.output is not None:
            dump_frame(frame, config.output)
        if state.json_output:
            _emit(
                envelope(
                    "synthesize",
                    passed=report.ok,
                    eigensteps_deviation=deviation,
                    frame=frame.to_document().model_dump(mode="json"),
                ),
            )
        else:
            print_frame(console, frame)
            print_funtf_report(console, report)
            console.print(f"  [dim]Eigensteps deviation:[/dim] {deviation:.3e}")
    _finish(report.ok)


@app.command()
def naimark(
    ctx: typer.Context,
    frame_path: FrameArgument,
    output: OutputOption = None,
) -> None:
    """
    Write a Naimark complement of a FUNTF.

    Example:
        $ funtf naimark frame.json -o complement.json
    """
    state = _state(ctx)
    with _guard(state):
        frame = load_frame(frame_path)
        complement = naimark_complement(frame)
        report = check_funtf(complement)
        if output is not None:
            dump_frame(complement, output)
        if state.json_output:
            _emit(
                envelope(
                    "naimark",
                    passed=report.ok,
                    d=complement.d,
                    N=complement.N,
                    frame=complement.to_document().model_dump(mode="json"),
                ),
            )
        else:
            print_frame(console, complement, "Naimark complement")
            print_funtf_report(console, report)
    _finish(report.ok)


@app.command("spark")
def spark_command(
    ctx: typer.Context,
    frame_path: FrameArgument,
    budget: Annotated[int, typer.Option("--budget", help="Maximum subsets to enumerate.")] = 5_000_000,
) -> None:
    """
    Spark of a frame: the size of its smallest dependent subset.

    Exits 1 when the frame is not full spark.

    Example:
        $ funtf spark frame.json
    """
    state = _state(ctx)
    with _guard(state):
        frame = load_frame(frame_path)
        report = spark(frame, budget=budget)
        if state.json_output:
            _emit(
                envelope(
                    "spark",
                    spark=report.spark,
                    witness=list(report.witness),
                    full_spark=report.full_spark,
                    d=frame.d,
                    N=frame.N,
                ),
            )
        else:
            print_spark(console, report, frame.d)
    _finish(report.full_spark)


@app.command()
def od(
    ctx: typer.Context,
    frame_path: FrameArgument,
    perturb: Annotated[
        Optional[float], typer.Option("--perturb", help="Rotate OD blocks together by this angle.")
    ] = None,
    seed: SeedOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Orthodecomposability report; with --perturb, move to a nearby NOD FUNTF.

    Exits 1 when the reported frame (the perturbed one with --perturb) is OD.

    Example:
        $ funtf od frame.json --perturb 0.01 -o nod.json
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, seed=seed)
        frame = load_frame(frame_path)
        components = od_components(frame, tolerances=config.tolerances)
        margin = od_margin(frame)
        data: dict[str, Any] = {
            "is_od": len(components) > 1,
            "components": [list(c) for c in components],
            "od_margin": margin if np.isfinite(margin) else None,
        }
        if perturb is not None:
            perturbed = od_perturb(frame, perturb, np.random.default_rng(config.seed), config.tolerances)
            data["perturbed_is_od"] = len(od_components(perturbed, tolerances=config.tolerances)) > 1
            data["perturbed_od_margin"] = od_margin(perturbed)
            data["perturbed_distance"] = perturbed.distance(frame)
            if output is not None:
                dump_frame(perturbed, output)
        if state.json_output:
            _emit(envelope("od", **data))
        else:
            label = "OD" if data["is_od"] else "NOD"
            console.print(f"[bold]{label}[/bold]  [dim]OD margin:[/dim] {margin:.3e}")
            for component in data["components"]:
                console.print(f"  [dim]•[/dim] {component}")
            if perturb is not None:
                console.print(
                    f"Perturbed: margin {data['perturbed_od_margin']:.3e}, "
                    f"distance {data['perturbed_distance']:.3e}"
                )
        nod = not data["perturbed_is_od" if perturb is not None else "is_od"]
    _finish(nod)


@app.command()
def sample(
    ctx: typer.Context,
    N: Annotated[int, typer.Argument(help="Number of vectors.")],
    d: Annotated[int, typer.Argument(help="Dimension.")],
    frame_output: Annotated[bool, typer.Option("--frame", help="Sample a random FUNTF instead of eigensteps.")] = False,
    seed: SeedOption = None,
    field: FieldOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Random interior eigensteps, or with --frame a random FUNTF.

    Example:
        $ funtf sample 6 3 --seed 1 -o table.json
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, seed=seed, field=field, output=output)
        if frame_output:
            frame = random_funtf(N, d, config.field, config.seed, config)
            if config.output is not None:
                dump_frame(frame, config.output)
            if state.json_output:
                _emit(envelope("sample", frame=frame.to_document().model_dump(mode="json")))
            else:
                print_frame(console, frame, "Random FUNTF")
        else:
            table = sample_interior(N, d, config.seed)
            if config.output is not None:
                dump_eigensteps(table, config.output)
            if state.json_output:
                _emit(envelope("sample", N=N, d=d, rows=table.values.tolist()))
            else:
                print_eigensteps(console, table, "Interior eigensteps")


# =============================================================================
# Paths
# =============================================================================


@app.command()
def lift(
    ctx: typer.Context,
    frame_path: FrameArgument,
    table_path: Annotated[Path, typer.Argument(help="Target Eigensteps JSON.", dir_okay=False)],
    steps: StepsOption = None,
    tol: TolOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Lift the straight eigensteps segment from a frame to a target table.

    Example:
        $ funtf lift frame.json target.json --steps 64 -o lift.csv
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, steps=steps, tol=tol, output=output)
        frame = load_frame(frame_path)
        target = load_eigensteps(table_path)
        path = lift_path(frame, target, config.steps, config.tolerances)
        report = build_path_report(path, config.tol, start=frame)
        _show_path(state, path, report, config.output)
    _finish(report.passed)


def _connect(
    ctx: typer.Context,
    first: Path,
    second: Path,
    nod: bool,
    overrides: dict[str, Any],
    config_path: Path | None,
) -> None:
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, **overrides)
        F, G = load_frame(first), load_frame(second)
        engine = Engine(config)
        result = engine.connect_nod(F, G) if nod else engine.connect(F, G)
        if config.output is not None:
            write_path_csv(result.path, config.output)
        if state.json_output:
            _emit(connect_dict(result, samples=state.verbose))
        else:
            print_path(console, result.path, result.report, state.verbose)
            console.print(f"  [dim]Route:[/dim] {result.route}")
            for name, sigma in result.permutations.items():
                console.print(f"  [dim]{name} reordered by[/dim] {list(sigma)}")
    _finish(result.report.passed)


@app.command()
def connect(
    ctx: typer.Context,
    first: FrameArgument,
    second: FrameArgument,
    steps: StepsOption = None,
    tol: TolOption = None,
    seed: SeedOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Connect two complex FUNTFs by a path of FUNTFs.

    Example:
        $ funtf connect F.json G.json -o path.csv
    """
    _connect(ctx, first, second, False, {"steps": steps, "tol": tol, "seed": seed, "output": output}, config_path)


@app.command("connect-nod")
def connect_nod(
    ctx: typer.Context,
    first: FrameArgument,
    second: FrameArgument,
    steps: StepsOption = None,
    tol: TolOption = None,
    seed: SeedOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Connect two complex NOD FUNTFs through NOD FUNTFs.

    Example:
        $ funtf connect-nod F.json G.json --seed 2
    """
    _connect(ctx, first, second, True, {"steps": steps, "tol": tol, "seed": seed, "output": output}, config_path)


# =============================================================================
# Motions
# =============================================================================


@app.command()
def morph(
    ctx: typer.Context,
    d: Annotated[int, typer.Argument(help="Dimension (at least 3).")],
    steps: StepsOption = None,
    tol: TolOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Morph a simplex-plus-ONB frame into two orthonormal bases.

    Example:
        $ funtf morph 3 -o morph.csv
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, steps=steps, tol=tol, output=output)
        path = morph_path(d, config.steps, tolerances=config.tolerances)
        report = build_path_report(path, config.tol, nod_required=True)
        _show_path(state, path, report, config.output)
    _finish(report.passed)


@app.command()
def swap(
    ctx: typer.Context,
    frame_path: Annotated[
        Optional[Path], typer.Argument(help="Frame JSON of two orthonormal bases.", dir_okay=False)
    ] = None,
    pair: Annotated[
        Optional[tuple[int, int]], typer.Option("--pair", help="Columns to exchange.")
    ] = None,
    chaperone: Annotated[
        Optional[int], typer.Option("--chaperone", help="Column of the other basis.")
    ] = None,
    dim: Annotated[
        Optional[int], typer.Option("--dim", help="Run the NOD two-basis swap in this dimension.")
    ] = None,
    steps: StepsOption = None,
    tol: TolOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Exchange two vectors of a two-basis frame, or run the NOD two-basis swap.

    Examples:
        $ funtf swap frame.json --pair 0 1 --chaperone 3
        $ funtf swap --dim 3 -o swap.csv
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, steps=steps, tol=tol, output=output)
        if dim is not None:
            frames = two_onb_swap_frames(dim)
            path = two_onb_swap_path(dim, steps=config.steps)
            report = build_path_report(
                path, config.tol, start=frames.F_star, end=frames.G_star, nod_required=True
            )
        else:
            if frame_path is None or pair is None:
                raise ValueError("give a frame and --pair I J, or --dim D")
            frame = load_frame(frame_path)
            i, j = pair
            path = swap_pair_path(frame, i, j, chaperone, config.steps)
            order = list(range(frame.N))
            order[i], order[j] = order[j], order[i]
            report = build_path_report(path, config.tol, start=frame, end=permute(frame, order))
        _show_path(state, path, report, config.output)
    _finish(report.passed)


@app.command()
def negate(
    ctx: typer.Context,
    frame_path: FrameArgument,
    target: Annotated[int, typer.Option("--target", help="Column to negate.")],
    chaperone: Annotated[int, typer.Option("--chaperone", help="Column of the other tight subframe.")],
    steps: StepsOption = None,
    tol: TolOption = None,
    output: OutputOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Negate one vector of a real frame made of two tight subframes.

    Example:
        $ funtf negate frame.json --target 0 --chaperone 3
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, steps=steps, tol=tol, output=output)
        frame = load_frame(frame_path)
        path = negate_vector_path(frame, target, chaperone, config.steps)
        flipped = frame.matrix.copy()
        flipped[:, target] = -flipped[:, target]
        expected = Frame(flipped, frame.field_tag)
        report = build_path_report(path, config.tol, start=frame, end=expected)
        _show_path(state, path, report, config.output)
    _finish(report.passed)


# =============================================================================
# Experiments
# =============================================================================


@app.command("experiment-fullspark")
def experiment_fullspark(
    ctx: typer.Context,
    N: Annotated[int, typer.Argument(help="Number of vectors.")],
    d: Annotated[int, typer.Argument(help="Dimension.")],
    trials: Annotated[int, typer.Option("--trials", help="Random FUNTFs to sample.")] = 100,
    seed: SeedOption = None,
    field: FieldOption = None,
    config_path: ConfigOption = None,
) -> None:
    """
    Sample random FUNTFs and report how many are full spark.

    Example:
        $ funtf experiment-fullspark 6 3 --trials 1000 --seed 1
    """
    state = _state(ctx)
    with _guard(state):
        config = _config(config_path, seed=seed, field=field)
        summary = Engine(config).experiment_fullspark(N, d, trials)
        if state.json_output:
            _emit(fullspark_dict(summary))
        else:
            print_fullspark(console, summary)
    _finish(summary.full_spark_count == summary.trials)


if __name__ == "__main__":
    app()
