"""
Orchestration engine for funtf.

The Engine ties the library together for the commands that do more than
wrap a single operation:

- connect: a FUNTF path between two complex FUNTFs
- connect_nod: the same, kept away from orthodecomposable frames
- experiment_fullspark: how often random FUNTFs are full spark
- build_path_report: the pass/fail verdict for any path

Connect Routes:
    A. F interior: lift F straight to the eigensteps of G, then move
       inside the fiber of G to G itself
    B. F on the boundary, G interior: route A from G to F, reversed
    C. both on the boundary: route B to the anchor frame H for (N, d)
       (interior anchor eigensteps, identity base data), then route A

Design Decisions:
    - Real frames are refused by connect: real connectivity runs through the
      motion primitives (swap, negate, morph) instead
    - Boundary fibers use the boundary table's own structure, and the lift
      endpoint is recovered against the same table as the target
    - Every random choice is drawn from one generator seeded by RunConfig.seed
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from funtf.eigensteps import (
    EigenstepsTable,
    interior_anchor,
    is_interior,
    of_frame,
    sample_interior,
)
from funtf.errors import (
    DimensionMismatchError,
    EmptyInteriorError,
    EndpointODError,
    FieldUnsupportedError,
    NoNODStartError,
)
from funtf.frames.analysis import (
    DEFAULT_SPARK_BUDGET,
    is_od,
    nod_reorder,
    require_spark_budget,
    spark,
)
from funtf.frames.frame import Frame, inverse_permutation, permute, require_funtf
from funtf.frames.path import FramePath
from funtf.lifting.paths import fiber_path, lift_path
from funtf.lifting.synthesis import identity_base_data, random_base_data, synthesize
from funtf.schema import FieldTag, RunConfig, Tolerances

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

ENDPOINT_FACTOR = 10.0
MAX_REORDER_ATTEMPTS = 32


# =============================================================================
# Results
# =============================================================================


@dataclass(frozen=True, eq=False)
class PathReport:
    """
    Verification summary of a path.

    Attributes:
        times: Sample parameters
        funtf_residual: Per-sample FUNTF residual
        od_margin: Per-sample OD margin
        eigensteps_deviation: Per-sample deviation from declared eigensteps (NaN if none)
        max_funtf_residual: Worst residual
        min_od_margin: Smallest margin
        max_eigensteps_deviation: Worst declared deviation, None if nothing was declared
        start_deviation: Max-norm distance of the first sample from the expected start
        end_deviation: Max-norm distance of the last sample from the expected end
        tol: Verdict tolerance
        nod_required: Whether the verdict also demands a positive OD margin
    """

    times: NDArray[np.float64]
    funtf_residual: NDArray[np.float64]
    od_margin: NDArray[np.float64]
    eigensteps_deviation: NDArray[np.float64]
    max_funtf_residual: float
    min_od_margin: float
    max_eigensteps_deviation: float | None
    start_deviation: float
    end_deviation: float
    tol: float
    nod_required: bool = False

    @property
    def passed(self) -> bool:
        """Residuals within tol, endpoints within 10·tol, and NOD when required."""
        ok = (
            self.max_funtf_residual <= self.tol
            and self.start_deviation <= ENDPOINT_FACTOR * self.tol
            and self.end_deviation <= ENDPOINT_FACTOR * self.tol
        )
        if self.nod_required:
            ok = ok and self.min_od_margin > 0
        return ok


def build_path_report(
    path: FramePath,
    tol: float,
    *,
    start: Frame | None = None,
    end: Frame | None = None,
    nod_required: bool = False,
) -> PathReport:
    """
    Summarise a path against its expected endpoints.

    Args:
        path: Path to judge
        tol: Verdict tolerance
        start: Expected first frame (defaults to the path's own start)
        end: Expected last frame (defaults to the path's own end)
        nod_required: Also require min OD margin > 0
    """
    return PathReport(
        times=path.times,
        funtf_residual=path.funtf_residual,
        od_margin=path.od_margin,
        eigensteps_deviation=path.eigensteps_deviation,
        max_funtf_residual=path.max_funtf_residual,
        min_od_margin=path.min_od_margin,
        max_eigensteps_deviation=path.max_eigensteps_deviation,
        start_deviation=0.0 if start is None else path.start.distance(start),
        end_deviation=0.0 if end is None else path.end.distance(end),
        tol=tol,
        nod_required=nod_required,
    )


@dataclass(frozen=True, eq=False)
class ConnectResult:
    """
    A connecting path and its verdict.

    Attributes:
        path: The frame path from the first frame to the second
        report: Its PathReport
        route: Which connect route was taken (A, B or C)
        permutations: For connect_nod, the reordering applied at each
            boundary endpoint ("F" / "G" to the permutation used)
    """

    path: FramePath
    report: PathReport
    route: str
    permutations: dict[str, tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class FullSparkSummary:
    """
    Outcome of the genericity experiment.

    Attributes:
        N: Number of vectors
        d: Dimension
        field_tag: Field of the sampled frames
        trials: Frames sampled
        full_spark_count: How many were full spark
        failures: Trial indices that were not full spark
    """

    N: int
    d: int
    field_tag: FieldTag
    trials: int
    full_spark_count: int
    failures: tuple[int, ...] = ()

    @property
    def ratio(self) -> float:
        """Fraction of full spark frames."""
        return self.full_spark_count / self.trials if self.trials else 0.0


# =============================================================================
# Random frames
# =============================================================================


def random_funtf(
    N: int,
    d: int,
    field_tag: FieldTag = FieldTag.COMPLEX,
    rng: np.random.Generator | int | None = None,
    config: RunConfig | None = None,
) -> Frame:
    """
    A random FUNTF with interior eigensteps.

    Interior eigensteps from sample_interior, then Haar-random U_1 and
    Haar-random blocks for the V_n. The distribution is defined by this
    construction and is not uniform on the set of FUNTFs.

    Raises:
        EmptyInteriorError: If N < d + 2
    """
    tolerances = (config or RunConfig()).tolerances
    generator = np.random.default_rng(rng)
    table = sample_interior(N, d, generator)
    base = random_base_data(table, field_tag, generator, tolerances=tolerances)
    return synthesize(table, base, tolerances=tolerances)


# =============================================================================
# Engine
# =============================================================================


class Engine:
    """
    Runs the multi-step constructions under one RunConfig.

    Usage:
        engine = Engine(RunConfig(seed=7))
        result = engine.connect(F, G)
        print(result.report.passed)

    Attributes:
        config: Tolerances, step count, seed and field
        rng: Generator seeded from config.seed
    """

    def __init__(self, config: RunConfig | None = None) -> None:
        """
        Initialize the engine.

        Args:
            config: Run configuration (defaults to RunConfig())
        """
        self.config = config or RunConfig()
        self.rng = np.random.default_rng(self.config.seed)

    @property
    def tolerances(self) -> Tolerances:
        """Shortcut for config.tolerances."""
        return self.config.tolerances

    # -------------------------------------------------------------------------
    # Connect
    # -------------------------------------------------------------------------

    def _prepare(self, F: Frame, G: Frame, command: str) -> tuple[Frame, Frame]:
        for frame in (F, G):
            if frame.field_tag == FieldTag.REAL:
                raise FieldUnsupportedError(field_name=FieldTag.REAL.value, command=command)
        if F.shape != G.shape:
            raise DimensionMismatchError(expected=F.shape, actual=G.shape, what="connect endpoints")
        require_funtf(F, self.config.tol)
        require_funtf(G, self.config.tol)
        if F.N < F.d + 2:
            raise EmptyInteriorError(N=F.N, d=F.d)
        return F, G

    def _interior(self, table: EigenstepsTable) -> bool:
        return is_interior(table, tolerances=self.tolerances)

    def _lift_then_fiber(self, F: Frame, G: Frame) -> FramePath:
        """Route A: F has interior eigensteps."""
        target = of_frame(G)
        lift = lift_path(F, target, self.config.steps, self.tolerances)
        fiber = fiber_path(
            lift.end,
            G,
            self.config.steps,
            boundary_ok=not self._interior(target),
            table=target,
            tolerances=self.tolerances,
        )
        return FramePath.concatenate([lift, fiber], construction="connect")

    def _route(self, F: Frame, G: Frame) -> tuple[FramePath, str]:
        if self._interior(of_frame(F)):
            logger.debug("connect: start is interior, lifting directly")
            return self._lift_then_fiber(F, G), "A"
        if self._interior(of_frame(G)):
            logger.debug("connect: start on the boundary, connecting from the end")
            return self._lift_then_fiber(G, F).reversed(), "B"

        anchor_table = interior_anchor(F.N, F.d)
        anchor = synthesize(
            anchor_table,
            identity_base_data(anchor_table, FieldTag.COMPLEX),
            tolerances=self.tolerances,
        )
        logger.debug("connect: both endpoints on the boundary, routing through the anchor")
        inbound = self._lift_then_fiber(anchor, F).reversed()
        outbound = self._lift_then_fiber(anchor, G)
        path = FramePath.concatenate([inbound, outbound], construction="connect")
        return path.with_notes("routed through the interior anchor (seed 0)"), "C"

    def connect(self, F: Frame, G: Frame) -> ConnectResult:
        """
        A FUNTF path from F to G.

        Args:
            F: Complex FUNTF
            G: Complex FUNTF of the same shape

        Returns:
            ConnectResult with route A, B or C

        Raises:
            FieldUnsupportedError: For real frames
            NotFUNTFError: If an endpoint is not a FUNTF within config.tol
            EmptyInteriorError: If N < d + 2
        """
        F, G = self._prepare(F, G, "connect")
        path, route = self._route(F, G)
        path = path.with_notes(f"route {route}")
        report = build_path_report(path, self.config.tol, start=F, end=G)
        logger.info(
            "connect route %s: %d samples, max residual %.3e",
            route,
            len(path),
            report.max_funtf_residual,
        )
        return ConnectResult(path=path, report=report, route=route)

    def _nod_leg(self, X: Frame, name: str) -> tuple[FramePath, tuple[int, ...]]:
        """
        Path from a random interior frame to a boundary endpoint X.

        The leg is built for X reordered so that its first d columns form a
        NOD basis and then every sample is put back in X's order. The random
        start is redrawn until it is interior in X's order too.

        Raises:
            NoNODStartError: If no draw is interior in both orders
        """
        sigma = nod_reorder(X, self.tolerances)
        inverse = inverse_permutation(sigma)
        reordered = permute(X, sigma)
        for _ in range(MAX_REORDER_ATTEMPTS):
            start = random_funtf(X.N, X.d, FieldTag.COMPLEX, self.rng, self.config)
            if self._interior(of_frame(permute(start, inverse))):
                break
        else:
            raise NoNODStartError(endpoint=name, attempts=MAX_REORDER_ATTEMPTS)
        leg = self._lift_then_fiber(start, reordered).permuted(inverse)
        logger.debug("connect-nod: boundary endpoint reordered by %s", list(sigma))
        return leg, sigma

    def connect_nod(self, F: Frame, G: Frame) -> ConnectResult:
        """
        A path from F to G through non-orthodecomposable FUNTFs.

        Boundary endpoints are joined to a random interior frame after a
        NOD reordering; the interior frames are then connected by lifting.

        Raises:
            FieldUnsupportedError: For real frames
            EndpointODError: If F or G is orthodecomposable
            NoNODStartError: If a boundary endpoint gets no usable random start
            EmptyInteriorError: If N < d + 2
        """
        F, G = self._prepare(F, G, "connect-nod")
        for name, frame in (("F", F), ("G", G)):
            if is_od(frame, tolerances=self.tolerances):
                raise EndpointODError(endpoint=name)

        legs: list[FramePath] = []
        permutations: dict[str, tuple[int, ...]] = {}
        inner_F, inner_G = F, G
        tail: FramePath | None = None
        if not self._interior(of_frame(F)):
            leg, permutations["F"] = self._nod_leg(F, "F")
            legs.append(leg.reversed())
            inner_F = leg.start
        if not self._interior(of_frame(G)):
            tail, permutations["G"] = self._nod_leg(G, "G")
            inner_G = tail.start
        middle, _ = self._route(inner_F, inner_G)
        legs.append(middle)
        if tail is not None:
            legs.append(tail)

        path = FramePath.concatenate(legs, construction="connect-nod")
        path = path.with_notes(*(f"{name} reordered by {list(s)}" for name, s in permutations.items()))
        report = build_path_report(path, self.config.tol, start=F, end=G, nod_required=True)
        logger.info("connect-nod: min OD margin %.3e", report.min_od_margin)
        return ConnectResult(path=path, report=report, route="nod", permutations=permutations)

    # -------------------------------------------------------------------------
    # Experiments
    # -------------------------------------------------------------------------

    def experiment_fullspark(
        self,
        N: int,
        d: int,
        trials: int,
        field_tag: FieldTag | None = None,
        budget: int = DEFAULT_SPARK_BUDGET,
    ) -> FullSparkSummary:
        """
        Sample ``trials`` random FUNTFs and count the full spark ones.

        Raises:
            TooLargeError: If one spark enumeration would exceed ``budget``
            EmptyInteriorError: If N < d + 2
        """
        field_tag = field_tag or self.config.field
        require_spark_budget(N, d, budget)

        failures: list[int] = []
        for trial in range(trials):
            frame = random_funtf(N, d, field_tag, self.rng, self.config)
            if not spark(frame, budget=budget, tolerances=self.tolerances).full_spark:
                failures.append(trial)
        logger.info("full spark: %d of %d (%s)", trials - len(failures), trials, field_tag.value)
        return FullSparkSummary(
            N=N,
            d=d,
            field_tag=field_tag,
            trials=trials,
            full_spark_count=trials - len(failures),
            failures=tuple(failures),
        )
