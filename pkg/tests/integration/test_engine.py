"""
Integration tests for the Engine.

Tests cover:
- connect over routes A, B and C
- connect_nod with interior and boundary endpoints, and exhausted random starts
- Refusals: real frames, non-FUNTFs, empty interior, OD endpoints
- The full spark experiment, including the 1000-trial sweep per field
- build_path_report verdicts
"""

import numpy as np
import pytest

from funtf.engine import Engine, build_path_report, random_funtf
from funtf.errors import (
    ERROR_NO_NOD_START,
    DimensionMismatchError,
    EmptyInteriorError,
    EndpointODError,
    FieldUnsupportedError,
    NoNODStartError,
    NotFUNTFError,
    TooLargeError,
)
from funtf.frames import Frame, FramePath, check_funtf, is_od
from funtf.schema import FieldTag, RunConfig

pytestmark = pytest.mark.integration


def rotation_zx(a: float, b: float) -> np.ndarray:
    """Rz(a) @ Rx(b)."""
    ca, sa, cb, sb = np.cos(a), np.sin(a), np.cos(b), np.sin(b)
    Rz = np.array([[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]])
    Rx = np.array([[1.0, 0.0, 0.0], [0.0, cb, -sb], [0.0, sb, cb]])
    return Rz @ Rx


def complex_two_onb(a: float, b: float) -> Frame:
    """The identity basis followed by a rotated one, tagged complex."""
    return Frame(np.hstack([np.eye(3), rotation_zx(a, b)]), FieldTag.COMPLEX)


@pytest.fixture
def engine() -> Engine:
    """An engine with short segments and a tolerance suited to boundary endpoints."""
    return Engine(RunConfig(steps=16, tol=1e-6, seed=5))


# =============================================================================
# connect
# =============================================================================


class TestConnect:
    """Tests for Engine.connect."""

    def test_route_a(self, engine: Engine, complex_funtf: Frame, other_complex_funtf: Frame) -> None:
        """Interior start: lift then move inside the end fiber."""
        result = engine.connect(complex_funtf, other_complex_funtf)
        assert result.route == "A"
        assert result.report.passed
        assert result.path.start.distance(complex_funtf) == 0.0
        assert result.path.end.distance(other_complex_funtf) == 0.0
        assert result.path.max_funtf_residual < 1e-8
        assert "route A" in result.path.metadata.notes
        assert [name for name, _, _ in result.path.metadata.stages] == ["lift", "fiber"]

    def test_route_b(self, engine: Engine, complex_funtf: Frame) -> None:
        """Boundary start: connect from the end and reverse."""
        F = complex_two_onb(0.4, 0.7)
        result = engine.connect(F, complex_funtf)
        assert result.route == "B"
        assert result.report.passed
        assert result.path.start.distance(F) < 1e-12
        assert result.path.end.distance(complex_funtf) < 1e-12
        assert result.path.metadata.construction == "reversed connect"

    def test_route_c(self, engine: Engine) -> None:
        """Two boundary endpoints go through the interior anchor."""
        F = complex_two_onb(0.4, 0.7)
        G = complex_two_onb(-0.9, 1.1)
        result = engine.connect(F, G)
        assert result.route == "C"
        assert result.report.passed
        assert "routed through the interior anchor (seed 0)" in result.path.metadata.notes
        assert result.report.start_deviation < 1e-12
        assert result.report.end_deviation < 1e-12

    def test_real_refused(self, engine: Engine, real_funtf: Frame) -> None:
        """Real frames are not connected by lifting."""
        with pytest.raises(FieldUnsupportedError):
            engine.connect(real_funtf, real_funtf)

    def test_not_funtf_refused(self, engine: Engine, complex_funtf: Frame) -> None:
        """Both endpoints must be FUNTFs."""
        broken = complex_funtf.with_columns([0], 2 * complex_funtf.matrix[:, [0]])
        with pytest.raises(NotFUNTFError):
            engine.connect(broken, complex_funtf)

    def test_shape_mismatch(self, engine: Engine, complex_funtf: Frame) -> None:
        """Endpoints must have the same shape."""
        other = random_funtf(7, 3, rng=1)
        with pytest.raises(DimensionMismatchError):
            engine.connect(complex_funtf, other)

    def test_empty_interior(self, engine: Engine, mercedes_benz: Frame) -> None:
        """N < d + 2 has no interior to lift through."""
        F = Frame(mercedes_benz.matrix, FieldTag.COMPLEX)
        with pytest.raises(EmptyInteriorError):
            engine.connect(F, F)


# =============================================================================
# connect_nod
# =============================================================================


class TestConnectNod:
    """Tests for Engine.connect_nod."""

    def test_interior_endpoints(
        self, engine: Engine, complex_funtf: Frame, other_complex_funtf: Frame
    ) -> None:
        """Interior NOD endpoints need no reordering."""
        result = engine.connect_nod(complex_funtf, other_complex_funtf)
        assert result.route == "nod"
        assert result.permutations == {}
        assert result.report.nod_required
        assert result.report.min_od_margin > 0
        assert result.report.passed

    def test_boundary_endpoint(self, engine: Engine, complex_funtf: Frame) -> None:
        """A boundary NOD endpoint is reached through a reordered leg."""
        F = complex_two_onb(0.4, 0.7)
        assert not is_od(F)
        result = engine.connect_nod(F, complex_funtf)
        assert "F" in result.permutations
        assert sorted(result.permutations["F"]) == list(range(6))
        assert result.report.start_deviation < 1e-12
        assert result.report.end_deviation < 1e-12
        assert result.report.max_funtf_residual < 1e-6

    def test_od_endpoint_refused(self, engine: Engine, complex_funtf: Frame) -> None:
        """An OD endpoint cannot start a NOD path."""
        doubled = Frame(np.hstack([np.eye(3), np.eye(3)]), FieldTag.COMPLEX)
        with pytest.raises(EndpointODError) as exc_info:
            engine.connect_nod(doubled, complex_funtf)
        assert exc_info.value.endpoint == "F"

    def test_no_interior_start(
        self, engine: Engine, complex_funtf: Frame, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Running out of random starts is an error, not a silent non-NOD leg."""
        monkeypatch.setattr("funtf.engine.MAX_REORDER_ATTEMPTS", 0)
        with pytest.raises(NoNODStartError) as exc_info:
            engine.connect_nod(complex_funtf, complex_two_onb(0.4, 0.7))
        assert exc_info.value.endpoint == "G"
        assert exc_info.value.code == ERROR_NO_NOD_START

    def test_real_refused(self, engine: Engine, real_funtf: Frame) -> None:
        """Real frames are refused here too."""
        with pytest.raises(FieldUnsupportedError):
            engine.connect_nod(real_funtf, real_funtf)


# =============================================================================
# Experiments and reports
# =============================================================================


class TestFullSparkExperiment:
    """Tests for Engine.experiment_fullspark and random_funtf."""

    def test_random_frames_are_full_spark(self) -> None:
        """Generic FUNTFs are full spark."""
        summary = Engine(RunConfig(seed=1)).experiment_fullspark(5, 2, 3)
        assert summary.trials == 3
        assert summary.full_spark_count == 3
        assert summary.ratio == 1.0
        assert summary.failures == ()
        assert summary.field_tag == FieldTag.COMPLEX

    def test_real_field(self) -> None:
        """The field can be overridden per call."""
        summary = Engine(RunConfig(seed=2)).experiment_fullspark(6, 3, 2, FieldTag.REAL)
        assert summary.field_tag == FieldTag.REAL
        assert summary.trials == 2

    def test_budget_checked_upfront(self) -> None:
        """Oversized enumerations are refused before sampling."""
        with pytest.raises(TooLargeError):
            Engine().experiment_fullspark(6, 3, 1, budget=5)

    def test_random_funtf_seeded(self) -> None:
        """The same seed gives the same frame."""
        a = random_funtf(6, 3, FieldTag.COMPLEX, rng=4)
        b = random_funtf(6, 3, FieldTag.COMPLEX, rng=4)
        assert a.distance(b) == 0.0
        assert check_funtf(a).ok

    def test_random_funtf_empty_interior(self) -> None:
        """Random FUNTFs need interior eigensteps."""
        with pytest.raises(EmptyInteriorError):
            random_funtf(4, 3)


class TestBuildPathReport:
    """Tests for build_path_report."""

    def test_constant_path_passes(self, complex_funtf: Frame) -> None:
        """A path that stands on a FUNTF passes."""
        path = FramePath.from_frames([0.0, 1.0], [complex_funtf] * 2, construction="c")
        report = build_path_report(path, 1e-8, start=complex_funtf, end=complex_funtf)
        assert report.passed
        assert report.start_deviation == 0.0

    def test_wrong_endpoint_fails(self, complex_funtf: Frame, other_complex_funtf: Frame) -> None:
        """An endpoint away from the expected frame fails the verdict."""
        path = FramePath.from_frames([0.0, 1.0], [complex_funtf] * 2, construction="c")
        report = build_path_report(path, 1e-8, end=other_complex_funtf)
        assert report.end_deviation > 1e-7
        assert not report.passed

    def test_nod_requirement(self) -> None:
        """An OD sample fails the verdict only when NOD is required."""
        doubled = Frame(np.hstack([np.eye(2), np.eye(2)]))
        path = FramePath.from_frames([0.0, 1.0], [doubled] * 2, construction="c")
        assert build_path_report(path, 1e-8).passed
        assert not build_path_report(path, 1e-8, nod_required=True).passed


@pytest.mark.slow
class TestConnectSweep:
    """Desk-scale sweeps over random complex pairs."""

    @pytest.mark.parametrize(("N", "d"), [(5, 2), (6, 3)])
    def test_random_pairs_connect(self, N: int, d: int) -> None:
        """Every pair is joined by FUNTFs with exact endpoints."""
        engine = Engine(RunConfig(steps=32, tol=1e-7))
        rng = np.random.default_rng(N * 100 + d)
        for _ in range(20):
            F = random_funtf(N, d, FieldTag.COMPLEX, rng)
            G = random_funtf(N, d, FieldTag.COMPLEX, rng)
            result = engine.connect(F, G)
            assert result.report.passed
            assert result.report.start_deviation <= 1e-6
            assert result.report.end_deviation <= 1e-6
            assert result.report.max_funtf_residual <= 1e-7

    def test_random_nod_pairs(self) -> None:
        """Random NOD pairs stay NOD along the whole path."""
        engine = Engine(RunConfig(steps=32, tol=1e-7, seed=3))
        rng = np.random.default_rng(63)
        for _ in range(10):
            F = random_funtf(6, 3, FieldTag.COMPLEX, rng)
            G = random_funtf(6, 3, FieldTag.COMPLEX, rng)
            assert engine.connect_nod(F, G).report.min_od_margin > 0


@pytest.mark.slow
class TestFullSparkSweep:
    """The full spark experiment at desk scale."""

    @pytest.mark.parametrize("field_tag", [FieldTag.REAL, FieldTag.COMPLEX])
    def test_thousand_trials(self, field_tag: FieldTag) -> None:
        """Every one of 1000 random FUNTFs at (6, 3) is full spark."""
        summary = Engine(RunConfig(seed=6)).experiment_fullspark(6, 3, 1000, field_tag)
        assert summary.trials == 1000
        assert summary.failures == ()
        assert summary.ratio == 1.0
