"""
JSON output for funtf.

Plain dictionaries for every command result, ready for json.dumps. The CLI
prints them with ``--json``; the tests inspect them directly.

Design Principles:
    - Consistent schema: every dict carries ``report_version`` and ``kind``
    - Strict JSON: infinities and NaN become null
    - Frames and tables use the same shapes as their file formats
"""

from __future__ import annotations

import json
import math
from datetime import UTC, datetime
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from funtf.engine import ConnectResult, FullSparkSummary, PathReport
    from funtf.errors import FuntfError
    from funtf.frames.path import FramePath

REPORT_VERSION = "1.0"


def _finite(value: float | None) -> float | None:
    if value is None or math.isnan(value) or math.isinf(value):
        return None
    return float(value)


def _series(values: Any) -> list[float | None]:
    return [_finite(float(v)) for v in np.asarray(values, dtype=np.float64)]


def envelope(kind: str, **payload: Any) -> dict[str, Any]:
    """A report dict with the common header fields."""
    return {
        "report_version": REPORT_VERSION,
        "generated_at": datetime.now(UTC).isoformat(),
        "kind": kind,
        **payload,
    }


def path_report_dict(
    report: PathReport,
    path: FramePath | None = None,
    *,
    samples: bool = True,
) -> dict[str, Any]:
    """
    Verdict, aggregates and (optionally) per-sample metrics of a path.

    Args:
        report: PathReport of the path
        path: The path itself, for construction name, stages and notes
        samples: Include the per-sample series
    """
    data: dict[str, Any] = {
        "passed": report.passed,
        "tol": report.tol,
        "nod_required": report.nod_required,
        "sample_count": len(report.times),
        "max_funtf_residual": _finite(report.max_funtf_residual),
        "min_od_margin": _finite(report.min_od_margin),
        "max_eigensteps_deviation": _finite(report.max_eigensteps_deviation),
        "start_deviation": _finite(report.start_deviation),
        "end_deviation": _finite(report.end_deviation),
    }
    if path is not None:
        data["construction"] = path.metadata.construction
        data["steps"] = path.metadata.steps
        data["stages"] = [
            {"name": name, "t_start": start, "t_end": end} for name, start, end in path.metadata.stages
        ]
        data["notes"] = list(path.metadata.notes)
    if samples:
        data["samples"] = {
            "t": _series(report.times),
            "funtf_residual": _series(report.funtf_residual),
            "od_margin": _series(report.od_margin),
            "eigensteps_deviation": _series(report.eigensteps_deviation),
        }
    return envelope("path", **data)


def connect_dict(result: ConnectResult, *, samples: bool = False) -> dict[str, Any]:
    """Route, permutations and the path report of a connect run."""
    data = path_report_dict(result.report, result.path, samples=samples)
    data["kind"] = "connect"
    data["route"] = result.route
    data["permutations"] = {name: list(sigma) for name, sigma in result.permutations.items()}
    return data


def fullspark_dict(summary: FullSparkSummary) -> dict[str, Any]:
    """The experiment summary."""
    return envelope(
        "experiment-fullspark",
        N=summary.N,
        d=summary.d,
        field=summary.field_tag.value,
        trials=summary.trials,
        full_spark_count=summary.full_spark_count,
        ratio=summary.ratio,
        failures=list(summary.failures),
    )


def error_dict(error: FuntfError | Exception) -> dict[str, Any]:
    """Error object for ``--json`` output."""
    to_dict = getattr(error, "to_dict", None)
    if callable(to_dict):
        body: dict[str, Any] = to_dict()
    else:
        body = {"error_type": type(error).__name__, "message": str(error)}
    return {"error": body}


def dumps(data: Any, indent: int = 2) -> str:
    """json.dumps with numpy scalars and arrays handled."""
    return json.dumps(data, indent=indent, default=_json_serializer, allow_nan=False)


def _json_serializer(obj: Any) -> Any:
    """Custom JSON serializer for numpy objects."""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return _finite(float(obj))
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")
