"""Handles CSV and JSON rendering of DecoChain results."""

import csv
import io
import json
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any, Final

import numpy as np

from . import paths
from .decoherence import DecoherenceReport
from .model import CaseId
from .types import DiffusionMethod, TimeSeries

logger = logging.getLogger(__name__)

DIFFUSION_HEADER: Final[list[str]] = ["t", "case", "method", "D"]
GAMMA_HEADER: Final[list[str]] = ["t", "case", "Gamma"]
CALIBRATION_HEADER: Final[list[str]] = ["case", "lambda", "t_threshold", "t_analytic"]
SWEEP_HEADER: Final[list[str]] = ["value", "case", "t_threshold", "t_analytic", "sigma_c", "lyapunov"]
GAP_FLOOR: Final[float] = 1e-12

Row = Sequence[str | float | None]


def format_value(value: str | float | None) -> str:
    """Render a cell: floats in shortest round-trip form, NaN and None as an empty field."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    number = float(value)
    if math.isnan(number):
        return ""
    return repr(number)


def render_csv(header: Sequence[str], rows: Iterable[Row]) -> str:
    """Render a header and rows as LF-terminated CSV text."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(cell) for cell in row])
    return buffer.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Row]) -> None:
    """Write a CSV file atomically."""
    paths.atomic_write_text(path, render_csv(header, rows))
    logger.debug("Wrote %s", path)


def _json_safe(value: Any) -> Any:  # noqa: ANN401
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    return value


def write_json(path: Path, data: dict[str, Any]) -> None:
    """Write a JSON document atomically with sorted keys and a trailing newline."""
    paths.atomic_write_text(path, json.dumps(_json_safe(data), sort_keys=True, indent=2) + "\n")
    logger.debug("Wrote %s", path)


def diffusion_rows(case: CaseId, method: DiffusionMethod, series: TimeSeries) -> list[Row]:
    """Return one `t,case,method,D` row per grid point."""
    return [(float(t), case.value, method.value, float(v)) for t, v in zip(series.times, series.values, strict=True)]


def gamma_rows(case: CaseId, series: TimeSeries) -> list[Row]:
    """Return one `t,case,Gamma` row per grid point."""
    return [(float(t), case.value, float(v)) for t, v in zip(series.times, series.values, strict=True)]


def relative_gap(reference: TimeSeries, other: TimeSeries) -> float:
    """Largest |a - b| / max(|a|, 1e-12) over points where both series are defined."""
    a, b = reference.values, other.values
    mask = np.isfinite(a) & np.isfinite(b)
    if not mask.any():
        return math.nan
    return float(np.max(np.abs(a[mask] - b[mask]) / np.maximum(np.abs(a[mask]), GAP_FLOOR)))


def sidecar_payload(reports: Sequence[DecoherenceReport]) -> dict[str, dict[str, float | None]]:
    """Return the per-case decoherence-time mapping written next to the Gamma CSV."""
    return {
        report.case.value: {
            "t_threshold": report.t_D_threshold,
            "t_analytic": report.t_D_analytic,
            "sigma_c": report.sigma_c,
            "lyapunov": report.lyapunov,
        }
        for report in reports
    }
