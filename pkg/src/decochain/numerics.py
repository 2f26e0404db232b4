"""Numerical primitives: adaptive quadrature, cumulative integration, crossings, differences."""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, Literal

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad

from decochain.errors import QuadratureError
from decochain.types import DEFAULT_QUADRATURE, QuadratureSpec, TimeSeries, uniform_grid

if TYPE_CHECKING:
    from collections.abc import Callable

logger = logging.getLogger(__name__)

Direction = Literal["falling", "rising"]


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    *,
    weight: Literal["cos", "sin"] | None = None,
    frequency: float = 0.0,
) -> float:
    """
    Integrate f over [a, b] with adaptive Gauss-Kronrod subdivision.

    With ``weight`` set, the integrand is f(x)*cos(frequency*x) (or sin) and the
    oscillatory factor is handled by the weighted QUADPACK rule.

    Raises:
        ValueError: If a > b.
        QuadratureError: If the tolerance is not reached within max_subdivisions.

    """
    if a > b:
        msg = f"Integration bounds must satisfy a <= b, got a={a!r}, b={b!r}"
        raise ValueError(msg)
    if a == b:
        return 0.0

    options: dict[str, object] = {}
    if weight is not None and frequency != 0.0:
        options = {"weight": weight, "wvar": frequency}
    elif weight == "sin":
        return 0.0

    result = quad(f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions, full_output=1, **options)
    value, residual = float(result[0]), float(result[1])
    # QUADPACK appends a message only when ier != 0.
    failed = len(result) > 3  # noqa: PLR2004
    if failed or not math.isfinite(value):
        message = result[3] if failed else "non-finite result"
        msg = f"Quadrature on [{a!r}, {b!r}] did not converge: {message} (estimate={value!r}, residual={residual!r})"
        raise QuadratureError(msg, estimate=value, residual=residual)
    return value


def cumulative_integral(series: TimeSeries) -> TimeSeries:
    """Return the running trapezoid integral of a series, starting at zero."""
    values = cumulative_trapezoid(series.values, dx=series.dt, initial=0.0)
    return series.with_values(values)


def find_first_crossing(series: TimeSeries, threshold: float, direction: Direction = "falling") -> float | None:
    """
    Return the first time the series crosses ``threshold`` in ``direction``.

    The crossing time is linearly interpolated between the bracketing samples.
    Pairs touching a gap (NaN) never count as a crossing.
    """
    values = series.values
    before, after = values[:-1], values[1:]
    if direction == "falling":
        mask = (before > threshold) & (after <= threshold)
    elif direction == "rising":
        mask = (before < threshold) & (after >= threshold)
    else:
        msg = f"Unknown crossing direction: {direction!r}"
        raise ValueError(msg)

    hits = np.flatnonzero(mask)
    if hits.size == 0:
        return None
    k = int(hits[0])
    fraction = (values[k] - threshold) / (values[k] - values[k + 1])
    return float(series.t0 + (k + fraction) * series.dt)


def derivative(series: TimeSeries) -> TimeSeries:
    """Second-order finite-difference derivative on the series grid."""
    edge_order = 2 if len(series) > 2 else 1  # noqa: PLR2004
    return series.with_values(np.gradient(series.values, series.dt, edge_order=edge_order))


def second_derivative(f: Callable[[float], float], x: float, h: float = 1e-3) -> float:
    """Five-point central estimate of f''(x)."""
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)


def sample(f: Callable[[float], float], horizon: float, n: int) -> TimeSeries:
    """Evaluate f on n equally spaced points of [0, horizon]."""
    times = uniform_grid(horizon, n)
    return TimeSeries.on_horizon(horizon, [f(float(t)) for t in times])
