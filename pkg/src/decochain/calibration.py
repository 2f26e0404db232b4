"""Calibration of the A-B coupling against a target decoherence time."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from decochain.decoherence import coherence_exponent
from decochain.errors import CalibrationError
from decochain.model import CaseId, ModelParams
from decochain.numerics import find_first_crossing
from decochain.types import DiffusionMethod, PrefactorScope, TimeSeries

logger = logging.getLogger(__name__)

DEFAULT_BRACKET = (1e-4, 10.0)


@dataclass(frozen=True)
class CalibrationResult:
    """The calibrated coupling and the decoherence time it produces."""

    lambda_star: float
    t_threshold: float
    iterations: int


def threshold_time(unit_exponent: TimeSeries, coupling: float, epsilon: float) -> float | None:
    """
    Threshold decoherence time at ``coupling`` from the exponent computed at unit coupling.

    D scales as coupling^2, so Gamma drops to epsilon where the unit exponent
    reaches -ln(epsilon)/coupling^2.
    """
    if coupling <= 0:
        return None
    return find_first_crossing(unit_exponent, -math.log(epsilon) / coupling**2, "rising")


def calibrate_lambda(
    p: ModelParams,
    case: CaseId,
    target: float,
    *,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    horizon: float = 10.0,
    points: int = 4096,
    epsilon: float = 0.01,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    separation: float = 1.0,
    rel_tol: float = 0.01,
    max_iterations: int = 200,
) -> CalibrationResult:
    """
    Find lambda with |t_D(lambda) - target| <= rel_tol * target by bisection on log(lambda).

    Raises:
        ValueError: If the target or bracket is malformed.
        CalibrationError: If the target is not bracketed or bisection stalls.

    """
    low, high = bracket
    if not (0 < low < high and math.isfinite(high)):
        msg = f"Calibration bracket must satisfy 0 < low < high, got {bracket!r}"
        raise ValueError(msg)
    if not (math.isfinite(target) and target > 0):
        msg = f"Target decoherence time must be strictly positive, got {target!r}"
        raise ValueError(msg)

    unit = coherence_exponent(horizon, points, p.replace(lambda_c=1.0), case, method=method, prefactor_scope=prefactor_scope, separation=separation)
    t_low, t_high = threshold_time(unit, low, epsilon), threshold_time(unit, high, epsilon)
    logger.debug("Calibration bracket for case %s: t_D(%r)=%r, t_D(%r)=%r", CaseId(case).value, low, t_low, high, t_high)
    if t_high is None or t_high > target * (1 + rel_tol) or (t_low is not None and t_low < target * (1 - rel_tol)):
        msg = f"Target t_D={target!r} for case {CaseId(case).value} is not bracketed: t_D({low!r})={t_low!r}, t_D({high!r})={t_high!r}"
        raise CalibrationError(msg, bracket=(low, high), times=(t_low, t_high))

    for iteration in range(1, max_iterations + 1):
        mid = math.sqrt(low * high)
        t_mid = threshold_time(unit, mid, epsilon)
        if t_mid is not None and abs(t_mid - target) <= rel_tol * target:
            logger.info("Calibrated lambda=%r for case %s: t_D=%r (target %r) after %d steps", mid, CaseId(case).value, t_mid, target, iteration)
            return CalibrationResult(lambda_star=mid, t_threshold=t_mid, iterations=iteration)
        if t_mid is None or t_mid > target:
            low = mid
        else:
            high = mid

    msg = f"Bisection for case {CaseId(case).value} did not reach t_D={target!r} within {max_iterations} steps"
    raise CalibrationError(msg, bracket=bracket, times=(t_low, t_high))
