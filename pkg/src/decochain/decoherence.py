"""Decoherence factor and decoherence-time estimators."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from decochain.diffusion import a_is_inverted, diffusion_series, diffusion_value
from decochain.errors import NumericalError
from decochain.gaps import GAP_AFTER_GAP, GapRecord
from decochain.model import CaseId, ModelParams
from decochain.numerics import cumulative_integral, find_first_crossing
from decochain.types import DEFAULT_QUADRATURE, DiffusionMethod, PrefactorScope, QuadratureSpec, TimeSeries

if TYPE_CHECKING:
    from decochain.config import RunConfig

logger = logging.getLogger(__name__)

HALF_DECAY = 0.5


class DReferencePolicy(BaseModel):
    """
    How the unstable-case estimator picks its reference diffusion and t_max.

    ``reference``: ``threshold`` evaluates D at the time Gamma first drops
    below epsilon, then once more at the resulting estimate; ``fixed`` uses
    ``reference_time``. ``t_max``: ``critical`` reuses the critical time,
    ``half_decay`` takes the time Gamma reaches 1/2, ``fixed`` uses
    ``t_max_value``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    reference: Literal["threshold", "fixed"] = "threshold"
    reference_time: float | None = Field(default=None, gt=0)
    t_max: Literal["critical", "half_decay", "fixed"] = "critical"
    t_max_value: float | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _require_fixed_values(self) -> DReferencePolicy:
        if self.reference == "fixed" and self.reference_time is None:
            msg = "reference_time is required when reference is 'fixed'"
            raise ValueError(msg)
        if self.t_max == "fixed" and self.t_max_value is None:
            msg = "t_max_value is required when t_max is 'fixed'"
            raise ValueError(msg)
        return self


@dataclass(frozen=True)
class UnstableEstimate:
    """Decoherence time of an upside-down A from its critical width."""

    t_decoherence: float
    t_critical: float
    t_max: float
    sigma_c: float
    lyapunov: float
    d_reference: float
    reference_time: float
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class DecoherenceReport:
    """Per-case decoherence summary."""

    case: CaseId
    gamma_series: TimeSeries
    t_D_threshold: float | None  # noqa: N815
    t_D_analytic: float | None  # noqa: N815
    lyapunov: float | None = None
    sigma_c: float | None = None
    notes: tuple[str, ...] = ()
    unstable: UnstableEstimate | None = None


def lyapunov_rate(p: ModelParams) -> float:
    """Return the instability rate 2*omega^2 of the upside-down A."""
    return 2.0 * p.omega**2


def coherence_exponent(
    horizon: float,
    n: int,
    p: ModelParams,
    c: CaseId,
    *,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    separation: float = 1.0,
    workers: int = 1,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> TimeSeries:
    """Return separation^2 * integral of D over [0, t] on n points of [0, horizon]."""
    d_series = diffusion_series(horizon, n, p, c, method, prefactor_scope=prefactor_scope, workers=workers, spec=spec)
    return exponent_from_diffusion(d_series, separation)


def exponent_from_diffusion(d_series: TimeSeries, separation: float = 1.0) -> TimeSeries:
    """
    Scale the running integral of a D series by the squared separation.

    Every sample after the first gap in D is undefined; those samples get a
    GAP_AFTER_GAP record next to the original gap records.
    """
    if not (math.isfinite(separation) and separation > 0):
        msg = f"Coherence separation must be strictly positive, got {separation!r}"
        raise ValueError(msg)
    integral = cumulative_integral(d_series)
    recorded = {gap.index for gap in d_series.gaps}
    times = integral.times
    tail = tuple(GapRecord(index=int(i), time=float(times[i]), reason=GAP_AFTER_GAP) for i in np.flatnonzero(np.isnan(integral.values)) if int(i) not in recorded)
    gaps = tuple(sorted((*d_series.gaps, *tail), key=lambda gap: gap.index))
    return TimeSeries(t0=integral.t0, dt=integral.dt, values=separation**2 * integral.values, gaps=gaps)


def gamma_from_diffusion(d_series: TimeSeries, separation: float = 1.0) -> TimeSeries:
    """Return Gamma(t) = exp(-exponent) for a sampled D series; gaps carry over."""
    exponent = exponent_from_diffusion(d_series, separation)
    return exponent.with_values(np.exp(-exponent.values))


def gamma_factor(
    horizon: float,
    n: int,
    p: ModelParams,
    c: CaseId,
    *,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    separation: float = 1.0,
    workers: int = 1,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> TimeSeries:
    """Sample the decoherence factor Gamma(t); Gamma(0) = 1."""
    exponent = coherence_exponent(horizon, n, p, c, method=method, prefactor_scope=prefactor_scope, separation=separation, workers=workers, spec=spec)
    return exponent.with_values(np.exp(-exponent.values))


def _check_epsilon(epsilon: float) -> None:
    if not 0 < epsilon < 1:
        msg = f"epsilon must lie in (0, 1), got {epsilon!r}"
        raise ValueError(msg)


def t_dec_threshold(gamma_series: TimeSeries, epsilon: float) -> float | None:
    """First time Gamma falls to epsilon, or None within the horizon."""
    _check_epsilon(epsilon)
    return find_first_crossing(gamma_series, epsilon, "falling")


def _reference_diffusion(t: float, p: ModelParams, c: CaseId, method: DiffusionMethod, prefactor_scope: PrefactorScope, spec: QuadratureSpec) -> float:
    value = diffusion_value(t, p, c, method, prefactor_scope=prefactor_scope, spec=spec).value
    if not (math.isfinite(value) and value > 0):
        msg = f"Case {CaseId(c).value}: no positive diffusion at reference time t={t!r} (D={value!r}); the critical width is undefined."
        raise NumericalError(msg)
    return value


def _critical(d_ref: float, sigma_p0: float, lyapunov: float) -> tuple[float, float]:
    sigma_c = math.sqrt(2.0 * d_ref / lyapunov)
    return sigma_c, math.log(sigma_p0 / sigma_c) / lyapunov


def t_dec_unstable(
    p: ModelParams,
    c: CaseId,
    policy: DReferencePolicy | None = None,
    *,
    gamma_series: TimeSeries | None = None,
    horizon: float = 10.0,
    n: int = 4096,
    epsilon: float = 0.01,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> UnstableEstimate:
    """
    Estimate t_D = t_max + (1/Lambda)*ln(sigma_p0/sigma_c) for an upside-down A.

    sigma_c = sqrt(2*D_ref/Lambda) is the width at which diffusion balances
    the squeezing of the unstable direction, Lambda = 2*omega^2.

    Raises:
        ValueError: If A is not upside-down in case ``c``.
        NumericalError: If the reference diffusion is not positive.

    """
    if not a_is_inverted(c):
        msg = f"Case {CaseId(c).value} has a harmonic A; use t_dec_harmonic instead."
        raise ValueError(msg)
    policy = policy or DReferencePolicy()
    lyapunov = lyapunov_rate(p)
    notes: list[str] = []

    needs_gamma = policy.reference == "threshold" or policy.t_max == "half_decay"
    if needs_gamma and gamma_series is None:
        gamma_series = gamma_factor(horizon, n, p, c, method=method, prefactor_scope=prefactor_scope, spec=spec)

    if policy.reference == "fixed":
        reference_time = float(policy.reference_time)  # type: ignore[arg-type]
    else:
        first_pass = t_dec_threshold(gamma_series, epsilon)  # type: ignore[arg-type]
        if first_pass is None or first_pass == 0:
            reference_time = gamma_series.t_end  # type: ignore[union-attr]
            notes.append(f"Gamma stays above {epsilon!r} within the horizon; D_ref taken at t={reference_time!r}.")
        else:
            reference_time = first_pass

    d_ref = _reference_diffusion(reference_time, p, c, method, prefactor_scope, spec)
    sigma_c, t_critical = _critical(d_ref, p.sigma_p0, lyapunov)

    if policy.reference == "threshold":
        estimate = _t_max(policy, gamma_series, t_critical, notes) + t_critical
        if 0 < estimate <= gamma_series.t_end:  # type: ignore[union-attr]
            reference_time = estimate
            d_ref = _reference_diffusion(reference_time, p, c, method, prefactor_scope, spec)
            sigma_c, t_critical = _critical(d_ref, p.sigma_p0, lyapunov)
        else:
            notes.append(f"Refinement skipped: first estimate t={estimate!r} is outside the sampled horizon.")

    if t_critical < 0:
        notes.append(f"sigma_c={sigma_c!r} exceeds sigma_p0={p.sigma_p0!r}; the critical time is negative.")
    t_max = _t_max(policy, gamma_series, t_critical, notes)
    return UnstableEstimate(
        t_decoherence=t_max + t_critical,
        t_critical=t_critical,
        t_max=t_max,
        sigma_c=sigma_c,
        lyapunov=lyapunov,
        d_reference=d_ref,
        reference_time=reference_time,
        notes=tuple(dict.fromkeys(notes)),
    )


def _t_max(policy: DReferencePolicy, gamma_series: TimeSeries | None, t_critical: float, notes: list[str]) -> float:
    if policy.t_max == "fixed":
        return float(policy.t_max_value)  # type: ignore[arg-type]
    if policy.t_max == "half_decay":
        half = t_dec_threshold(gamma_series, HALF_DECAY) if gamma_series is not None else None
        if half is not None:
            return half
        notes.append("Gamma never reaches 1/2 within the horizon; t_max falls back to the critical time.")
    return t_critical


def difference_identity(est_b: UnstableEstimate, est_d: UnstableEstimate) -> tuple[float, float]:
    """
    Compare the b/d spread of the critical times with (1/2 Lambda)*ln(D_d/D_b).

    Returns:
        The pair (t_D(b) - t_D(d) net of each t_max, (1/2 Lambda)*ln(D_d/D_b)).
        With a shared fixed t_max the first entry is the plain t_D difference.

    """
    if not math.isclose(est_b.lyapunov, est_d.lyapunov, rel_tol=1e-12):
        msg = f"Estimates use different Lyapunov rates ({est_b.lyapunov!r} vs {est_d.lyapunov!r})"
        raise ValueError(msg)
    observed = est_b.t_critical - est_d.t_critical
    predicted = math.log(est_d.d_reference / est_b.d_reference) / (2.0 * est_b.lyapunov)
    return observed, predicted


def harmonic_crossing(d_series: TimeSeries, length: float) -> float | None:
    """Smallest t with length^2 * integral of D over [0, t] reaching 1, or None."""
    if not (math.isfinite(length) and length > 0):
        msg = f"Typical distance must be strictly positive, got {length!r}"
        raise ValueError(msg)
    exponent = exponent_from_diffusion(d_series, length)
    return find_first_crossing(exponent, 1.0, "rising")


def t_dec_harmonic(
    p: ModelParams,
    c: CaseId,
    length: float | None = None,
    *,
    d_series: TimeSeries | None = None,
    horizon: float = 10.0,
    n: int = 4096,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float | None:
    """
    Decoherence time of a harmonic A: the first t with L^2 * integral of D reaching 1.

    L defaults to twice the A packet width.
    """
    if a_is_inverted(c):
        msg = f"Case {CaseId(c).value} has an upside-down A; use t_dec_unstable instead."
        raise ValueError(msg)
    if d_series is None:
        d_series = diffusion_series(horizon, n, p, c, method, prefactor_scope=prefactor_scope, spec=spec)
    return harmonic_crossing(d_series, 2.0 * p.sigma_A if length is None else length)


def analyze_case(config: RunConfig, case: CaseId) -> DecoherenceReport:
    """Run every estimator that applies to ``case`` under ``config``."""
    case = CaseId(case)
    p = config.params
    method = config.primary_method
    d_series = diffusion_series(config.horizon, config.points, p, case, method, prefactor_scope=config.prefactor_scope, workers=config.workers)
    gamma_series = gamma_from_diffusion(d_series, config.coherence_separation)
    t_threshold = t_dec_threshold(gamma_series, config.epsilon)
    notes: list[str] = []
    if t_threshold is None:
        notes.append(f"Gamma stays above epsilon={config.epsilon!r} up to t={config.horizon!r}.")
    if d_series.gaps:
        notes.append(f"{len(d_series.gaps)} gap point(s) in D.")

    if not a_is_inverted(case):
        t_analytic = t_dec_harmonic(p, case, d_series=d_series)
        if t_analytic is None:
            notes.append("L^2 * integral of D stays below 1 within the horizon.")
        return DecoherenceReport(case=case, gamma_series=gamma_series, t_D_threshold=t_threshold, t_D_analytic=t_analytic, notes=tuple(notes))

    try:
        estimate = t_dec_unstable(p, case, config.policy, gamma_series=gamma_series, epsilon=config.epsilon, method=method, prefactor_scope=config.prefactor_scope)
    except NumericalError as e:
        logger.warning("Case %s: no analytic decoherence time (%s)", case.value, e)
        notes.append(str(e))
        return DecoherenceReport(case=case, gamma_series=gamma_series, t_D_threshold=t_threshold, t_D_analytic=None, lyapunov=lyapunov_rate(p), notes=tuple(notes))
    return DecoherenceReport(
        case=case,
        gamma_series=gamma_series,
        t_D_threshold=t_threshold,
        t_D_analytic=estimate.t_decoherence,
        lyapunov=estimate.lyapunov,
        sigma_c=estimate.sigma_c,
        notes=tuple(notes) + estimate.notes,
        unstable=estimate,
    )
