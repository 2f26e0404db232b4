"""
Diffusion coefficients D(t) of the four cases.

D(t) is the coefficient of (x - x')^2 in the master equation of A. It has a
bath term, quadratic in B's driven response, and a term from B's initial
packet, the overlap of the effective noise kernel with A's difference path:

    D(t) = (2 gamma0 kT lambda^2/hbar) * int_0^t G(s,t) dG/dt(s,t) ds
         + S * (lambda^2 sigma/32 hbar) * int_0^t h1_B(v) h1_A(v) dv

G is B's unit-coupling response to A (see ``trajectories``) and S is the
Omega^2/(omega^2+Omega^2)^2 prefactor, applied per ``PrefactorScope``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Final

import numpy as np

from decochain.errors import CausticError, QuadratureError
from decochain.gaps import GAP_CAUSTIC, GAP_QUADRATURE, GapReason, GapRecord
from decochain.kernels import eff_noise_kernel
from decochain.model import CaseId, ModelParams, OscillatorKind, case_kinds
from decochain.numerics import integrate
from decochain.trajectories import DrivenSourceSpec, OscillatorBasis, make_response
from decochain.types import DEFAULT_QUADRATURE, DiffusionMethod, DiffusionValue, PrefactorScope, QuadratureSpec, TimeSeries, uniform_grid

logger = logging.getLogger(__name__)

_SMALL_RATE_PHASE: Final[float] = 1e-6


def packet_prefactor(p: ModelParams, scope: PrefactorScope = PrefactorScope.BOTH) -> float:
    """Return the factor multiplying the initial-packet term."""
    if PrefactorScope(scope) is PrefactorScope.FIRST_ONLY:
        return 1.0
    return p.omega_B**2 / (p.omega**2 + p.omega_B**2) ** 2


def _packet_weight(p: ModelParams) -> float:
    return p.lambda_c**2 * p.sigma / (32.0 * p.hbar)


def _sin_over(rate: float, t: float, *, hyperbolic: bool) -> float:
    """Return sin(rate*t)/rate (or sinh), with the t limit at zero rate."""
    phase = rate * t
    if abs(phase) < _SMALL_RATE_PHASE:
        return t * (1.0 + phase * phase / 6.0) if hyperbolic else t * (1.0 - phase * phase / 6.0)
    return (math.sinh(phase) if hyperbolic else math.sin(phase)) / rate


def overlap_integral(t: float, p: ModelParams, c: CaseId) -> float:
    """Closed form of the integral of h1_B(v)*h1_A(v) over [0, t]."""
    w, big_w = p.omega, p.omega_B
    case = CaseId(c)
    if case is CaseId.A:
        return (big_w * math.sinh(big_w * t) * math.cos(w * t) + w * math.cosh(big_w * t) * math.sin(w * t)) / (big_w**2 + w**2)
    if case is CaseId.B:
        return (w * math.cos(big_w * t) * math.sinh(w * t) + big_w * math.sin(big_w * t) * math.cosh(w * t)) / (big_w**2 + w**2)
    hyperbolic = case is CaseId.D
    return 0.5 * (_sin_over(big_w - w, t, hyperbolic=hyperbolic) + _sin_over(big_w + w, t, hyperbolic=hyperbolic))


def _bath_weight(p: ModelParams) -> float:
    return 2.0 * p.bath_product * p.lambda_c**2 / p.hbar


def _bath_term(t: float, p: ModelParams, c: CaseId, method: DiffusionMethod, spec: QuadratureSpec) -> float:
    weight = _bath_weight(p)
    if weight == 0:
        return 0.0
    b_kind = case_kinds(c)[1]
    evaluator = make_response(t, DrivenSourceSpec.for_case(p, c), OscillatorBasis(b_kind, p.omega_B), method, spec)
    return weight * integrate(lambda s: evaluator.value(s) * evaluator.rate(s), 0.0, t, spec)


def _packet_term_quadrature(t: float, p: ModelParams, c: CaseId, spec: QuadratureSpec) -> float:
    source = DrivenSourceSpec.for_case(p, c)
    return integrate(lambda s: eff_noise_kernel(t - s, p, c) * source.shape(s, t), 0.0, t, spec)


def _check_time(t: float) -> None:
    if not math.isfinite(t) or t < 0:
        msg = f"Diffusion time must be finite and non-negative, got t={t!r}"
        raise ValueError(msg)


def diffusion_terms(
    t: float,
    p: ModelParams,
    c: CaseId,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    *,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """
    Return the (bath, packet) terms of D(t).

    Raises:
        CausticError: If B is harmonic, the bath is on and t is a caustic time.
        QuadratureError: If an integral does not converge.

    """
    _check_time(t)
    if t == 0:
        return 0.0, 0.0
    method = DiffusionMethod(method)
    bath = _bath_term(t, p, c, method, spec)
    if method is DiffusionMethod.CLOSED_FORM:
        packet = _packet_weight(p) * overlap_integral(t, p, c)
    else:
        packet = _packet_term_quadrature(t, p, c, spec)
    return bath, packet_prefactor(p, prefactor_scope) * packet


def diffusion_closed(
    t: float,
    p: ModelParams,
    c: CaseId,
    *,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """D(t) from the closed-form response and overlap integral."""
    return math.fsum(diffusion_terms(t, p, c, DiffusionMethod.CLOSED_FORM, prefactor_scope=prefactor_scope, spec=spec))


def diffusion_quadrature(
    t: float,
    p: ModelParams,
    c: CaseId,
    *,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """D(t) with every convolution and overlap evaluated by adaptive quadrature."""
    return math.fsum(diffusion_terms(t, p, c, DiffusionMethod.QUADRATURE, prefactor_scope=prefactor_scope, spec=spec))


def diffusion_value(
    t: float,
    p: ModelParams,
    c: CaseId,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    *,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> DiffusionValue:
    """Evaluate D(t), turning caustics and quadrature failures into a gap value."""
    method = DiffusionMethod(method)
    gap: GapReason | None = None
    try:
        value = math.fsum(diffusion_terms(t, p, c, method, prefactor_scope=prefactor_scope, spec=spec))
    except CausticError as e:
        logger.warning("Case %s: caustic at t=%r, point left as a gap (%s)", CaseId(c).value, t, e)
        value, gap = math.nan, GAP_CAUSTIC
    except QuadratureError as e:
        logger.warning("Case %s: quadrature failed at t=%r, point left as a gap (%s)", CaseId(c).value, t, e)
        value, gap = math.nan, GAP_QUADRATURE
    return DiffusionValue(t=t, value=value, case=CaseId(c), method=method, gap=gap)


def diffusion_series(
    horizon: float,
    n: int,
    p: ModelParams,
    c: CaseId,
    method: DiffusionMethod = DiffusionMethod.CLOSED_FORM,
    *,
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH,
    workers: int = 1,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> TimeSeries:
    """
    Sample D on n equally spaced times of [0, horizon].

    Points that cannot be evaluated hold NaN and are listed as gaps. With
    ``workers`` > 1 the points are evaluated on a thread pool; the result is
    identical to sequential evaluation.
    """
    if workers < 1:
        msg = f"workers must be at least 1, got {workers!r}"
        raise ValueError(msg)
    times = [float(t) for t in uniform_grid(horizon, n)]

    def evaluate(t: float) -> DiffusionValue:
        return diffusion_value(t, p, c, method, prefactor_scope=prefactor_scope, spec=spec)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(evaluate, times))
    else:
        results = [evaluate(t) for t in times]

    gaps = tuple(GapRecord(index=i, time=r.t, reason=r.gap) for i, r in enumerate(results) if r.gap is not None)
    if gaps:
        logger.warning("Case %s: %d of %d points are gaps", CaseId(c).value, len(gaps), n)
    logger.debug("Sampled D for case %s (%s) on %d points up to t=%s", CaseId(c).value, DiffusionMethod(method).value, n, horizon)
    return TimeSeries.on_horizon(horizon, np.array([r.value for r in results]), gaps)


def a_is_inverted(c: CaseId) -> bool:
    """Return True for the cases whose subsystem A is an upside-down oscillator."""
    return case_kinds(c)[0] is OscillatorKind.INVERTED
