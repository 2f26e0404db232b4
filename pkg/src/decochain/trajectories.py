"""
Classical endpoint-conditioned paths of A and B, and the response of B to A.

Every path is built from the two fundamental solutions of one oscillator:
``even`` (h1, with h1(0)=1, h1'(0)=0) and ``odd`` (h2, with h2(0)=0, h2'(0)=1).
For an inverted oscillator these are cosh and sinh/f, for a harmonic one cos
and sin/f. Both satisfy h'' = curvature * h, with curvature +f^2 or -f^2.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Final

from decochain.errors import CausticError
from decochain.model import CaseId, ModelParams, OscillatorKind, case_kinds
from decochain.numerics import integrate
from decochain.types import DEFAULT_QUADRATURE, DiffusionMethod, QuadratureSpec, TimeSeries, uniform_grid

logger = logging.getLogger(__name__)

CAUSTIC_THRESHOLD: Final[float] = 1e-6
SMALL_PHASE: Final[float] = 1e-6
RESONANCE_TOLERANCE: Final[float] = 1e-8
_SERIES_PHASE: Final[float] = 1e-3


@dataclass(frozen=True)
class OscillatorBasis:
    """The fundamental solutions of one oscillator."""

    kind: OscillatorKind
    frequency: float

    def __post_init__(self) -> None:
        """Normalize the kind and reject non-positive frequencies."""
        object.__setattr__(self, "kind", OscillatorKind(self.kind))
        if not (math.isfinite(self.frequency) and self.frequency > 0):
            msg = f"Oscillator frequency must be strictly positive, got {self.frequency!r}"
            raise ValueError(msg)

    @property
    def inverted(self) -> bool:
        """Return True for an upside-down oscillator."""
        return self.kind is OscillatorKind.INVERTED

    @property
    def curvature(self) -> float:
        """Return +f^2 (inverted) or -f^2 (harmonic)."""
        return self.frequency**2 if self.inverted else -(self.frequency**2)

    def even(self, s: float) -> float:
        """Return h1(s)."""
        phase = self.frequency * s
        return math.cosh(phase) if self.inverted else math.cos(phase)

    def odd(self, s: float) -> float:
        """Return h2(s)."""
        phase = self.frequency * s
        return (math.sinh(phase) if self.inverted else math.sin(phase)) / self.frequency

    def slope(self, s: float) -> float:
        """Return h1'(s) = curvature * h2(s)."""
        return self.curvature * self.odd(s)

    def check_caustic(self, t: float) -> None:
        """
        Raise if the endpoint problem on [0, t] has no unique solution.

        Raises:
            CausticError: For a harmonic oscillator with |sin(f*t)| below the threshold.

        """
        phase = self.frequency * t
        if not self.inverted and phase >= SMALL_PHASE and abs(math.sin(phase)) < CAUSTIC_THRESHOLD:
            raise CausticError(t, self.frequency)

    def ratio(self, a: float, b: float) -> float:
        """
        Return h2(a)/h2(b), the weight of an endpoint fixed at time b seen at time a.

        Raises:
            CausticError: If b is a caustic time.

        """
        if self.frequency * b < SMALL_PHASE:
            return a / b
        self.check_caustic(b)
        return self.odd(a) / self.odd(b)


@dataclass(frozen=True)
class DrivenSourceSpec:
    """
    The difference path of A that drives B.

    The shape is A's classical path on [0, t] that ends at unit displacement
    with zero velocity, u -> even_A(t - u), scaled by ``amplitude`` (the
    endpoint separation x_f - x_f').
    """

    kind: OscillatorKind
    frequency: float
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        """Normalize the kind."""
        object.__setattr__(self, "kind", OscillatorKind(self.kind))

    @classmethod
    def for_case(cls, p: ModelParams, case: CaseId, amplitude: float = 1.0) -> DrivenSourceSpec:
        """Return the source of A for the given case."""
        return cls(kind=case_kinds(case)[0], frequency=p.omega, amplitude=amplitude)

    @cached_property
    def basis(self) -> OscillatorBasis:
        """Return the fundamental solutions of A."""
        return OscillatorBasis(self.kind, self.frequency)

    @property
    def is_zero(self) -> bool:
        """Return True when the source vanishes identically."""
        return self.amplitude == 0

    def shape(self, u: float, t: float) -> float:
        """Return the source value at time u for horizon t."""
        return self.amplitude * self.basis.even(t - u)

    def shape_rate(self, u: float, t: float) -> float:
        """Return the derivative of ``shape`` with respect to the horizon t."""
        return self.amplitude * self.basis.slope(t - u)


@dataclass(frozen=True)
class BoundaryPath:
    """A sampled classical path pinned at both ends."""

    t_final: float
    endpoint_start: float
    endpoint_end: float
    kind: OscillatorKind
    frequency: float
    samples: TimeSeries


class BoundaryResponse(ABC):
    """
    Response of B to a unit-coupling source with both endpoints held at zero.

    With F(s) = integral over [0, s] of x(u)*h2(s-u) and W = F(t), the response
    is F(s) - h2(s)/h2(t) * W. It solves q'' = curvature*q + x with q(0) = q(t) = 0.
    """

    def __init__(self, t: float, source: DrivenSourceSpec, basis: OscillatorBasis) -> None:
        """Bind the horizon, the driving source and B's basis."""
        if not (math.isfinite(t) and t > 0):
            msg = f"Response horizon must be strictly positive, got t={t!r}"
            raise ValueError(msg)
        basis.check_caustic(t)
        self.t = t
        self.source = source
        self.basis = basis

    @abstractmethod
    def convolution(self, s: float) -> float:
        """Return F(s)."""
        raise NotImplementedError

    @abstractmethod
    def convolution_rate(self, s: float) -> float:
        """Return the horizon derivative of F(s) at fixed s."""
        raise NotImplementedError

    @cached_property
    def total(self) -> float:
        """Return W = F(t)."""
        return self.convolution(self.t)

    @property
    def total_rate(self) -> float:
        """Return dW/dt = x_A(t) * h2(t) evaluated with the source at u = 0."""
        return self.source.shape(0.0, self.t) * self.basis.odd(self.t)

    def _check_time(self, s: float) -> None:
        if not 0.0 <= s <= self.t:
            msg = f"Time s={s!r} lies outside [0, {self.t!r}]"
            raise ValueError(msg)

    def value(self, s: float) -> float:
        """Return the response at time s."""
        self._check_time(s)
        if self.source.is_zero:
            return 0.0
        return self.convolution(s) - self.basis.ratio(s, self.t) * self.total

    def rate(self, s: float) -> float:
        """Return the derivative of the response with respect to the horizon t."""
        self._check_time(s)
        if self.source.is_zero:
            return 0.0
        h1_t, h2_t = self.basis.even(self.t), self.basis.odd(self.t)
        return self.convolution_rate(s) + self.basis.ratio(s, self.t) * (h1_t * self.total / h2_t - self.total_rate)


class QuadratureResponse(BoundaryResponse):
    """Response with both convolutions evaluated by adaptive quadrature."""

    def __init__(self, t: float, source: DrivenSourceSpec, basis: OscillatorBasis, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> None:
        """Bind the quadrature tolerances on top of the base arguments."""
        super().__init__(t, source, basis)
        self.spec = spec

    def convolution(self, s: float) -> float:
        """Return F(s) by quadrature."""
        return integrate(lambda u: self.source.shape(u, self.t) * self.basis.odd(s - u), 0.0, s, self.spec)

    def convolution_rate(self, s: float) -> float:
        """Return dF/dt(s) by quadrature of the source rate."""
        return integrate(lambda u: self.source.shape_rate(u, self.t) * self.basis.odd(s - u), 0.0, s, self.spec)


class ClosedFormResponse(BoundaryResponse):
    """
    Response with the convolutions in closed form.

    Away from resonance the source curvature mu differs from B's curvature nu
    and F is a combination of the three homogeneous solutions divided by
    mu - nu. At resonance the secular terms P and Q take over.
    """

    def __init__(self, t: float, source: DrivenSourceSpec, basis: OscillatorBasis) -> None:
        """Precompute the source values at the horizon."""
        super().__init__(t, source, basis)
        a = source.basis
        self._mu = a.curvature
        self._detuning = self._mu - basis.curvature
        self._resonant = abs(self._detuning) <= RESONANCE_TOLERANCE * max(abs(self._mu), abs(basis.curvature))
        self._c_t = source.amplitude * a.even(t)
        self._c_rate_t = source.amplitude * a.slope(t)

    @property
    def resonant(self) -> bool:
        """Return True when source and B share kind and frequency."""
        return self._resonant

    def _secular(self, s: float) -> tuple[float, float]:
        """Return P(s) = (h1 * h2)(s) and Q(s) = (h2 * h2)(s) as convolutions."""
        f, kappa = self.basis.frequency, self.basis.curvature
        phase = f * s
        if abs(phase) < _SERIES_PHASE:
            return s * s / 2.0 + kappa * s**4 / 12.0, s**3 / 6.0 + kappa * s**5 / 60.0
        if self.basis.inverted:
            return s * math.sinh(phase) / (2.0 * f), (phase * math.cosh(phase) - math.sinh(phase)) / (2.0 * f**3)
        return s * math.sin(phase) / (2.0 * f), (math.sin(phase) - phase * math.cos(phase)) / (2.0 * f**3)

    def convolution(self, s: float) -> float:
        """Return F(s) in closed form."""
        if self._resonant:
            p_s, q_s = self._secular(s)
            return self._c_t * p_s - self._c_rate_t * q_s
        a = self.source.basis
        amplitude = self.source.amplitude
        homogeneous = amplitude * a.even(self.t - s) - self._c_t * self.basis.even(s) + self._c_rate_t * self.basis.odd(s)
        return homogeneous / self._detuning

    def convolution_rate(self, s: float) -> float:
        """Return dF/dt(s) in closed form."""
        if self._resonant:
            p_s, q_s = self._secular(s)
            return self._c_rate_t * p_s - self._mu * self._c_t * q_s
        a = self.source.basis
        amplitude = self.source.amplitude
        homogeneous = amplitude * a.slope(self.t - s) - self._c_rate_t * self.basis.even(s) + self._mu * self._c_t * self.basis.odd(s)
        return homogeneous / self._detuning


def make_response(
    t: float,
    source: DrivenSourceSpec,
    basis: OscillatorBasis,
    method: DiffusionMethod = DiffusionMethod.QUADRATURE,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> BoundaryResponse:
    """Return the response evaluator for ``method``."""
    if DiffusionMethod(method) is DiffusionMethod.CLOSED_FORM:
        return ClosedFormResponse(t, source, basis)
    return QuadratureResponse(t, source, basis, spec)


def _check_interval(s: float, t: float) -> None:
    if not (math.isfinite(t) and t > 0):
        msg = f"Horizon must be strictly positive, got t={t!r}"
        raise ValueError(msg)
    if not 0.0 <= s <= t:
        msg = f"Time s={s!r} lies outside [0, {t!r}]"
        raise ValueError(msg)


def x_classical(s: float, t: float, x0: float, xf: float, kind: OscillatorKind, omega: float) -> float:
    """
    Classical path of A from x0 at time 0 to xf at time t.

    Raises:
        CausticError: If A is harmonic and t is a caustic time.

    """
    _check_interval(s, t)
    basis = OscillatorBasis(kind, omega)
    return x0 * basis.ratio(t - s, t) + xf * basis.ratio(s, t)


def _pinned(s: float, q0: float, qf: float, response: BoundaryResponse, coupling: float) -> float:
    basis, t = response.basis, response.t
    return q0 * basis.ratio(t - s, t) + qf * basis.ratio(s, t) + coupling * response.value(s)


def q_classical(
    s: float,
    t: float,
    q0: float,
    qf: float,
    kind: OscillatorKind,
    Omega: float,  # noqa: N803
    source: DrivenSourceSpec,
    p: ModelParams,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """
    Classical path of B from q0 to qf under the force lambda*x(s) exerted by A.

    Solves q'' = curvature*q + (lambda/M_B)*x with dissipation neglected.
    """
    _check_interval(s, t)
    response = QuadratureResponse(t, source, OscillatorBasis(kind, Omega), spec)
    return _pinned(s, q0, qf, response, p.lambda_c / p.mass_B)


def _b_basis(p: ModelParams, bkind: OscillatorKind) -> OscillatorBasis:
    return OscillatorBasis(OscillatorKind(bkind), p.omega_B)


def response(
    s: float,
    t: float,
    source: DrivenSourceSpec,
    p: ModelParams,
    bkind: OscillatorKind,
    method: DiffusionMethod = DiffusionMethod.QUADRATURE,
) -> float:
    """Unit-coupling response of B: ``g_function`` without the lambda/M_B factor."""
    _check_interval(s, t)
    return make_response(t, source, _b_basis(p, bkind), method).value(s)


def response_rate(
    s: float,
    t: float,
    source: DrivenSourceSpec,
    p: ModelParams,
    bkind: OscillatorKind,
    method: DiffusionMethod = DiffusionMethod.QUADRATURE,
) -> float:
    """Horizon derivative of ``response`` at fixed s."""
    _check_interval(s, t)
    return make_response(t, source, _b_basis(p, bkind), method).rate(s)


def g_function(s: float, t: float, source: DrivenSourceSpec, p: ModelParams, bkind: OscillatorKind) -> float:
    """
    The driven part of B's difference path, independent of B's initial conditions.

    Vanishes at s = 0 and s = t.
    """
    return p.lambda_c / p.mass_B * response(s, t, source, p, bkind)


def delta_q(s: float, t: float, dq0: float, source: DrivenSourceSpec, p: ModelParams, bkind: OscillatorKind) -> float:
    """Difference of two B paths that share the final point and start dq0 apart."""
    _check_interval(s, t)
    basis = _b_basis(p, bkind)
    return dq0 * basis.ratio(t - s, t) + g_function(s, t, source, p, bkind)


def sample_path(
    t: float,
    start: float,
    end: float,
    kind: OscillatorKind,
    frequency: float,
    n: int = 101,
    *,
    source: DrivenSourceSpec | None = None,
    p: ModelParams | None = None,
) -> BoundaryPath:
    """
    Sample a pinned classical path on n points of [0, t].

    Without a source this is A's free path; with a source (and parameters) it
    is B's driven path.
    """
    times = uniform_grid(t, n)
    if source is None:
        values = [x_classical(float(s), t, start, end, kind, frequency) for s in times]
    else:
        if p is None:
            msg = "A driven path needs the model parameters."
            raise ValueError(msg)
        evaluator = QuadratureResponse(t, source, OscillatorBasis(kind, frequency))
        coupling = p.lambda_c / p.mass_B
        values = [_pinned(float(s), start, end, evaluator, coupling) for s in times]
    logger.debug("Sampled %s path with frequency %s on %d points up to t=%s", OscillatorKind(kind).value, frequency, n, t)
    return BoundaryPath(
        t_final=t,
        endpoint_start=start,
        endpoint_end=end,
        kind=OscillatorKind(kind),
        frequency=frequency,
        samples=TimeSeries.on_horizon(t, values),
    )
