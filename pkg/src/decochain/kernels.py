"""Bath spectral density, the exact and high-temperature bath kernels, and the effective kernels seen by A."""

from __future__ import annotations

import logging
import math
from typing import Final

import numpy as np

from decochain.model import CaseId, ModelParams, OscillatorKind, case_kinds
from decochain.numerics import integrate
from decochain.types import DEFAULT_QUADRATURE, KernelKind, KernelSample, QuadratureSpec, TimeSeries, uniform_grid

logger = logging.getLogger(__name__)

CUTOFF_MULTIPLE: Final[float] = 8.0
_SMALL_COTH_ARGUMENT: Final[float] = 1e-8


def spectral_density(w: float, p: ModelParams) -> float:
    """
    Ohmic density with a Gaussian cutoff, I(w) = 2*M_B*gamma0*w*exp(-w^2/cutoff^2).

    Raises:
        ValueError: If w is negative.

    """
    if w < 0:
        msg = f"Spectral density is defined for w >= 0, got w={w!r}"
        raise ValueError(msg)
    return 2.0 * p.mass_B * p.gamma0 * w * math.exp(-((w / p.cutoff) ** 2))


def _density_over_w(w: float, p: ModelParams) -> float:
    return 2.0 * p.mass_B * p.gamma0 * math.exp(-((w / p.cutoff) ** 2))


def _upper_limit(p: ModelParams) -> float:
    return CUTOFF_MULTIPLE * p.cutoff


def gamma_kernel(s: float, p: ModelParams, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """gamma(s) = integral of I(w)/w * cos(w*s) over [0, 8*cutoff], by weighted quadrature."""
    if p.gamma0 == 0:
        return 0.0
    return integrate(lambda w: _density_over_w(w, p), 0.0, _upper_limit(p), spec, weight="cos", frequency=abs(s))


def dissipation_kernel(s: float, p: ModelParams, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """eta(s) = d(gamma)/ds = -integral of I(w) * sin(w*s); odd in s."""
    if p.gamma0 == 0 or s == 0:
        return 0.0
    value = integrate(lambda w: spectral_density(w, p), 0.0, _upper_limit(p), spec, weight="sin", frequency=abs(s))
    return -math.copysign(value, s)


def _thermal_density(w: float, p: ModelParams) -> float:
    """I(w)*coth(hbar*w/2kT), finite at w = 0."""
    x = p.hbar * w / (2.0 * p.kT)
    # w*coth(x) -> 2kT/hbar as w -> 0
    w_coth = 2.0 * p.kT / p.hbar * (1.0 + x * x / 3.0) if x < _SMALL_COTH_ARGUMENT else w / math.tanh(x)
    return _density_over_w(w, p) * w_coth


def noise_kernel(s: float, p: ModelParams, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    nu(s) = integral of I(w)*coth(hbar*w/2kT)*cos(w*s); even in s.

    Raises:
        ValueError: If kT is not strictly positive.

    """
    if p.kT <= 0:
        msg = f"The noise kernel needs a strictly positive temperature, got kT={p.kT!r}"
        raise ValueError(msg)
    if p.gamma0 == 0:
        return 0.0
    return integrate(lambda w: _thermal_density(w, p), 0.0, _upper_limit(p), spec, weight="cos", frequency=abs(s))


def gamma_kernel_closed(s: float, p: ModelParams) -> float:
    """Exact transform of the Gaussian-cutoff density: M_B*gamma0*cutoff*sqrt(pi)*exp(-cutoff^2 s^2/4)."""
    return p.mass_B * p.gamma0 * p.cutoff * math.sqrt(math.pi) * math.exp(-((p.cutoff * s) ** 2) / 4.0)


def dissipation_kernel_closed(s: float, p: ModelParams) -> float:
    """Derivative of ``gamma_kernel_closed``."""
    return -(p.cutoff**2) * s / 2.0 * gamma_kernel_closed(s, p)


def noise_weight(p: ModelParams) -> float:
    """Weight 2*M_B*gamma0*kT/hbar of the delta-correlated high-temperature noise."""
    return 2.0 * p.mass_B * p.gamma0 * p.kT / p.hbar


def high_temperature_noise_kernel(s: float, p: ModelParams) -> float:
    """Classical limit of nu(s): (2kT/hbar) * gamma(s)."""
    return 2.0 * p.kT / p.hbar * gamma_kernel_closed(s, p)


def _b_kind(c: CaseId) -> OscillatorKind:
    return case_kinds(c)[1]


def eff_dissipation_kernel(tau: float, p: ModelParams, c: CaseId) -> float:
    """Effective dissipation kernel of A after integrating out B: lambda^2/(2 M_B Omega) times sinh or sin."""
    prefactor = p.lambda_c**2 / (2.0 * p.mass_B * p.omega_B)
    if _b_kind(c) is OscillatorKind.INVERTED:
        return prefactor * math.sinh(p.omega_B * tau)
    return prefactor * math.sin(p.omega_B * tau)


def eff_noise_kernel(tau: float, p: ModelParams, c: CaseId) -> float:
    """Effective noise kernel of A: lambda^2*sigma/(32 hbar) times cosh or cos."""
    prefactor = p.lambda_c**2 * p.sigma / (32.0 * p.hbar)
    if _b_kind(c) is OscillatorKind.INVERTED:
        return prefactor * math.cosh(p.omega_B * tau)
    return prefactor * math.cos(p.omega_B * tau)


def sample_kernel(
    kind: KernelKind,
    lag: float,
    p: ModelParams,
    case: CaseId | None = None,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> KernelSample:
    """Evaluate one kernel at ``lag`` and wrap it in a KernelSample."""
    kind = KernelKind(kind)
    if kind is KernelKind.NOISE:
        value = noise_kernel(lag, p, spec)
    elif kind is KernelKind.DISSIPATION:
        value = dissipation_kernel(lag, p, spec)
    elif kind is KernelKind.GAMMA:
        value = gamma_kernel(lag, p, spec)
    elif case is None:
        msg = f"Kernel kind '{kind.value}' requires a case."
        raise ValueError(msg)
    elif kind is KernelKind.EFF_NOISE:
        value = eff_noise_kernel(lag, p, case)
    else:
        value = eff_dissipation_kernel(lag, p, case)
    return KernelSample(lag=lag, value=value, kind=kind, case=case)


def kernel_series(
    kind: KernelKind,
    horizon: float,
    n: int,
    p: ModelParams,
    case: CaseId | None = None,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> TimeSeries:
    """Sample a kernel on n equally spaced lags of [0, horizon]."""
    lags = uniform_grid(horizon, n)
    values = np.array([sample_kernel(kind, float(lag), p, case, spec).value for lag in lags])
    logger.debug("Sampled %s kernel on %d lags up to %s", KernelKind(kind).value, n, horizon)
    return TimeSeries.on_horizon(horizon, values)
