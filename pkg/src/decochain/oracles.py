"""
Brute-force reference evaluators used by the test suite.

Nothing here calls into the production trajectory, diffusion or kernel code:
every expression is written out again, in complex arithmetic where the
frequency of B is continued to the imaginary axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Final

import numpy as np
from scipy.integrate import solve_ivp

from decochain.errors import CausticError, ContinuationError, ShootingError
from decochain.model import CaseId, ModelParams, OscillatorKind
from decochain.types import TimeSeries

if TYPE_CHECKING:
    from collections.abc import Callable

    import numpy.typing as npt

CONTINUATION_TOLERANCE: Final[float] = 1e-9
SHOOTING_TOLERANCE: Final[float] = 1e-10
SHOOTING_RTOL: Final[float] = 1e-12
SHOOTING_ATOL: Final[float] = 1e-14
_GAUSS_NODES: Final[int] = 20
_CAUSTIC: Final[float] = 1e-6


@dataclass(frozen=True)
class OracleResult:
    """A reference value with its own error estimate."""

    value: float
    method: str
    error: float


def _gauss_legendre(f: Callable[[npt.NDArray[np.float64]], npt.NDArray], a: float, b: float, panels: int) -> complex:
    nodes, weights = np.polynomial.legendre.leggauss(_GAUSS_NODES)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    x = mid[:, None] + half[:, None] * nodes[None, :]
    return complex(np.sum(half[:, None] * weights[None, :] * f(x)))


def oversampled_integral(f: Callable[[npt.NDArray[np.float64]], npt.NDArray], a: float, b: float, panels: int = 200) -> OracleResult:
    """
    Composite 20-point Gauss-Legendre rule on ``panels`` equal panels.

    The error estimate is the difference to the same rule on half as many
    panels. ``f`` must accept numpy arrays.
    """
    if a == b:
        return OracleResult(value=0.0, method="gauss_legendre", error=0.0)
    fine = _gauss_legendre(f, a, b, panels)
    coarse = _gauss_legendre(f, a, b, max(1, panels // 2))
    return OracleResult(value=fine.real, method="gauss_legendre", error=abs(fine - coarse))


def ode_boundary_solve(
    kind: OscillatorKind,
    frequency: float,
    source: Callable[[float], float],
    t: float,
    q0: float,
    qf: float,
    *,
    coupling: float = 1.0,
    n: int = 101,
    max_iterations: int = 20,
) -> TimeSeries:
    """
    Solve q'' = curvature*q + coupling*source(s), q(0)=q0, q(t)=qf by shooting.

    Each shot is a DOP853 initial value solve; a secant iteration adjusts the
    initial velocity.

    Raises:
        CausticError: For a harmonic oscillator whose horizon is a caustic.
        ShootingError: If the far boundary is not hit within max_iterations.

    """
    kind = OscillatorKind(kind)
    if kind is OscillatorKind.HARMONIC and abs(math.sin(frequency * t)) < _CAUSTIC:
        raise CausticError(t, frequency)
    curvature = frequency**2 if kind is OscillatorKind.INVERTED else -(frequency**2)
    grid = np.linspace(0.0, t, n)

    def rhs(time: float, y: npt.NDArray[np.float64]) -> list[float]:
        return [y[1], curvature * y[0] + coupling * source(time)]

    def shoot(v0: float) -> npt.NDArray[np.float64]:
        solution = solve_ivp(rhs, (0.0, t), [q0, v0], method="DOP853", t_eval=grid, rtol=SHOOTING_RTOL, atol=SHOOTING_ATOL)
        if not solution.success:
            msg = f"Initial value solve failed: {solution.message}"
            raise ShootingError(msg)
        return solution.y[0]

    v_prev, v_curr = 0.0, (qf - q0) / t
    miss_prev = shoot(v_prev)[-1] - qf
    for _ in range(max_iterations):
        path = shoot(v_curr)
        miss = path[-1] - qf
        if abs(miss) <= SHOOTING_TOLERANCE:
            return TimeSeries.on_horizon(t, path)
        if miss == miss_prev:
            break
        v_prev, v_curr, miss_prev = v_curr, v_curr - miss * (v_curr - v_prev) / (miss - miss_prev), miss
    msg = f"Shooting did not reach q(t)={qf!r} within {max_iterations} iterations (kind={kind.value}, frequency={frequency!r}, t={t!r})"
    raise ShootingError(msg)


def complex_continuation_eval(evaluate: Callable[[complex], complex], frequency: float, *, tolerance: float = CONTINUATION_TOLERANCE) -> OracleResult:
    """
    Evaluate an expression written for an upside-down B at the imaginary frequency i*frequency.

    Raises:
        ContinuationError: If the imaginary part exceeds ``tolerance`` times the real part.

    """
    value = complex(evaluate(1j * frequency))
    residue = abs(value.imag) / abs(value.real) if value.real != 0 else (0.0 if value.imag == 0 else math.inf)
    if abs(value.imag) > tolerance * abs(value.real):
        msg = f"Continued expression keeps an imaginary part {value.imag!r} against real part {value.real!r}"
        raise ContinuationError(msg, residue=residue)
    return OracleResult(value=value.real, method="continuation", error=abs(value.imag))


def _bracket_a(s: npt.NDArray, t: float, w: float, big_w: complex) -> tuple[npt.NDArray, npt.NDArray]:
    """Response bracket and its horizon derivative for harmonic A, upside-down B."""
    sh_s, ch_s = np.sinh(big_w * s), np.cosh(big_w * s)
    sh_t, ch_t = cmath.sinh(big_w * t), cmath.cosh(big_w * t)
    cos_t, sin_t = math.cos(w * t), math.sin(w * t)
    b1 = sh_s / sh_t * (ch_t * cos_t - 1.0) - ch_s * cos_t + np.cos(w * (t - s))
    b2 = big_w * (sh_s * ch_t / sh_t**2 * (1.0 - ch_t * cos_t) + sh_s * cos_t) + w * (-sh_s * sin_t * ch_t / sh_t - np.sin(w * (t - s)) + sin_t * ch_s)
    return b1, b2


def _bracket_b(s: npt.NDArray, t: float, w: float, big_w: complex) -> tuple[npt.NDArray, npt.NDArray]:
    """Response bracket and its horizon derivative for upside-down A, harmonic B."""
    sn_s, cs_s = np.sin(big_w * s), np.cos(big_w * s)
    sn_t, cs_t = cmath.sin(big_w * t), cmath.cos(big_w * t)
    ch_t, sh_t = math.cosh(w * t), math.sinh(w * t)
    b1 = sn_s / sn_t * (cs_t * ch_t - 1.0) - cs_s * ch_t + np.cosh(w * (t - s))
    b2 = big_w * (sn_s * cs_t / sn_t**2 * (1.0 - cs_t * ch_t) - sn_s * ch_t) + w * (sn_s * cs_t * sh_t / sn_t - cs_s * sh_t + np.sinh(w * (t - s)))
    return b1, b2


def _overlap_a(v: npt.NDArray, w: float, big_w: complex) -> npt.NDArray:
    return np.cosh(big_w * v) * np.cos(w * v)


def _overlap_b(v: npt.NDArray, w: float, big_w: complex) -> npt.NDArray:
    return np.cos(big_w * v) * np.cosh(w * v)


def _complex_diffusion(t: float, p: ModelParams, big_w: complex, *, upside_down_b: bool, panels: int) -> complex:
    """D(t) of case a (upside_down_b) or b, with B's frequency allowed complex."""
    if t == 0:
        return 0j
    w = p.omega
    bracket = _bracket_a if upside_down_b else _bracket_b
    overlap = _overlap_a if upside_down_b else _overlap_b
    k_sq = (w * w + big_w * big_w) ** 2

    def bath_integrand(s: npt.NDArray) -> npt.NDArray:
        b1, b2 = bracket(s, t, w, big_w)
        return b1 * b2

    bath = 0j
    if p.gamma0 * p.kT != 0 and p.lambda_c != 0:
        bath = 2.0 * p.gamma0 * p.kT * p.lambda_c**2 / p.hbar * _gauss_legendre(bath_integrand, 0.0, t, panels) / k_sq
    real_w = p.omega_B
    prefactor = real_w**2 / (w * w + real_w * real_w) ** 2
    packet = prefactor * p.lambda_c**2 * p.sigma / (32.0 * p.hbar) * _gauss_legendre(lambda v: overlap(v, w, big_w), 0.0, t, panels)
    return bath + packet


def oracle_diffusion(t: float, p: ModelParams, case: CaseId, *, panels: int = 64) -> OracleResult:
    """
    Reference D(t) for any case, with the packet term scaled by Omega^2/(omega^2+Omega^2)^2.

    Cases a and b are evaluated directly; c and d by continuing B's frequency
    of a and b to the imaginary axis.
    """
    case = CaseId(case)
    upside_down_b = case in (CaseId.A, CaseId.C)
    if case in (CaseId.A, CaseId.B):
        value = _complex_diffusion(t, p, complex(p.omega_B), upside_down_b=upside_down_b, panels=panels)
        coarse = _complex_diffusion(t, p, complex(p.omega_B), upside_down_b=upside_down_b, panels=max(1, panels // 2))
        return OracleResult(value=value.real, method="direct", error=abs(value - coarse))
    result = complex_continuation_eval(lambda big_w: _complex_diffusion(t, p, big_w, upside_down_b=upside_down_b, panels=panels), p.omega_B)
    coarse = _complex_diffusion(t, p, 1j * p.omega_B, upside_down_b=upside_down_b, panels=max(1, panels // 2))
    return OracleResult(value=result.value, method=result.method, error=abs(result.value - coarse.real) + result.error)
