"""Tests for the numerical primitives."""

import math
import unittest
from unittest.mock import patch

import numpy as np
import pytest

from decochain.diffusion import diffusion_closed, diffusion_series
from decochain.errors import QuadratureError
from decochain.model import CaseId, ModelParams
from decochain.numerics import cumulative_integral, derivative, find_first_crossing, integrate, sample, second_derivative
from decochain.oracles import oversampled_integral
from decochain.types import QuadratureSpec, TimeSeries


class TestIntegrate(unittest.TestCase):
    """Test suite for adaptive quadrature."""

    def test_polynomial_is_exact(self) -> None:
        """1. Polynomials: Linear and cubic integrands are exact."""
        assert integrate(lambda x: x, 0.0, 1.0) == pytest.approx(0.5, abs=1e-15)
        assert integrate(lambda x: x**3 - 2 * x + 1, -1.0, 2.0) == pytest.approx(3.75, rel=1e-12)

    def test_sine_half_period(self) -> None:
        """2. Antiderivative: sin over [0, pi] integrates to 2."""
        assert integrate(math.sin, 0.0, math.pi) == pytest.approx(2.0, rel=1e-12)

    def test_gaussian_against_oversampled_rule(self) -> None:
        """3. Gaussian: Matches sqrt(pi)/2 and the oversampled fixed-grid rule."""
        value = integrate(lambda x: math.exp(-x * x), 0.0, 5.0)
        oracle = oversampled_integral(lambda x: np.exp(-x * x), 0.0, 5.0, panels=50)
        assert value == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-10)
        assert value == pytest.approx(oracle.value, abs=1e-12)

    def test_empty_and_reversed_ranges(self) -> None:
        """4. Bounds: a == b gives 0; a > b is rejected."""
        assert integrate(math.exp, 1.5, 1.5) == 0.0
        with pytest.raises(ValueError, match="a <= b"):
            integrate(math.exp, 2.0, 1.0)

    def test_cosine_weight(self) -> None:
        """5. Oscillatory Weight: f(x)*cos(w*x) is integrated by the weighted rule."""
        assert integrate(lambda _: 1.0, 0.0, 1.0, weight="cos", frequency=3.0) == pytest.approx(math.sin(3.0) / 3.0, rel=1e-12)
        assert integrate(lambda _: 1.0, 0.0, 1.0, weight="sin", frequency=0.0) == 0.0

    def test_non_convergence_raises_with_estimate(self) -> None:
        """6. Failure: Too few subdivisions raise a QuadratureError carrying the estimate."""
        spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-13, max_subdivisions=1)
        with pytest.raises(QuadratureError) as excinfo:
            integrate(lambda x: math.sin(50 * x) * math.exp(x), 0.0, 10.0, spec)
        assert math.isfinite(excinfo.value.estimate)
        assert excinfo.value.residual > 0

    @patch("decochain.numerics.quad", return_value=(1.25, 0.5, {}, "The maximum number of subdivisions (200) has been achieved."))
    def test_quadpack_warning_is_an_error(self, _mock_quad: object) -> None:
        """7. Failure: Any QUADPACK message turns into a QuadratureError."""
        with pytest.raises(QuadratureError, match="maximum number of subdivisions") as excinfo:
            integrate(math.cos, 0.0, 1.0)
        assert excinfo.value.estimate == 1.25
        assert excinfo.value.residual == 0.5


class TestCumulativeIntegral(unittest.TestCase):
    """Test suite for cumulative trapezoid integration."""

    def test_constant_series(self) -> None:
        """1. Constant: c(t_k) = 0.1*k for a unit series with dt = 0.1."""
        series = TimeSeries(t0=0.0, dt=0.1, values=np.ones(11))
        result = cumulative_integral(series)
        np.testing.assert_allclose(result.values, 0.1 * np.arange(11), atol=1e-15)
        assert result.values[0] == 0.0
        assert result.dt == series.dt

    def test_linear_series(self) -> None:
        """2. Linear: The integral of t over [0, 1] is 0.5."""
        series = TimeSeries.on_horizon(1.0, np.linspace(0.0, 1.0, 101))
        assert cumulative_integral(series).values[-1] == pytest.approx(0.5, abs=1e-12)

    def test_linearity(self) -> None:
        """3. Linearity: c(a*s1 + b*s2) = a*c(s1) + b*c(s2) to machine precision."""
        rng = np.random.default_rng(7)
        s1, s2 = rng.normal(size=64), rng.normal(size=64)
        combined = cumulative_integral(TimeSeries(t0=0.0, dt=0.05, values=2.0 * s1 - 3.0 * s2)).values
        separate = 2.0 * cumulative_integral(TimeSeries(t0=0.0, dt=0.05, values=s1)).values - 3.0 * cumulative_integral(TimeSeries(t0=0.0, dt=0.05, values=s2)).values
        np.testing.assert_allclose(combined, separate, rtol=1e-12, atol=1e-13)

    def test_nan_propagates(self) -> None:
        """4. Gaps: Every value after a NaN sample is NaN."""
        result = cumulative_integral(TimeSeries(t0=0.0, dt=1.0, values=[1.0, 1.0, math.nan, 1.0]))
        assert result.values[1] == 1.0
        assert np.isnan(result.values[2:]).all()

    def test_sampled_diffusion_matches_adaptive_integral(self) -> None:
        """5. Diffusion: Cumulative D_a agrees with adaptive quadrature of the closed form."""
        params = ModelParams(lambda_c=1.0)
        series = diffusion_series(2.0, 2001, params, CaseId.A)
        reference = integrate(lambda t: diffusion_closed(t, params, CaseId.A), 0.0, 2.0, QuadratureSpec(abs_tol=1e-14, rel_tol=1e-10))
        assert cumulative_integral(series).values[-1] == pytest.approx(reference, rel=1e-4)


class TestFindFirstCrossing(unittest.TestCase):
    """Test suite for threshold crossing search."""

    def test_exponential_decay(self) -> None:
        """1. Falling: e^-t crosses 1/e at t = 1 within one step."""
        series = TimeSeries.on_horizon(3.0, np.exp(-np.linspace(0.0, 3.0, 301)))
        assert find_first_crossing(series, math.exp(-1.0), "falling") == pytest.approx(1.0, abs=series.dt)

    def test_rising_series_has_no_falling_crossing(self) -> None:
        """2. None: A monotone rising series never crosses downwards."""
        series = TimeSeries.on_horizon(1.0, np.linspace(0.0, 1.0, 11))
        assert find_first_crossing(series, 0.5, "falling") is None
        assert find_first_crossing(series, 0.55, "rising") == pytest.approx(0.55, abs=1e-12)

    def test_crossing_lies_inside_grid(self) -> None:
        """3. Range: Any crossing found lies within [t0, t_end]."""
        series = TimeSeries(t0=2.0, dt=0.5, values=[3.0, 2.0, 0.0, -1.0])
        crossing = find_first_crossing(series, 1.0, "falling")
        assert crossing is not None
        assert series.t0 <= crossing <= series.t_end
        assert crossing == pytest.approx(2.75)

    def test_gap_pairs_are_skipped(self) -> None:
        """4. Gaps: Pairs touching a NaN never count as a crossing."""
        series = TimeSeries(t0=0.0, dt=1.0, values=[1.0, math.nan, 0.2])
        assert find_first_crossing(series, 0.5, "falling") is None

    def test_unknown_direction(self) -> None:
        """5. Validation: Unknown directions are rejected."""
        series = TimeSeries(t0=0.0, dt=1.0, values=[1.0, 0.0])
        with pytest.raises(ValueError, match="direction"):
            find_first_crossing(series, 0.5, "sideways")  # type: ignore[arg-type]


def test_derivative_of_sine() -> None:
    """The grid derivative of sin is cos."""
    series = sample(math.sin, 3.0, 3001)
    np.testing.assert_allclose(derivative(series).values, np.cos(series.times), atol=1e-5)


def test_second_derivative_stencil() -> None:
    """The five-point stencil reproduces -sin(x)."""
    assert second_derivative(math.sin, 1.0) == pytest.approx(-math.sin(1.0), abs=1e-8)


def test_time_series_validation() -> None:
    """TimeSeries rejects bad steps and freezes its values."""
    with pytest.raises(ValueError, match="step"):
        TimeSeries(t0=0.0, dt=0.0, values=[1.0])
    with pytest.raises(ValueError, match="empty"):
        TimeSeries(t0=0.0, dt=1.0, values=[])
    series = TimeSeries(t0=0.0, dt=1.0, values=[1.0, 2.0])
    with pytest.raises(ValueError, match="read-only"):
        series.values[0] = 5.0
    with pytest.raises(ValueError, match="positive"):
        QuadratureSpec(abs_tol=0.0)
