"""Tests for the classical paths and the response of B."""

import cmath
import math
import unittest

import numpy as np
import pytest

from decochain.errors import CausticError
from decochain.model import CaseId, ModelParams, OscillatorKind
from decochain.numerics import second_derivative
from decochain.oracles import complex_continuation_eval, ode_boundary_solve, oversampled_integral
from decochain.trajectories import (
    ClosedFormResponse,
    DrivenSourceSpec,
    OscillatorBasis,
    QuadratureResponse,
    delta_q,
    g_function,
    q_classical,
    response,
    response_rate,
    sample_path,
    x_classical,
)
from decochain.types import DiffusionMethod

HARMONIC = OscillatorKind.HARMONIC
INVERTED = OscillatorKind.INVERTED


class TestOscillatorBasis(unittest.TestCase):
    """Test suite for the fundamental solutions."""

    def test_solutions_satisfy_equation(self) -> None:
        """1. ODE: even and odd satisfy h'' = curvature*h with their initial data."""
        for kind in (HARMONIC, INVERTED):
            basis = OscillatorBasis(kind, 1.7)
            assert basis.even(0.0) == 1.0
            assert basis.odd(0.0) == 0.0
            for s in (0.3, 1.1):
                assert second_derivative(basis.even, s) == pytest.approx(basis.curvature * basis.even(s), abs=1e-7)
                assert second_derivative(basis.odd, s) == pytest.approx(basis.curvature * basis.odd(s), abs=1e-7)

    def test_ratio_small_horizon(self) -> None:
        """2. Small Horizon: The ratio falls back to a/b when f*b is tiny."""
        assert OscillatorBasis(HARMONIC, 1.0).ratio(5e-8, 1e-7) == pytest.approx(0.5)

    def test_caustic(self) -> None:
        """3. Caustic: A harmonic horizon at a multiple of pi/f raises."""
        basis = OscillatorBasis(HARMONIC, 2.0)
        with pytest.raises(CausticError, match="Caustic"):
            basis.check_caustic(math.pi / 2.0)
        OscillatorBasis(INVERTED, 2.0).check_caustic(math.pi / 2.0)

    def test_rejects_bad_frequency(self) -> None:
        """4. Validation: Non-positive frequencies are rejected."""
        with pytest.raises(ValueError, match="strictly positive"):
            OscillatorBasis(HARMONIC, 0.0)


class TestFreePath(unittest.TestCase):
    """Test suite for the classical path of A."""

    def test_boundary_values(self) -> None:
        """1. Endpoints: The path starts at x0 and ends at xf exactly."""
        for kind in (HARMONIC, INVERTED):
            assert x_classical(0.0, 1.3, 0.4, -2.0, kind, 1.0) == 0.4
            assert x_classical(1.3, 1.3, 0.4, -2.0, kind, 1.0) == -2.0

    def test_quarter_period(self) -> None:
        """2. Harmonic: With omega*t = pi/2 the midpoint sits at sin(pi/4)."""
        t = math.pi / 2.0
        assert x_classical(t / 2.0, t, 0.0, 1.0, HARMONIC, 1.0) == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-12)

    def test_equation_of_motion(self) -> None:
        """3. Residual: x'' - curvature*x vanishes on interior points."""
        t = 1.0
        for kind, curvature in ((HARMONIC, -2.25), (INVERTED, 2.25)):

            def path(u: float, kind: OscillatorKind = kind) -> float:
                return x_classical(u, t, 0.3, 1.2, kind, 1.5)

            for s in np.linspace(0.01, t - 0.01, 101):
                assert second_derivative(path, float(s)) - curvature * path(float(s)) == pytest.approx(0.0, abs=1e-8)

    def test_caustic_horizon(self) -> None:
        """4. Caustic: omega*t = pi has no unique harmonic path."""
        with pytest.raises(CausticError):
            x_classical(0.5, math.pi, 0.0, 1.0, HARMONIC, 1.0)

    def test_outside_interval(self) -> None:
        """5. Domain: Times outside [0, t] are rejected."""
        with pytest.raises(ValueError, match="outside"):
            x_classical(1.5, 1.0, 0.0, 1.0, INVERTED, 1.0)


class TestDrivenPath(unittest.TestCase):
    """Test suite for the classical path of B under the force of A."""

    def setUp(self) -> None:
        """Set up a weakly coupled case a."""
        self.p = ModelParams(lambda_c=0.1)
        self.t = 2.0
        self.source = DrivenSourceSpec.for_case(self.p, CaseId.A)

    def test_boundary_values(self) -> None:
        """1. Endpoints: The driven path keeps both endpoints."""
        assert q_classical(0.0, self.t, 0.5, -0.25, INVERTED, 1.0, self.source, self.p) == pytest.approx(0.5, abs=1e-14)
        assert q_classical(self.t, self.t, 0.5, -0.25, INVERTED, 1.0, self.source, self.p) == pytest.approx(-0.25, abs=1e-14)

    def test_equation_of_motion(self) -> None:
        """2. Residual: q'' - Omega^2 q - (lambda/M_B) x vanishes on interior points."""
        coupling = self.p.lambda_c / self.p.mass_B
        for s in np.linspace(0.1, self.t - 0.1, 11):
            path = lambda u: q_classical(u, self.t, 0.5, -0.25, INVERTED, 1.0, self.source, self.p)  # noqa: E731
            residual = second_derivative(path, float(s), h=1e-2) - path(float(s)) - coupling * self.source.shape(float(s), self.t)
            assert residual == pytest.approx(0.0, abs=1e-6)

    def test_matches_shooting(self) -> None:
        """3. Shooting: The driven path agrees with a brute-force RK4 shooting solve."""
        oracle = ode_boundary_solve(INVERTED, 1.0, lambda u: math.cos(self.t - u), self.t, 0.5, -0.25, coupling=0.1)
        path = sample_path(self.t, 0.5, -0.25, INVERTED, 1.0, source=self.source, p=self.p)
        np.testing.assert_allclose(path.samples.values, oracle.values, atol=1e-7)

    def test_undriven_matches_shooting(self) -> None:
        """4. Free B: With a zero source the path is the free one."""
        silent = DrivenSourceSpec(HARMONIC, 1.0, amplitude=0.0)
        oracle = ode_boundary_solve(INVERTED, 1.0, lambda _: 0.0, self.t, 1.0, 0.0)
        path = sample_path(self.t, 1.0, 0.0, INVERTED, 1.0, source=silent, p=self.p)
        np.testing.assert_allclose(path.samples.values, oracle.values, atol=1e-7)

    def test_driven_sample_needs_params(self) -> None:
        """5. Validation: A driven path without parameters is rejected."""
        with pytest.raises(ValueError, match="parameters"):
            sample_path(self.t, 0.0, 0.0, INVERTED, 1.0, source=self.source)


class TestResponse(unittest.TestCase):
    """Test suite for B's driven response and the g function."""

    def test_g_vanishes_at_endpoints(self) -> None:
        """1. Endpoints: g(0, t) = g(t, t) = 0 for both kinds of B."""
        p = ModelParams(lambda_c=0.3)
        for case, bkind in ((CaseId.A, INVERTED), (CaseId.C, HARMONIC)):
            source = DrivenSourceSpec.for_case(p, case)
            assert g_function(0.0, 2.0, source, p, bkind) == pytest.approx(0.0, abs=1e-12)
            assert g_function(2.0, 2.0, source, p, bkind) == pytest.approx(0.0, abs=1e-12)

    def test_g_against_direct_convolution(self) -> None:
        """2. Interior: g matches an oversampled evaluation of its defining convolutions."""
        p = ModelParams(lambda_c=0.3, omega=1.3)
        source = DrivenSourceSpec.for_case(p, CaseId.A)
        t = 1.8

        def convolution(s: float) -> float:
            return oversampled_integral(lambda u: np.cos(1.3 * (t - u)) * np.sinh(s - u), 0.0, s, panels=20).value

        for s in (0.4, 0.9, 1.5):
            expected = 0.3 * (convolution(s) - math.sinh(s) / math.sinh(t) * convolution(t))
            assert g_function(s, t, source, p, INVERTED) == pytest.approx(expected, abs=1e-10)

    def test_closed_form_matches_quadrature(self) -> None:
        """3. Methods: Closed-form and quadrature responses agree for all cases, detuned and resonant."""
        for omega in (1.3, 1.0):
            p = ModelParams(omega=omega)
            for case, bkind in ((CaseId.A, INVERTED), (CaseId.B, HARMONIC), (CaseId.C, HARMONIC), (CaseId.D, INVERTED)):
                source = DrivenSourceSpec.for_case(p, case)
                for s in (0.0, 0.35, 1.2, 1.7):
                    quad_value = response(s, 1.7, source, p, bkind)
                    closed_value = response(s, 1.7, source, p, bkind, DiffusionMethod.CLOSED_FORM)
                    assert closed_value == pytest.approx(quad_value, rel=1e-9, abs=1e-12)
                    quad_rate = response_rate(s, 1.7, source, p, bkind)
                    closed_rate = response_rate(s, 1.7, source, p, bkind, DiffusionMethod.CLOSED_FORM)
                    assert closed_rate == pytest.approx(quad_rate, rel=1e-9, abs=1e-12)

    def test_rate_is_horizon_derivative(self) -> None:
        """4. Rate: response_rate is the t-derivative of the response at fixed s."""
        p = ModelParams(omega=1.3)
        source = DrivenSourceSpec.for_case(p, CaseId.B)
        s, t, h = 0.6, 1.4, 1e-5
        numeric = (response(s, t + h, source, p, HARMONIC) - response(s, t - h, source, p, HARMONIC)) / (2 * h)
        assert response_rate(s, t, source, p, HARMONIC) == pytest.approx(numeric, abs=1e-6)

    def test_resonance_detection(self) -> None:
        """5. Resonance: Equal kinds and frequencies select the secular branch."""
        p = ModelParams()
        resonant = ClosedFormResponse(1.0, DrivenSourceSpec.for_case(p, CaseId.C), OscillatorBasis(HARMONIC, 1.0))
        detuned = ClosedFormResponse(1.0, DrivenSourceSpec.for_case(p, CaseId.A), OscillatorBasis(INVERTED, 1.0))
        assert resonant.resonant
        assert not detuned.resonant

    def test_secular_branch_is_continuous(self) -> None:
        """6. Near Resonance: The secular branch agrees with a slightly detuned generic one."""
        basis = OscillatorBasis(INVERTED, 1.0)
        at = ClosedFormResponse(2.0, DrivenSourceSpec(INVERTED, 1.0), basis)
        near = ClosedFormResponse(2.0, DrivenSourceSpec(INVERTED, 1.0001), basis)
        assert at.resonant
        assert not near.resonant
        assert at.value(0.8) == pytest.approx(near.value(0.8), rel=1e-3)
        assert at.value(0.8) == pytest.approx(QuadratureResponse(2.0, DrivenSourceSpec(INVERTED, 1.0), basis).value(0.8), rel=1e-10)

    def test_harmonic_b_by_continuation(self) -> None:
        """7. Continuation: sinh-ratio formulas at i*Omega give the harmonic ratio."""
        basis = OscillatorBasis(HARMONIC, 1.0)
        t = 2.0
        for s in np.linspace(0.1, 1.9, 7):
            continued = complex_continuation_eval(lambda w, s=s: cmath.sinh(w * s) / cmath.sinh(w * t), 1.0)
            assert continued.value == pytest.approx(basis.ratio(float(s), t), rel=1e-9)


class TestDeltaQ(unittest.TestCase):
    """Test suite for the difference of two B paths."""

    def test_trivial_cases(self) -> None:
        """1. Zero: No initial offset and no source give zero; s = t always gives zero."""
        p = ModelParams()
        silent = DrivenSourceSpec(HARMONIC, 1.0, amplitude=0.0)
        assert delta_q(0.7, 1.5, 0.0, silent, p, INVERTED) == 0.0
        assert delta_q(1.5, 1.5, 0.4, DrivenSourceSpec.for_case(p, CaseId.A), p, INVERTED) == pytest.approx(0.0, abs=1e-12)

    def test_difference_of_paths(self) -> None:
        """2. Linearity: delta_q equals the difference of two driven paths sharing q_f."""
        p = ModelParams(lambda_c=0.4)
        t = 1.5
        for s in (0.2, 0.75, 1.3):
            first = q_classical(s, t, 0.9, 0.1, INVERTED, 1.0, DrivenSourceSpec(HARMONIC, 1.0, amplitude=1.5), p)
            second = q_classical(s, t, 0.6, 0.1, INVERTED, 1.0, DrivenSourceSpec(HARMONIC, 1.0, amplitude=0.5), p)
            difference = delta_q(s, t, 0.3, DrivenSourceSpec(HARMONIC, 1.0, amplitude=1.0), p, INVERTED)
            assert first - second == pytest.approx(difference, abs=1e-10)
