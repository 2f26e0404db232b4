"""Tests for the coupling calibration."""

import logging
import math
import unittest

import numpy as np
import pytest

from decochain.calibration import DEFAULT_BRACKET, calibrate_lambda, threshold_time
from decochain.decoherence import gamma_factor, t_dec_threshold
from decochain.errors import CalibrationError
from decochain.model import CaseId, ModelParams
from decochain.types import TimeSeries

logger = logging.getLogger(__name__)


def test_threshold_time_scales_with_coupling() -> None:
    """The unit exponent reaches -ln(epsilon)/lambda^2 at the threshold time."""
    unit = TimeSeries.on_horizon(10.0, np.linspace(0.0, 10.0, 101))
    assert threshold_time(unit, 2.0, math.exp(-4.0)) == pytest.approx(1.0, abs=1e-12)
    assert threshold_time(unit, 0.0, 0.01) is None


class TestCalibrateLambda(unittest.TestCase):
    """Test suite for the log-bisection on lambda."""

    def setUp(self) -> None:
        """Set up an isolated bath."""
        self.p = ModelParams()

    def test_hits_target(self) -> None:
        """1. Target: The calibrated lambda reproduces the target within 1%."""
        result = calibrate_lambda(self.p, CaseId.D, 5.0, horizon=12.0, points=2401)
        assert result.t_threshold == pytest.approx(5.0, rel=0.01)
        assert DEFAULT_BRACKET[0] < result.lambda_star < DEFAULT_BRACKET[1]
        gamma = gamma_factor(12.0, 2401, self.p.replace(lambda_c=result.lambda_star), CaseId.D)
        assert t_dec_threshold(gamma, 0.01) == pytest.approx(5.0, rel=0.02)

    def test_longer_target_needs_weaker_coupling(self) -> None:
        """2. Monotone: A later target calibrates to a smaller lambda."""
        early = calibrate_lambda(self.p, CaseId.D, 5.0, horizon=12.0, points=2401)
        late = calibrate_lambda(self.p, CaseId.D, 10.0, horizon=12.0, points=2401)
        assert late.lambda_star < early.lambda_star

    def test_unreachable_target(self) -> None:
        """3. Bracket: A target faster than the strongest coupling allows raises with both endpoint times."""
        with pytest.raises(CalibrationError, match="not bracketed") as excinfo:
            calibrate_lambda(self.p, CaseId.D, 1.0, horizon=12.0, points=2401)
        assert excinfo.value.bracket == DEFAULT_BRACKET
        assert excinfo.value.times[0] is None
        assert excinfo.value.times[1] == pytest.approx(4.57, abs=0.01)

    def test_case_b_then_d(self) -> None:
        """4. Cross-Case: Calibrating b to 7.7 leaves d decohering earlier at the same lambda."""
        result = calibrate_lambda(self.p, CaseId.B, 7.7, bracket=(1e-4, 20.0), horizon=10.0, points=2001)
        assert result.t_threshold == pytest.approx(7.7, rel=0.01)
        gamma_d = gamma_factor(10.0, 2001, self.p.replace(lambda_c=result.lambda_star), CaseId.D)
        t_d = t_dec_threshold(gamma_d, 0.01)
        assert t_d is not None
        assert t_d < 7.7

    def test_rejects_malformed_input(self) -> None:
        """5. Validation: Reversed brackets and non-positive targets are rejected."""
        with pytest.raises(ValueError, match="bracket"):
            calibrate_lambda(self.p, CaseId.D, 5.0, bracket=(10.0, 1.0))
        with pytest.raises(ValueError, match="Target"):
            calibrate_lambda(self.p, CaseId.D, -1.0)


WARM = ModelParams().with_bath_product(1.0)


@pytest.mark.slow
def test_warm_calibration_keeps_b_before_d(caplog: pytest.LogCaptureFixture) -> None:
    """With gamma0*kT = 1, calibrating b to 2.4 leaves d decohering later at the same coupling."""
    result = calibrate_lambda(WARM, CaseId.B, 2.4, bracket=(1e-4, 20.0), horizon=6.0, points=2401)
    assert result.t_threshold == pytest.approx(2.4, rel=0.01)

    gamma_d = gamma_factor(6.0, 2401, WARM.replace(lambda_c=result.lambda_star), CaseId.D)
    t_d = t_dec_threshold(gamma_d, 0.01)
    with caplog.at_level(logging.INFO, logger=__name__):
        logger.info("Warm calibration: lambda*=%r t_b=%r t_d=%r (reference t_d ~ 2.7)", result.lambda_star, result.t_threshold, t_d)
    assert t_d is not None
    assert t_d > result.t_threshold
    assert "Warm calibration" in caplog.text


@pytest.mark.slow
def test_detuned_reference_times(caplog: pytest.LogCaptureFixture) -> None:
    """At omega = 5*Omega the b and d threshold times at the isolated calibration are reported per bath product."""
    isolated = ModelParams()
    lambda_star = calibrate_lambda(isolated, CaseId.B, 7.7, bracket=(1e-4, 20.0), horizon=10.0, points=2001).lambda_star
    detuned = isolated.replace(omega=5.0, omega_B=1.0, lambda_c=lambda_star)
    horizon = 3.0

    with caplog.at_level(logging.INFO, logger=__name__):
        for product, reference in ((0.0, "b ~ 3.0, d ~ 2.7"), (1.0, "b, d ~ 0.1"), (100.0, "b, d ~ 0.6")):
            params = detuned.with_bath_product(product)
            times = {case: t_dec_threshold(gamma_factor(horizon, 1201, params, case), 0.01) for case in (CaseId.B, CaseId.D)}
            logger.info("omega=5*Omega, gamma0*kT=%r: t_b=%r t_d=%r (reference %s)", product, times[CaseId.B], times[CaseId.D], reference)
            for value in times.values():
                assert value is None or 0.0 < value <= horizon

    assert caplog.text.count("omega=5*Omega") == 3
