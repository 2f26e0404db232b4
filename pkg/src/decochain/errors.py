"""Exception hierarchy for DecoChain."""

from __future__ import annotations


class DecoChainError(Exception):
    """Base class for all errors raised by DecoChain."""


class NumericalError(DecoChainError):
    """A numerical evaluation could not produce a trustworthy value."""


class QuadratureError(NumericalError):
    """
    Adaptive quadrature did not reach the requested tolerance.

    Attributes:
        estimate: The best estimate of the integral at the point of failure.
        residual: The absolute error estimate reported by the integrator.

    """

    def __init__(self, message: str, *, estimate: float, residual: float) -> None:
        """Store the best estimate and residual alongside the message."""
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual


class CausticError(NumericalError):
    """The two-point boundary problem of a harmonic oscillator is singular at this horizon."""

    def __init__(self, time: float, frequency: float) -> None:
        """Record the offending horizon and frequency."""
        super().__init__(f"Caustic at t={time!r}: |sin({frequency!r}*t)| is below the caustic threshold.")
        self.time = time
        self.frequency = frequency


class ShootingError(NumericalError):
    """The shooting oracle failed to hit the far boundary condition."""


class ContinuationError(NumericalError):
    """A complex-continued expression kept an imaginary part above tolerance."""

    def __init__(self, message: str, *, residue: float) -> None:
        """Store the relative imaginary residue."""
        super().__init__(message)
        self.residue = residue


class CalibrationError(NumericalError):
    """
    The coupling calibration target lies outside the bracket.

    Attributes:
        bracket: The (low, high) coupling values that were tried.
        times: The decoherence times at the two bracket endpoints (None when not reached).

    """

    def __init__(self, message: str, *, bracket: tuple[float, float], times: tuple[float | None, float | None]) -> None:
        """Store the bracket endpoints and their decoherence times."""
        super().__init__(message)
        self.bracket = bracket
        self.times = times
