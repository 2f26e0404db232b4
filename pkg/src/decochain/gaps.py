"""
Gap markers for sampled series.

A sampled series keeps its uniform grid even when individual points cannot
be evaluated. Those points hold NaN and are described by a ``GapRecord``
pointing at a structured ``GapReason``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal


@dataclass(frozen=True)
class GapReason:
    """
    Why a grid point could not be evaluated.

    Attributes:
        category: The high-level category of the failure.
        code: A machine-readable identifier for the specific reason.
        message: A human-readable explanation for logs.

    """

    category: Literal["caustic", "quadrature", "domain"]
    """
    The category of the gap:
    - caustic: the harmonic two-point boundary problem is singular
    - quadrature: adaptive integration did not converge
    - domain: the point lies outside the evaluator's domain
    """

    code: str
    """Machine-readable identifier (e.g., 'sin_zero', 'no_convergence')."""

    message: str | None = None
    """Human-readable explanation for logging/debugging."""

    def __str__(self) -> str:
        """Return a human-readable representation of the gap reason."""
        if self.message:
            return f"{self.category}:{self.code} ({self.message})"
        return f"{self.category}:{self.code}"


@dataclass(frozen=True)
class GapRecord:
    """A single gap in a sampled series."""

    index: int
    time: float
    reason: GapReason


GAP_CAUSTIC = GapReason(
    category="caustic",
    code="sin_zero",
    message="Harmonic boundary problem is singular at this horizon",
)

GAP_QUADRATURE = GapReason(
    category="quadrature",
    code="no_convergence",
    message="Adaptive quadrature did not reach the requested tolerance",
)

GAP_AFTER_GAP = GapReason(
    category="domain",
    code="after_gap",
    message="Running integral is undefined after an earlier gap",
)
