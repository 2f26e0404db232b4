"""Defines shared data structures and types for DecoChain."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

from decochain.gaps import GapReason, GapRecord
from decochain.model import CaseId


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """
    Samples on a uniform time grid t_k = t0 + k*dt.

    The values array is stored read-only. Points that could not be evaluated
    hold NaN and are listed in ``gaps``.
    """

    t0: float
    dt: float
    values: npt.NDArray[np.float64]
    gaps: tuple[GapRecord, ...] = ()

    def __post_init__(self) -> None:
        """Validate the grid and freeze the values."""
        if not math.isfinite(self.dt) or self.dt <= 0:
            msg = f"TimeSeries step must be positive, got dt={self.dt!r}"
            raise ValueError(msg)
        if not math.isfinite(self.t0):
            msg = f"TimeSeries origin must be finite, got t0={self.t0!r}"
            raise ValueError(msg)
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size == 0:
            msg = "TimeSeries values must not be empty."
            raise ValueError(msg)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def on_horizon(cls, horizon: float, values: npt.ArrayLike, gaps: tuple[GapRecord, ...] = ()) -> TimeSeries:
        """Build a series spanning [0, horizon] with len(values) points."""
        array = np.asarray(values, dtype=float)
        if array.size < 2:  # noqa: PLR2004
            msg = "A horizon grid needs at least two points."
            raise ValueError(msg)
        return cls(t0=0.0, dt=horizon / (array.size - 1), values=array, gaps=gaps)

    def __len__(self) -> int:
        """Return the number of samples."""
        return int(self.values.size)

    @property
    def times(self) -> npt.NDArray[np.float64]:
        """Return the grid times."""
        return self.t0 + self.dt * np.arange(self.values.size, dtype=float)

    @property
    def t_end(self) -> float:
        """Return the last grid time."""
        return self.t0 + self.dt * (self.values.size - 1)

    def with_values(self, values: npt.ArrayLike) -> TimeSeries:
        """Return a series on the same grid with new values and the same gaps."""
        return TimeSeries(t0=self.t0, dt=self.dt, values=np.asarray(values, dtype=float), gaps=self.gaps)


def uniform_grid(horizon: float, n: int) -> npt.NDArray[np.float64]:
    """Return n equally spaced times on [0, horizon]."""
    if not math.isfinite(horizon) or horizon <= 0:
        msg = f"Horizon must be positive, got {horizon!r}"
        raise ValueError(msg)
    if n < 2:  # noqa: PLR2004
        msg = f"A grid needs at least two points, got n={n!r}"
        raise ValueError(msg)
    return np.linspace(0.0, horizon, n)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for adaptive quadrature."""

    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 200

    def __post_init__(self) -> None:
        """Validate tolerances."""
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            msg = f"Quadrature tolerances must be positive, got abs_tol={self.abs_tol!r}, rel_tol={self.rel_tol!r}"
            raise ValueError(msg)
        if self.max_subdivisions < 1:
            msg = f"max_subdivisions must be at least 1, got {self.max_subdivisions!r}"
            raise ValueError(msg)


DEFAULT_QUADRATURE = QuadratureSpec()


class KernelKind(str, Enum):
    """The two-time kernels the library can sample."""

    NOISE = "noise"
    DISSIPATION = "dissipation"
    GAMMA = "gamma"
    EFF_NOISE = "eff_noise"
    EFF_DISSIPATION = "eff_dissipation"


@dataclass(frozen=True)
class KernelSample:
    """Value of a kernel at one lag."""

    lag: float
    value: float
    kind: KernelKind
    case: CaseId | None = None

    def __post_init__(self) -> None:
        """Effective kernels only exist for a given case."""
        if self.kind in (KernelKind.EFF_NOISE, KernelKind.EFF_DISSIPATION) and self.case is None:
            msg = f"Kernel kind '{self.kind.value}' requires a case."
            raise ValueError(msg)


class DiffusionMethod(str, Enum):
    """How a diffusion coefficient is evaluated."""

    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class DiffusionValue:
    """A single diffusion coefficient value; NaN when the point is a gap."""

    t: float
    value: float
    case: CaseId
    method: DiffusionMethod
    gap: GapReason | None = field(default=None)


class PrefactorScope(str, Enum):
    """Which diffusion terms carry the Omega^2/(omega^2+Omega^2)^2 prefactor."""

    BOTH = "both"
    FIRST_ONLY = "first_only"
