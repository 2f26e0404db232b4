"""Physical parameters of the composite system and the four oscillator cases."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Final

from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)

UNDERDAMPED_RATIO: Final[float] = 0.1
HIGH_TEMPERATURE_RATIO: Final[float] = 10.0
ISOLATED_GAMMA0: Final[float] = 0.0
BATH_GAMMA0: Final[float] = 0.01

_DEFAULT_SIGMA: Final[float] = 0.01
_STRICTLY_POSITIVE: Final[tuple[str, ...]] = ("omega", "omega_B", "sigma", "sigma_A", "sigma_p0", "hbar", "mass_A", "mass_B", "cutoff")
_NON_NEGATIVE: Final[tuple[str, ...]] = ("gamma0", "kT")


class OscillatorKind(str, Enum):
    """Whether a subsystem sits in a harmonic or an upside-down potential."""

    HARMONIC = "harmonic"
    INVERTED = "inverted"


class CaseId(str, Enum):
    """The four combinations of oscillator kinds for subsystems A and B."""

    A = "a"
    B = "b"
    C = "c"
    D = "d"


_CASE_KINDS: Final[dict[CaseId, tuple[OscillatorKind, OscillatorKind]]] = {
    CaseId.A: (OscillatorKind.HARMONIC, OscillatorKind.INVERTED),
    CaseId.B: (OscillatorKind.INVERTED, OscillatorKind.HARMONIC),
    CaseId.C: (OscillatorKind.HARMONIC, OscillatorKind.HARMONIC),
    CaseId.D: (OscillatorKind.INVERTED, OscillatorKind.INVERTED),
}

ALL_CASES: Final[tuple[CaseId, ...]] = tuple(CaseId)


def case_kinds(case: CaseId) -> tuple[OscillatorKind, OscillatorKind]:
    """Return the (A, B) oscillator kinds of a case."""
    return _CASE_KINDS[CaseId(case)]


class ModelParams(BaseModel):
    """
    All physical constants of subsystem A, subsystem B and the bath.

    Units follow hbar = k_B = M_A = M_B = 1 unless overridden. ``sigma`` is the
    squared-width parameter of B's initial packet, ``sigma_A`` the position
    dispersion of A's packet (defaults to ``sigma``) and ``sigma_p0`` the
    initial momentum width of A (defaults to the minimum-uncertainty value).
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True, allow_inf_nan=False)

    omega: float = Field(default=1.0, gt=0)
    omega_B: float = Field(default=1.0, gt=0)  # noqa: N815
    lambda_c: float = Field(default=0.1, ge=0, alias="lambda")
    gamma0: float = Field(default=0.0, ge=0)
    kT: float = Field(default=100.0, ge=0)  # noqa: N815
    sigma: float = Field(default=_DEFAULT_SIGMA, gt=0)
    sigma_A: float = Field(default=_DEFAULT_SIGMA, gt=0)  # noqa: N815
    sigma_p0: float = Field(default=math.sqrt(0.5), gt=0)
    hbar: float = Field(default=1.0, gt=0)
    mass_A: float = Field(default=1.0, gt=0)  # noqa: N815
    mass_B: float = Field(default=1.0, gt=0)  # noqa: N815
    cutoff: float = Field(default=50.0, gt=0)

    @model_validator(mode="before")
    @classmethod
    def _fill_packet_defaults(cls, data: Any) -> Any:  # noqa: ANN401
        """Derive sigma_A and sigma_p0 from the other fields when they are missing."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if data.get("sigma_A") is None:
            data["sigma_A"] = data.get("sigma", _DEFAULT_SIGMA)
        if data.get("sigma_p0") is None:
            hbar, mass_a, omega = data.get("hbar", 1.0), data.get("mass_A", 1.0), data.get("omega", 1.0)
            if all(isinstance(v, (int, float)) and v > 0 for v in (hbar, mass_a, omega)):
                data["sigma_p0"] = math.sqrt(hbar * mass_a * omega / 2.0)
            else:
                data.pop("sigma_p0", None)
        return data

    @property
    def bath_product(self) -> float:
        """The combination gamma0 * kT, the only way the bath enters the diffusion."""
        return self.gamma0 * self.kT

    def replace(self, **changes: float) -> ModelParams:
        """
        Return a validated copy with ``changes`` applied (field names, not aliases).

        Packet widths still sitting at their derived defaults are derived
        again from the updated fields.
        """
        data = self.model_dump()
        if "sigma_A" not in changes and self.sigma_A == self.sigma:
            data.pop("sigma_A")
        if "sigma_p0" not in changes and self.sigma_p0 == math.sqrt(self.hbar * self.mass_A * self.omega / 2.0):
            data.pop("sigma_p0")
        data.update(changes)
        return type(self).model_validate(data)

    def with_bath_product(self, product: float) -> ModelParams:
        """
        Return a copy whose gamma0 * kT equals ``product``.

        gamma0 is held at a small underdamped value and the rest goes into kT;
        a zero product switches the bath off entirely.
        """
        if not math.isfinite(product) or product < 0:
            msg = f"Bath product gamma0*kT must be a finite non-negative number, got {product!r}"
            raise ValueError(msg)
        if product == 0:
            return self.replace(gamma0=ISOLATED_GAMMA0)
        return self.replace(gamma0=BATH_GAMMA0, kT=product / BATH_GAMMA0)

    def to_schema(self) -> dict[str, float]:
        """Return the flat JSON parameter mapping (``lambda`` spelled out)."""
        return self.model_dump(by_alias=True)


@dataclass(frozen=True)
class RegimeReport:
    """Outcome of checking the underdamped and high-temperature assumptions."""

    underdamped_ok: bool
    high_T_ok: bool  # noqa: N815
    messages: tuple[str, ...] = ()


def _check_required(params: ModelParams) -> None:
    """Raise a ValueError naming the first non-finite or out-of-range field."""
    for name in (*_STRICTLY_POSITIVE, *_NON_NEGATIVE, "lambda_c"):
        value = getattr(params, name)
        if not math.isfinite(value):
            msg = f"Parameter '{name}' must be finite, got {value!r}"
            raise ValueError(msg)
        if name in _STRICTLY_POSITIVE and value <= 0:
            msg = f"Parameter '{name}' must be strictly positive, got {value!r}"
            raise ValueError(msg)
        if name in _NON_NEGATIVE and value < 0:
            msg = f"Parameter '{name}' must be non-negative, got {value!r}"
            raise ValueError(msg)


def validate(params: ModelParams) -> RegimeReport:
    """
    Check the regime assumptions behind the high-temperature closed forms.

    Regime violations only produce warnings; invalid field values raise.

    Returns:
        A RegimeReport with one message per violated assumption.

    Raises:
        ValueError: If a required field is non-finite or out of range.

    """
    _check_required(params)
    messages: list[str] = []

    slowest = min(params.omega, params.omega_B)
    underdamped_ok = params.gamma0 <= UNDERDAMPED_RATIO * slowest
    if not underdamped_ok:
        messages.append(f"gamma0={params.gamma0!r} exceeds {UNDERDAMPED_RATIO}*min(omega, omega_B)={UNDERDAMPED_RATIO * slowest!r}; the underdamped approximation is not justified.")

    fastest = max(params.omega, params.omega_B)
    high_t_ok = params.gamma0 == 0 or params.kT >= HIGH_TEMPERATURE_RATIO * params.hbar * fastest
    if not high_t_ok:
        messages.append(f"kT={params.kT!r} is below {HIGH_TEMPERATURE_RATIO}*hbar*max(omega, omega_B)={HIGH_TEMPERATURE_RATIO * params.hbar * fastest!r}; the high-temperature limit is not justified.")

    for message in messages:
        logger.warning(message)
    return RegimeReport(underdamped_ok=underdamped_ok, high_T_ok=high_t_ok, messages=tuple(messages))
