"""Parameter grids of the four reference figure datasets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final, Literal

from decochain.model import ALL_CASES, CaseId, ModelParams

Quantity = Literal["diffusion", "gamma"]

EQUAL_FREQUENCIES: Final[tuple[float, float]] = (1.0, 1.0)
DETUNED_FREQUENCIES: Final[tuple[float, float]] = (5.0, 1.0)
_BATH_HORIZONS: Final[tuple[tuple[float, float], ...]] = ((0.0, 3.0), (1.0, 3.0), (100.0, 2.0))


@dataclass(frozen=True)
class PanelSpec:
    """One panel: a frequency pair, a bath product, the cases and the horizon in units of 1/omega."""

    name: str
    omega: float
    omega_B: float  # noqa: N815
    bath_product: float
    cases: tuple[CaseId, ...]
    scaled_horizon: float

    @property
    def horizon(self) -> float:
        """Return the horizon in time units (omega*t runs up to ``scaled_horizon``)."""
        return self.scaled_horizon / self.omega

    def params(self, base: ModelParams) -> ModelParams:
        """Apply the panel's frequencies and bath product to ``base``."""
        return base.replace(omega=self.omega, omega_B=self.omega_B).with_bath_product(self.bath_product)


@dataclass(frozen=True)
class FigureSpec:
    """A figure dataset: which quantity, over which panels."""

    id: int
    quantity: Quantity
    panels: tuple[PanelSpec, ...]


def _panel_name(bath_product: float, frequencies: tuple[float, float]) -> str:
    label = "equal" if frequencies == EQUAL_FREQUENCIES else "detuned"
    return f"bath{bath_product:g}_{label}"


def _bath_grid() -> tuple[PanelSpec, ...]:
    return tuple(
        PanelSpec(
            name=_panel_name(product, frequencies),
            omega=frequencies[0],
            omega_B=frequencies[1],
            bath_product=product,
            cases=ALL_CASES,
            scaled_horizon=horizon,
        )
        for product, horizon in _BATH_HORIZONS
        for frequencies in (EQUAL_FREQUENCIES, DETUNED_FREQUENCIES)
    )


def _detuned_hot_panel(scaled_horizon: float) -> tuple[PanelSpec, ...]:
    return (
        PanelSpec(
            name=_panel_name(100.0, DETUNED_FREQUENCIES),
            omega=DETUNED_FREQUENCIES[0],
            omega_B=DETUNED_FREQUENCIES[1],
            bath_product=100.0,
            cases=(CaseId.A, CaseId.C),
            scaled_horizon=scaled_horizon,
        ),
    )


def figure_spec(figure_id: int) -> FigureSpec:
    """
    Return the dataset definition of figure 1, 2, 3 or 4.

    Raises:
        ValueError: For any other id.

    """
    if figure_id == 1:
        return FigureSpec(id=1, quantity="diffusion", panels=_bath_grid())
    if figure_id == 2:  # noqa: PLR2004
        return FigureSpec(id=2, quantity="diffusion", panels=_detuned_hot_panel(12.0))
    if figure_id == 3:  # noqa: PLR2004
        return FigureSpec(id=3, quantity="gamma", panels=_bath_grid())
    if figure_id == 4:  # noqa: PLR2004
        return FigureSpec(id=4, quantity="gamma", panels=_detuned_hot_panel(30.0))
    msg = f"Figure id must be 1, 2, 3 or 4, got {figure_id!r}"
    raise ValueError(msg)
