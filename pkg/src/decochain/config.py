"""Handles the loading, merging and validation of DecoChain run configurations."""

import copy
import logging
from pathlib import Path
from typing import Any, Final, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .decoherence import DReferencePolicy
from .model import ALL_CASES, CaseId, ModelParams
from .types import DiffusionMethod, PrefactorScope

logger = logging.getLogger(__name__)

PARAM_KEYS: Final[frozenset[str]] = frozenset({"omega", "omega_B", "lambda", "lambda_c", "gamma0", "kT", "sigma", "sigma_A", "sigma_p0", "hbar", "mass_A", "mass_B", "cutoff"})
BATH_PRODUCT_KEY: Final[str] = "bath_product"


def _deep_merge(source: dict[str, Any], destination: dict[str, Any]) -> dict[str, Any]:
    """
    Non-destructively merge two dictionaries.

    Source values overwrite destination values.
    Nested dictionaries (such as 'policy') are merged recursively.
    """
    merged = copy.deepcopy(destination)
    for key, value in source.items():
        if isinstance(value, dict) and key in merged and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(value, merged[key])
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class RunConfig(BaseModel):
    """Everything one CLI run needs: the physics and how to sample it."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    params: ModelParams = Field(default_factory=ModelParams)
    cases: list[CaseId] = Field(default_factory=lambda: list(ALL_CASES), min_length=1)
    horizon: float = Field(default=10.0, gt=0, allow_inf_nan=False)
    points: int = Field(default=4096, ge=2)
    epsilon: float = Field(default=0.01, gt=0, lt=1)
    method: Literal["closed_form", "quadrature", "both"] = "closed_form"
    prefactor_scope: PrefactorScope = PrefactorScope.BOTH
    output: str | None = None
    workers: int = Field(default=1, ge=1)
    coherence_separation: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    policy: DReferencePolicy = Field(default_factory=DReferencePolicy)

    @field_validator("cases")
    @classmethod
    def _dedupe_cases(cls, cases: list[CaseId]) -> list[CaseId]:
        """Drop repeated cases, keeping the first occurrence."""
        return list(dict.fromkeys(cases))

    @property
    def methods(self) -> tuple[DiffusionMethod, ...]:
        """Return the evaluators requested by ``method``."""
        if self.method == "both":
            return (DiffusionMethod.CLOSED_FORM, DiffusionMethod.QUADRATURE)
        return (DiffusionMethod(self.method),)

    @property
    def primary_method(self) -> DiffusionMethod:
        """Return the evaluator used for Gamma and decoherence times."""
        return self.methods[0]

    @classmethod
    def from_sources(cls, file_data: dict[str, Any] | None = None, overrides: dict[str, Any] | None = None) -> "RunConfig":
        """
        Build a validated configuration from flat file keys and command-line overrides.

        Overrides win over file values; overrides that are None are ignored.

        Raises:
            ValueError: If any field is missing, unknown or out of range.

        """
        flags = {key: value for key, value in (overrides or {}).items() if value is not None}
        merged = _deep_merge(flags, file_data or {})

        params_data = {key: merged.pop(key) for key in list(merged) if key in PARAM_KEYS}
        bath_product = merged.pop(BATH_PRODUCT_KEY, None)
        if "case" in merged:
            merged.setdefault("cases", [merged.pop("case")])
        if isinstance(merged.get("cases"), str):
            merged["cases"] = [item.strip() for item in merged["cases"].split(",") if item.strip()]

        try:
            params = ModelParams.model_validate(params_data)
            if bath_product is not None:
                params = params.with_bath_product(float(bath_product))
            config = cls(params=params, **merged)
        except ValidationError as e:
            msg = f"Invalid or missing configuration: {e}"
            raise ValueError(msg) from e
        except TypeError as e:
            msg = f"Invalid or missing configuration: {e}"
            raise ValueError(msg) from e
        logger.debug("Resolved run configuration: %s", config.model_dump_json())
        return config


def load_config(config_path: str | Path) -> dict[str, Any]:
    """
    Load the flat JSON or YAML configuration file.

    Returns:
        The raw mapping; validation happens in ``RunConfig.from_sources``.

    Raises:
        FileNotFoundError: If the config file does not exist.
        ValueError: If the file is not valid YAML/JSON or not a mapping.

    """
    path = Path(config_path)
    if not path.is_file():
        msg = f"Configuration file not found at: {config_path}"
        raise FileNotFoundError(msg)

    try:
        with path.open(encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        msg = f"Invalid or missing configuration: {e}"
        raise ValueError(msg) from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        msg = "Invalid or missing configuration: the config file must be a mapping."
        raise ValueError(msg)  # noqa: TRY004
    return data
