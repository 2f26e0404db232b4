"""Manages the DecoChain run pipelines and the multi-run commands built on them."""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Final

from .calibration import CalibrationResult, calibrate_lambda
from .config import RunConfig
from .decoherence import analyze_case, gamma_factor
from .diffusion import diffusion_series
from .figures import FigureSpec, PanelSpec, figure_spec
from .model import CaseId, ModelParams
from .models import Command, ExecutionContext
from .paths import figure_panel_path
from .processing import AgreementProcessor, DiffusionProcessor, DiffusionWriter, GammaProcessor, GammaWriter, Processor
from .reporters import SummaryReporter
from .reporting import CALIBRATION_HEADER, DIFFUSION_HEADER, GAMMA_HEADER, SWEEP_HEADER, Row, diffusion_rows, gamma_rows, write_csv

logger = logging.getLogger(__name__)

BATH_PRODUCT_PARAM: Final[str] = "gamma0_kT"


def _execute(context: ExecutionContext, pipeline: Sequence[Processor]) -> ExecutionContext:
    for processor in pipeline:
        logger.debug("Pipeline stage %s: %s", processor.stage, processor.__class__.__name__)
        processor.process(context)
    SummaryReporter().generate(context)
    return context


def run_diffusion(config: RunConfig, output_path: Path, *, debug: bool = False) -> ExecutionContext:
    """
    Sample D(t) for every configured case and write `t,case,method,D` rows.

    With method 'both' the closed-form and quadrature series are compared and
    the largest relative gap per case is logged.
    """
    context = ExecutionContext(command=Command.DIFFUSION, config=config, output_path=output_path, is_debug=debug)
    return _execute(context, [DiffusionProcessor(), AgreementProcessor(), DiffusionWriter()])


def run_gamma(config: RunConfig, output_path: Path, *, debug: bool = False) -> ExecutionContext:
    """Sample Gamma(t) for every configured case, write it and the decoherence-time sidecar."""
    context = ExecutionContext(command=Command.GAMMA, config=config, output_path=output_path, is_debug=debug)
    return _execute(context, [GammaProcessor(), GammaWriter()])


def _panel_rows(spec: FigureSpec, panel: PanelSpec, config: RunConfig) -> list[Row]:
    params = panel.params(config.params)
    rows: list[Row] = []
    for case in panel.cases:
        if spec.quantity == "diffusion":
            series = diffusion_series(panel.horizon, config.points, params, case, config.primary_method, prefactor_scope=config.prefactor_scope)
            rows.extend(diffusion_rows(case, config.primary_method, series))
        else:
            series = gamma_factor(panel.horizon, config.points, params, case, method=config.primary_method, prefactor_scope=config.prefactor_scope, separation=config.coherence_separation)
            rows.extend(gamma_rows(case, series))
    return rows


def reproduce_figure(figure_id: int, config: RunConfig, out_dir: Path) -> list[Path]:
    """
    Write one CSV per panel of a reference figure.

    Panels are computed on a thread pool of ``config.workers`` threads; each
    file is written atomically as soon as its panel is done.

    Returns:
        The panel files in panel order.

    """
    spec = figure_spec(figure_id)
    header = DIFFUSION_HEADER if spec.quantity == "diffusion" else GAMMA_HEADER

    def build(panel: PanelSpec) -> Path:
        logger.info("Figure %d: computing panel '%s'", spec.id, panel.name)
        path = figure_panel_path(out_dir, spec.id, panel.name)
        write_csv(path, header, _panel_rows(spec, panel, config))
        return path

    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        written = list(executor.map(build, spec.panels))
    logger.info("Figure %d: wrote %d panel file(s) to %s", spec.id, len(written), out_dir)
    return written


def _with_params(config: RunConfig, params: ModelParams) -> RunConfig:
    return config.model_copy(update={"params": params})


def calibrate(
    config: RunConfig,
    case: CaseId,
    target: float,
    *,
    bracket: tuple[float, float],
    output: Path | None = None,
) -> tuple[CalibrationResult, list[Row]]:
    """
    Calibrate lambda for one case and tabulate every configured case at the result.

    Returns:
        The calibration result and the `case,lambda,t_threshold,t_analytic` rows.

    """
    result = calibrate_lambda(
        config.params,
        case,
        target,
        bracket=bracket,
        horizon=config.horizon,
        points=config.points,
        epsilon=config.epsilon,
        method=config.primary_method,
        prefactor_scope=config.prefactor_scope,
        separation=config.coherence_separation,
    )
    calibrated = _with_params(config, config.params.replace(lambda_c=result.lambda_star))
    rows: list[Row] = []
    logger.info("%s", "=" * 40)
    logger.info(" DecoChain - Calibration: lambda* = %r", result.lambda_star)
    logger.info("=" * 40)
    for other in calibrated.cases:
        report = analyze_case(calibrated, other)
        rows.append((other.value, result.lambda_star, report.t_D_threshold, report.t_D_analytic))
        logger.info("- Case %s: threshold %s, analytic %s", other.value, report.t_D_threshold, report.t_D_analytic)
    if output is not None:
        write_csv(output, CALIBRATION_HEADER, rows)
        logger.info("- Wrote %s", output)
    return result, rows


def _swept_params(params: ModelParams, name: str, value: float) -> ModelParams:
    if name == BATH_PRODUCT_PARAM:
        return params.with_bath_product(value)
    field = "lambda_c" if name == "lambda" else name
    if field not in ModelParams.model_fields:
        msg = f"Unknown sweep parameter '{name}'"
        raise ValueError(msg)
    return params.replace(**{field: value})


def sweep(config: RunConfig, name: str, values: Sequence[float], output: Path) -> list[Row]:
    """
    Recompute the per-case decoherence report for each value of one parameter.

    ``name`` is a model parameter or 'gamma0_kT' for the bath product.
    """
    rows: list[Row] = []
    for value in values:
        swept = _with_params(config, _swept_params(config.params, name, value))
        logger.info("Sweep %s=%r", name, value)
        for case in swept.cases:
            report = analyze_case(swept, case)
            rows.append((value, case.value, report.t_D_threshold, report.t_D_analytic, report.sigma_c, report.lyapunov))
    write_csv(output, SWEEP_HEADER, rows)
    logger.info("Sweep over %s: wrote %d row(s) to %s", name, len(rows), output)
    return rows
