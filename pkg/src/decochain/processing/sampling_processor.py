"""Processors that sample D(t) and Gamma(t) for every configured case."""

import logging

from decochain.decoherence import analyze_case
from decochain.diffusion import diffusion_series
from decochain.models import ExecutionContext
from decochain.reporting import relative_gap
from decochain.types import DiffusionMethod

from .base import Processor

__all__ = ["AgreementProcessor", "DiffusionProcessor", "GammaProcessor"]

logger = logging.getLogger(__name__)


class DiffusionProcessor(Processor):
    """Sample D for each case with each requested evaluator."""

    stage = "sample"

    def process(self, context: ExecutionContext) -> None:
        """Fill ``context.diffusion`` keyed by (case, method)."""
        config = context.config
        for case in config.cases:
            for method in config.methods:
                logger.info("Sampling D for case %s (%s) on %d points up to t=%s", case.value, method.value, config.points, config.horizon)
                context.diffusion[case, method] = diffusion_series(
                    config.horizon,
                    config.points,
                    config.params,
                    case,
                    method,
                    prefactor_scope=config.prefactor_scope,
                    workers=config.workers,
                )


class AgreementProcessor(Processor):
    """Compare the closed-form and quadrature series when both were sampled."""

    stage = "compare"

    def process(self, context: ExecutionContext) -> None:
        """Record and log the largest relative gap per case."""
        for case in context.config.cases:
            closed = context.diffusion.get((case, DiffusionMethod.CLOSED_FORM))
            quadrature = context.diffusion.get((case, DiffusionMethod.QUADRATURE))
            if closed is None or quadrature is None:
                continue
            gap = relative_gap(closed, quadrature)
            context.method_gaps[case] = gap
            logger.info("Case %s: max relative gap closed_form vs quadrature = %.3e", case.value, gap)


class GammaProcessor(Processor):
    """Compute Gamma and the decoherence-time estimates for each case."""

    stage = "gamma"

    def process(self, context: ExecutionContext) -> None:
        """Fill ``context.reports`` in case order."""
        for case in context.config.cases:
            logger.info("Computing Gamma for case %s", case.value)
            context.reports.append(analyze_case(context.config, case))
