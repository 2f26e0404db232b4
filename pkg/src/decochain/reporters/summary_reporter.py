"""A reporter for generating concise run summaries."""

import logging

from decochain.models import Command, ExecutionContext

logger = logging.getLogger(__name__)


def _fmt(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.4g}"


class SummaryReporter:
    """Generates a concise summary of a run and logs it."""

    def generate(self, context: ExecutionContext) -> None:
        """Log a banner summary of the run to the console."""
        config = context.config
        logger.info("%s", "=" * 40)
        logger.info(" DecoChain - %s summary", context.command.value.capitalize())
        logger.info("=" * 40)
        logger.info("- Cases: %s", ", ".join(case.value for case in config.cases))
        logger.info("- Grid: %d points up to t=%s", config.points, config.horizon)
        logger.info("- Bath product gamma0*kT: %s, lambda: %s", config.params.bath_product, config.params.lambda_c)

        if context.command is Command.GAMMA:
            logger.info("--- Decoherence times (epsilon=%s) ---", config.epsilon)
            for report in context.reports:
                logger.info("- Case %s: threshold %s, analytic %s", report.case.value, _fmt(report.t_D_threshold), _fmt(report.t_D_analytic))
                for note in report.notes:
                    logger.info("    %s", note)

        for case, gap in context.method_gaps.items():
            logger.info("- Case %s: closed_form vs quadrature max relative gap %.3e", case.value, gap)

        gaps = context.gap_count()
        if gaps:
            logger.info("- Gap points: %d", gaps)
        if context.is_debug:
            for label, record in context.gap_records():
                logger.info("    %s: t=%r %s", label, record.time, record.reason)
        for path in context.written_files:
            logger.info("- Wrote %s", path)
        logger.info("-" * 40)
