"""Processors that write the result files of a pipeline."""

import logging

from decochain import paths
from decochain.models import ExecutionContext
from decochain.reporting import DIFFUSION_HEADER, GAMMA_HEADER, Row, diffusion_rows, gamma_rows, sidecar_payload, write_csv, write_json

from .base import Processor

__all__ = ["DiffusionWriter", "GammaWriter"]

logger = logging.getLogger(__name__)


class DiffusionWriter(Processor):
    """Write `t,case,method,D` rows, cases in order and methods interleaved per case."""

    stage = "write"

    def process(self, context: ExecutionContext) -> None:
        """Write the diffusion CSV."""
        rows: list[Row] = []
        for case in context.config.cases:
            for method in context.config.methods:
                rows.extend(diffusion_rows(case, method, context.diffusion[case, method]))
        write_csv(context.output_path, DIFFUSION_HEADER, rows)
        context.written_files.append(context.output_path)


class GammaWriter(Processor):
    """Write the Gamma CSV and its JSON sidecar of decoherence times."""

    stage = "write"

    def process(self, context: ExecutionContext) -> None:
        """Write `t,case,Gamma` rows and `<stem>.json`."""
        rows: list[Row] = []
        for report in context.reports:
            rows.extend(gamma_rows(report.case, report.gamma_series))
        write_csv(context.output_path, GAMMA_HEADER, rows)
        sidecar = paths.sidecar_path(context.output_path)
        write_json(sidecar, sidecar_payload(context.reports))
        context.written_files.extend([context.output_path, sidecar])
