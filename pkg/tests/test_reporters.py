"""Tests for the reporting classes."""

import unittest
from pathlib import Path

from decochain.config import RunConfig
from decochain.decoherence import DecoherenceReport
from decochain.gaps import GAP_CAUSTIC, GapRecord
from decochain.model import CaseId
from decochain.models import Command, ExecutionContext
from decochain.reporters.summary_reporter import SummaryReporter
from decochain.types import DiffusionMethod, TimeSeries


class TestSummaryReporter(unittest.TestCase):
    """Test suite for the SummaryReporter."""

    def setUp(self) -> None:
        """Set up common test data."""
        self.config = RunConfig.from_sources({"cases": ["b", "c"], "points": 3, "horizon": 1.0})
        self.reporter = SummaryReporter()

    def test_gamma_summary(self) -> None:
        """1. Gamma: Logs the decoherence times, notes and written files."""
        context = ExecutionContext(command=Command.GAMMA, config=self.config, output_path=Path("gamma.csv"))
        series = TimeSeries.on_horizon(1.0, [1.0, 0.9, 0.8])
        context.reports = [
            DecoherenceReport(case=CaseId.B, gamma_series=series, t_D_threshold=0.123456, t_D_analytic=None, notes=("Refinement skipped.",)),
        ]
        context.written_files = [Path("gamma.csv"), Path("gamma.json")]

        with self.assertLogs("decochain.reporters.summary_reporter", level="INFO") as cm:
            self.reporter.generate(context)

        output = "\n".join(cm.output)
        assert "Gamma summary" in output
        assert "Cases: b, c" in output
        assert "Case b: threshold 0.1235, analytic n/a" in output
        assert "Refinement skipped." in output
        assert "Wrote gamma.json" in output

    def test_diffusion_summary(self) -> None:
        """2. Diffusion: Logs method gaps and gap points, and no decoherence times."""
        context = ExecutionContext(command=Command.DIFFUSION, config=self.config, output_path=Path("d.csv"))
        gap = GapRecord(index=2, time=1.0, reason=GAP_CAUSTIC)
        context.diffusion[CaseId.C, DiffusionMethod.CLOSED_FORM] = TimeSeries.on_horizon(1.0, [0.0, 1.0, float("nan")], (gap,))
        context.method_gaps[CaseId.C] = 2.5e-9

        with self.assertLogs("decochain.reporters.summary_reporter", level="INFO") as cm:
            self.reporter.generate(context)

        output = "\n".join(cm.output)
        assert "Diffusion summary" in output
        assert "Decoherence times" not in output
        assert "Case c: closed_form vs quadrature max relative gap 2.500e-09" in output
        assert "Gap points: 1" in output
        assert context.gap_count() == 1
        assert "sin_zero" not in output

    def test_debug_summary_lists_gaps(self) -> None:
        """3. Debug: A debug run lists every gap point with its series and reason."""
        context = ExecutionContext(command=Command.DIFFUSION, config=self.config, output_path=Path("d.csv"), is_debug=True)
        gap = GapRecord(index=2, time=1.0, reason=GAP_CAUSTIC)
        context.diffusion[CaseId.C, DiffusionMethod.QUADRATURE] = TimeSeries.on_horizon(1.0, [0.0, 1.0, float("nan")], (gap,))

        with self.assertLogs("decochain.reporters.summary_reporter", level="INFO") as cm:
            self.reporter.generate(context)

        output = "\n".join(cm.output)
        assert "D c/quadrature: t=1.0 caustic:sin_zero" in output
        assert context.gap_records() == [("D c/quadrature", gap)]
