"""Defines the execution context shared by the DecoChain processing pipelines."""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from decochain.config import RunConfig
from decochain.decoherence import DecoherenceReport
from decochain.gaps import GapRecord
from decochain.model import CaseId
from decochain.types import DiffusionMethod, TimeSeries


class Command(str, Enum):
    """The pipelines that produce a result file."""

    DIFFUSION = "diffusion"
    GAMMA = "gamma"


@dataclass
class ExecutionContext:
    """A data class to hold the context for a single execution run."""

    command: Command
    config: RunConfig
    output_path: Path
    is_debug: bool = False
    diffusion: dict[tuple[CaseId, DiffusionMethod], TimeSeries] = field(default_factory=dict)
    method_gaps: dict[CaseId, float] = field(default_factory=dict)
    reports: list[DecoherenceReport] = field(default_factory=list)
    written_files: list[Path] = field(default_factory=list)

    def gap_count(self) -> int:
        """Return the number of gap points across all sampled series."""
        return len(self.gap_records())

    def gap_records(self) -> list[tuple[str, GapRecord]]:
        """Return every gap record labelled with the series it belongs to."""
        labelled = [(f"D {case.value}/{method.value}", gap) for (case, method), series in self.diffusion.items() for gap in series.gaps]
        labelled.extend((f"Gamma {report.case.value}", gap) for report in self.reports for gap in report.gamma_series.gaps)
        return labelled
