"""The stage interface shared by the diffusion and gamma pipelines."""

from abc import ABC, abstractmethod
from typing import ClassVar

from decochain.models import ExecutionContext

__all__ = ["Processor"]


class Processor(ABC):
    """
    One stage of a run pipeline.

    Stages read the configuration from the context and add their results to
    it; later stages see everything earlier ones produced.
    """

    stage: ClassVar[str] = "stage"

    @abstractmethod
    def process(self, context: ExecutionContext) -> None:
        """Add this stage's results to ``context``."""
        raise NotImplementedError
