"""
Processing pipeline components.

Each processor implements one stage of a DecoChain run: sampling,
cross-checking or writing results.
"""

from .base import Processor
from .output_processor import DiffusionWriter, GammaWriter
from .sampling_processor import AgreementProcessor, DiffusionProcessor, GammaProcessor

__all__ = [
    "AgreementProcessor",
    "DiffusionProcessor",
    "DiffusionWriter",
    "GammaProcessor",
    "GammaWriter",
    "Processor",
]
