"""Custom logging utilities for the DecoChain application."""
# src/decochain/logging_utils.py

import logging
import sys
import time
from logging import FileHandler
from pathlib import Path

from . import paths


class _UtcMicrosecondFormatter(logging.Formatter):
    """Formatter whose timestamps are UTC with 6-digit microseconds and a trailing 'Z'."""

    def __init__(self, fmt: str) -> None:
        super().__init__(fmt=fmt, datefmt="%Y-%m-%dT%H:%M:%S")
        self.converter = time.gmtime

    def formatTime(self, record: logging.LogRecord, datefmt: str | None = None) -> str:  # noqa: N802
        """Format the time with 6-digit microseconds and a 'Z' for UTC."""
        ct = self.converter(record.created)
        s = time.strftime(datefmt, ct) if datefmt else time.strftime(self.default_time_format, ct)
        microseconds = int((record.created - int(record.created)) * 1_000_000)
        return f"{s}.{microseconds:06d}Z"


class ConsoleFormatter(_UtcMicrosecondFormatter):
    """Short console lines tagged with the application version."""

    def __init__(self, version: str) -> None:
        """
        Initialize the formatter with the application version.

        Args:
            version: The DecoChain application version.

        """
        super().__init__(f"%(asctime)s | DecoChain - {version} | %(message)s")


class FileFormatter(_UtcMicrosecondFormatter):
    """A detailed formatter for debug log files."""

    def __init__(self) -> None:
        """Initialize the detailed file formatter."""
        super().__init__("%(asctime)s | %(name)-24s | %(funcName)-24s:%(lineno)-4d | %(levelname)-8s | %(message)s")


def setup_logging(version: str, *, debug: bool = False, output_dir: Path | None = None) -> None:
    """
    Configure the root logger for a DecoChain run.

    Console output goes to stdout at INFO (DEBUG with ``debug``). With
    ``debug`` and an ``output_dir`` a detailed log is also written to
    '<output_dir>/logs/debug.log'.

    Args:
        version: The application version, included in console logs.
        debug: If True, enables detailed file logging and sets console level to DEBUG.
        output_dir: Directory that receives the debug log.

    """
    root_logger = logging.getLogger()
    if root_logger.hasHandlers():
        root_logger.handlers.clear()

    level = logging.DEBUG if debug else logging.INFO
    root_logger.setLevel(level)

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(level)
    console_handler.setFormatter(ConsoleFormatter(version))
    root_logger.addHandler(console_handler)

    if debug and output_dir:
        try:
            log_dir = paths.get_log_dir(output_dir)
            paths.ensure_dir_exists(log_dir)
            log_file_path = log_dir / paths.DEBUG_LOG_NAME

            file_handler = FileHandler(log_file_path, mode="w", encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(FileFormatter())
            root_logger.addHandler(file_handler)

            logging.getLogger().info("Debug mode enabled. Detailed logs will be written to %s", log_file_path)
        except Exception:
            # Console logging keeps working without the file.
            logging.getLogger().exception("Failed to create debug log file. Continuing with console logging only.")
