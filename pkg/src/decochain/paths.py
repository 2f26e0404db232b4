"""Provides the fixed file names and output locations used by DecoChain."""

import os
import tempfile
from pathlib import Path
from typing import Final

CONFIG_FILE_NAME: Final[str] = "decochain.yaml"
LOG_SUBDIR: Final[str] = "logs"
DEBUG_LOG_NAME: Final[str] = "debug.log"
SIDECAR_SUFFIX: Final[str] = ".json"


def get_log_dir(output_dir: Path) -> Path:
    """Return the path to the log directory under an output directory."""
    return output_dir / LOG_SUBDIR


def sidecar_path(csv_path: Path) -> Path:
    """Return the JSON sidecar path that sits next to a CSV file."""
    return csv_path.with_suffix(SIDECAR_SUFFIX)


def figure_panel_path(out_dir: Path, figure_id: int, panel: str) -> Path:
    """Return ``fig<id>_<panel>.csv`` inside out_dir."""
    return out_dir / f"fig{figure_id}_{panel}.csv"


def ensure_dir_exists(path: Path) -> None:
    """Ensure a directory exists, creating it if necessary."""
    path.mkdir(parents=True, exist_ok=True)


def atomic_write_text(path: Path, content: str) -> None:
    """Write content through a temporary file in the same directory, then rename it over path."""
    ensure_dir_exists(path.parent)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(content)
        Path(tmp_name).replace(path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
