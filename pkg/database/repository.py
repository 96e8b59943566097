"""Repository layer for the bundled data files."""
import json
from pathlib import Path
from typing import Any

from logic.config import settings
from logic.logging_config import configured_logger as logger
from qvn.utils.exceptions import IoError, ParseError
from qvn.utils.file_handler import FileHandler

SPECIES_FILE = "species.json"


def data_dir() -> Path:
    """
    Directory holding the species database and layout presets.

    Returns:
        Path: ``QVN_DATA_DIR`` when set, the bundled ``database/data`` otherwise
    """
    return Path(settings.DATA_DIR)


def preset_path(name: str) -> Path:
    return data_dir() / f"{name}.json"


def species_path() -> Path:
    return data_dir() / SPECIES_FILE


def read_json(path: str | Path) -> Any:
    """
    Read a JSON document.

    Args:
        path: File to read

    Returns:
        Any: Decoded JSON value

    Raises:
        IoError: The file is missing or unreadable
        ParseError: The file is not valid JSON
    """
    path = Path(path)
    if not FileHandler.validate_file_path(path):
        logger.error(f"Cannot read {path}: not a file")
        raise IoError(f"Cannot read {path}: not a file", path=str(path))
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot read {path}: {e}")
        raise IoError(f"Cannot read {path}: {e}", path=str(path)) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}", path=str(path)) from e


def write_json(path: str | Path, document: Any) -> Path:
    """Write a JSON document with stable key order."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot write {path}: {e}")
        raise IoError(f"Cannot write {path}: {e}", path=str(path)) from e
    logger.info(f"Wrote {path}")
    return path
