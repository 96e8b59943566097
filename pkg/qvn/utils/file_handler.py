from pathlib import Path

from logic.logging_config import configured_logger as logger

PRESET_PREFIX = "preset:"
TRACE_FORMATS = {"jsonl", "csv", "svg_timeline"}
TRACE_SUFFIXES = {"jsonl": ".jsonl", "csv": ".csv", "svg_timeline": ".svg"}


class FileHandler:
    @staticmethod
    def validate_file_path(file_path: str | Path) -> bool:
        """Validate if the file path exists and is accessible."""
        try:
            path = Path(file_path)
            return path.exists() and path.is_file()
        except OSError as e:
            logger.error(f"Error validating file path {file_path}: {e}")
            return False

    @staticmethod
    def is_preset(source: str) -> bool:
        """Check whether a layout source names a bundled preset."""
        return source.startswith(PRESET_PREFIX)

    @staticmethod
    def preset_name(source: str) -> str:
        return source[len(PRESET_PREFIX):]

    @staticmethod
    def is_supported_format(fmt: str) -> bool:
        """Check if a trace format is supported."""
        return fmt in TRACE_FORMATS

    @staticmethod
    def trace_file_name(stem: str, fmt: str) -> str:
        return f"{stem}{TRACE_SUFFIXES[fmt]}"

    @staticmethod
    def create_directory(directory_path: str | Path) -> bool:
        """Create directory if it doesn't exist."""
        try:
            Path(directory_path).mkdir(parents=True, exist_ok=True)
            return True
        except OSError as e:
            logger.error(f"Error creating directory {directory_path}: {e}")
            return False
