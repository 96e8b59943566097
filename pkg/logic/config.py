"""Configuration management for the QVN simulator and estimator."""
import os
from pathlib import Path

from dotenv import load_dotenv

from logic.logging_config import configured_logger as logger

BUNDLED_DATA_DIR = Path(__file__).resolve().parent.parent / "database" / "data"


class Settings:
    """Settings class to manage environment variables."""

    def __init__(self):
        """Initialize settings from environment variables."""
        # Load environment variables from .env file
        load_dotenv(override=True)

        # Data directory holding the species database and the preset layout
        self.DATA_DIR: Path = Path(os.getenv("QVN_DATA_DIR", str(BUNDLED_DATA_DIR)))

        # Simulation defaults
        self.DEFAULT_SEED: int = int(os.getenv("QVN_DEFAULT_SEED", "0"))
        self.DEFAULT_JOBS: int = int(os.getenv("QVN_DEFAULT_JOBS", "1"))
        self.TRACE_FORMATS: list[str] = [
            fmt.strip() for fmt in os.getenv("QVN_TRACE_FORMATS", "jsonl").split(",") if fmt.strip()
        ]

        # Layout defaults
        self.UNIT_LENGTH_M: float = float(os.getenv("QVN_UNIT_LENGTH_M", "8.0e-5"))

        # Logging configuration
        self.LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

        logger.debug(f"Settings loaded (data dir {self.DATA_DIR})")


# Create a global settings instance
settings = Settings()
