# src/config.py
import os
import logging
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Settings:
    def __init__(self):
        """Read engine settings from the environment (.env supported)."""
        self.max_degree = self._read_int("VK_MAX_DEGREE", 12, minimum=2)
        self.random_seed = self._read_int("VK_RANDOM_SEED", 1729)
        self.negative_samples = self._read_int("VK_NEGATIVE_SAMPLES", 20, minimum=1)
        self.workers = self._read_int("VK_WORKERS", 1, minimum=1)
        self.log_level = os.getenv("VK_LOG_LEVEL", "WARNING").upper()

        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ValueError(f"VK_LOG_LEVEL has unknown level '{self.log_level}'")

    @staticmethod
    def _read_int(key: str, default: int, minimum: int = None) -> int:
        raw = os.getenv(key)
        if raw is None or not raw.strip():
            return default
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{key} must be an integer, got '{raw}'")
        if minimum is not None and value < minimum:
            raise ValueError(f"{key} must be at least {minimum}, got {value}")
        return value

    def as_dict(self) -> dict:
        return {
            'max_degree': self.max_degree,
            'random_seed': self.random_seed,
            'negative_samples': self.negative_samples,
            'workers': self.workers,
            'log_level': self.log_level,
        }


settings = Settings()


def configure_logging(level: str = None):
    """Apply the configured log level to the root logger."""
    logging.basicConfig(
        level=level or settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
