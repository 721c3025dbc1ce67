"""
Configuration management for wonderlat.

Handles fixture/data/result locations, sweep limits and logging setup.
Uses an optional .env file for configuration management.
"""

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from wonderlat.errors import ConfigError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent


class WonderlatConfig:
    """
    Central configuration manager for wonderlat.

    Values come from environment variables, optionally seeded from a .env file.
    Variables already present in the environment win over the file.
    """

    def __init__(self, env_file: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            env_file: Path to .env file (default: .env in project root)
        """
        self.env_file = env_file or str(PROJECT_ROOT / ".env")
        self._load_env()

    def _load_env(self) -> None:
        """
        Load environment variables from .env file.
        """
        if os.path.exists(self.env_file):
            load_dotenv(self.env_file, override=False)
            logger.debug("Loaded environment from %s", self.env_file)
        else:
            logger.debug("No .env file at %s, using process environment", self.env_file)

    def _get_path(self, name: str, default: Path) -> Path:
        value = os.getenv(name)
        return Path(value).expanduser() if value else default

    def _get_int(self, name: str, default: int, minimum: int = 1) -> int:
        value = os.getenv(name)
        if value is None or value.strip() == "":
            return default
        try:
            parsed = int(value)
        except ValueError as e:
            raise ConfigError(f"{name} must be an integer, got {value!r}") from e
        if parsed < minimum:
            raise ConfigError(f"{name} must be >= {minimum}, got {parsed}")
        return parsed

    @property
    def fixtures_dir(self) -> Path:
        """Directory holding the hand-entered Cartan tables."""
        return self._get_path("WONDERLAT_FIXTURES", PROJECT_ROOT / "fixtures")

    @property
    def data_dir(self) -> Path:
        """Directory holding datum JSON files."""
        return self._get_path("WONDERLAT_DATA_DIR", PROJECT_ROOT / "data" / "datums")

    @property
    def results_dir(self) -> Path:
        """Directory receiving certificates, chains and sweep summaries."""
        return self._get_path("WONDERLAT_RESULTS_DIR", PROJECT_ROOT / "results")

    @property
    def max_rank(self) -> int:
        """Upper bound accepted for sweep ranks."""
        return self._get_int("WONDERLAT_MAX_RANK", 8)

    @property
    def workers(self) -> int:
        """Worker processes used by sweeps."""
        return self._get_int("WONDERLAT_WORKERS", 1)

    @property
    def log_level(self) -> str:
        level = os.getenv("WONDERLAT_LOG_LEVEL", "WARNING").upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigError(f"WONDERLAT_LOG_LEVEL is not a logging level: {level!r}")
        return level

    def configure_logging(self, verbose: bool = False) -> None:
        """
        Configure the root logger.

        Args:
            verbose: Force DEBUG level regardless of WONDERLAT_LOG_LEVEL
        """
        logging.basicConfig(
            level=logging.DEBUG if verbose else self.log_level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


# Global config instance
_global_config: Optional[WonderlatConfig] = None


def get_config() -> WonderlatConfig:
    """
    Get global wonderlat configuration instance.

    Returns:
        Global WonderlatConfig instance
    """
    global _global_config
    if _global_config is None:
        _global_config = WonderlatConfig()
    return _global_config


def initialize_config(env_file: Optional[str] = None) -> WonderlatConfig:
    """
    Initialize global configuration from .env file.

    Args:
        env_file: Path to .env file (default: .env in project root)

    Returns:
        Initialized WonderlatConfig instance

    Example:
        >>> config = initialize_config()
        >>> config.fixtures_dir.name
        'fixtures'
    """
    global _global_config
    _global_config = WonderlatConfig(env_file=env_file)
    return _global_config
