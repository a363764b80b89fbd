"""
Main configuration module for the Dividend Barrier Pricer
Handles environment loading and Monte Carlo / fixture defaults
"""
import os
import logging
from typing import Dict, Any
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

_LOG_LEVEL = logging.getLevelName(
    os.getenv("DIVBARRIER_LOG_LEVEL", "INFO").split('#')[0].strip().upper()
)

# Setup logging (stderr, so stdout stays reserved for results)
logging.basicConfig(
    level=_LOG_LEVEL if isinstance(_LOG_LEVEL, int) else logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_FIXTURES_DIR = PROJECT_ROOT / "data" / "tables"


def _clean(value: str) -> str:
    """Remove inline comments and surrounding whitespace"""
    return value.split('#')[0].strip()


def safe_int(value: str, default: int) -> int:
    """Convert string to int, handling comments and errors"""
    if value:
        value = _clean(value)
        try:
            return int(value)
        except ValueError:
            logger.warning(f"Invalid integer value: {value}, using default: {default}")
    return default


def safe_float(value: str, default: float) -> float:
    """Convert string to float, handling comments and errors"""
    if value:
        value = _clean(value)
        try:
            return float(value)
        except ValueError:
            logger.warning(f"Invalid float value: {value}, using default: {default}")
    return default


def safe_bool(value: str, default: bool) -> bool:
    """Convert string to bool; accepts true/false, yes/no, 1/0"""
    if value:
        value = _clean(value).lower()
        if value in ("true", "yes", "1", "on"):
            return True
        if value in ("false", "no", "0", "off"):
            return False
        logger.warning(f"Invalid boolean value: {value}, using default: {default}")
    return default


class Config:
    """Configuration management for the Dividend Barrier Pricer"""

    def __init__(self):
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from environment (.env honoured)"""
        logger.debug("Loading local configuration")

        return {
            "app": {
                "name": os.getenv("APP_NAME", "Dividend Barrier Pricer"),
                "version": os.getenv("APP_VERSION", "1.0.0"),
                "debug": safe_bool(os.getenv("DIVBARRIER_DEBUG"), False),
                "log_level": _clean(os.getenv("DIVBARRIER_LOG_LEVEL", "INFO")).upper(),
            },
            "fixtures": {
                "dir": os.getenv("DIVBARRIER_FIXTURES", str(DEFAULT_FIXTURES_DIR)),
            },
            "mc": {
                "paths": safe_int(os.getenv("DIVBARRIER_MC_PATHS"), 1_000_000),
                "seed": safe_int(os.getenv("DIVBARRIER_MC_SEED"), 20240607),
                "steps_per_year": safe_int(os.getenv("DIVBARRIER_MC_STEPS_PER_YEAR"), 250),
                "workers": safe_int(os.getenv("DIVBARRIER_MC_WORKERS"), 1),
                "antithetic": safe_bool(os.getenv("DIVBARRIER_MC_ANTITHETIC"), True),
                "bridge_correction": safe_bool(os.getenv("DIVBARRIER_MC_BRIDGE"), True),
            },
        }

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot notation key"""
        keys = key.split('.')
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def get_app_config(self) -> Dict[str, Any]:
        """Get application configuration"""
        return self.config.get("app", {})

    def get_mc_config(self) -> Dict[str, Any]:
        """Get Monte Carlo defaults"""
        return self.config.get("mc", {})

    def get_fixtures_config(self) -> Dict[str, Any]:
        """Get fixture location configuration"""
        return self.config.get("fixtures", {})

    def __repr__(self) -> str:
        return f"<Config fixtures={self.get('fixtures.dir')} mc_paths={self.get('mc.paths')}>"


def get_fixtures_dir() -> Path:
    """Fixture directory; DIVBARRIER_FIXTURES is re-read on every call"""
    override = os.getenv("DIVBARRIER_FIXTURES")
    return Path(override) if override else DEFAULT_FIXTURES_DIR


# Create singleton instance
config = Config()

# Export commonly used values
APP_CONFIG = config.get_app_config()
MC_CONFIG = config.get_mc_config()
FIXTURES_CONFIG = config.get_fixtures_config()
IS_DEBUG = config.get("app.debug", False)
