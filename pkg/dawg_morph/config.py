"""Settings from the environment and an optional .env file."""

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import find_dotenv, load_dotenv

from dawg_morph.types import DawgMode

logger = logging.getLogger(__name__)

ENV_CODING_TABLE = "DAWG_MORPH_CODING_TABLE"
ENV_STRICT = "DAWG_MORPH_STRICT"
ENV_MODE = "DAWG_MORPH_MODE"
ENV_LOG_LEVEL = "DAWG_MORPH_LOG_LEVEL"

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Defaults for CLI options; explicit options always win."""

    coding_table: Path | None = None
    strict: bool = False
    mode: DawgMode = DawgMode.DETERMINISTIC
    log_level: str = "WARNING"


def _parse_bool(name: str, raw: str | None) -> bool:
    if raw is None:
        return False
    value = raw.strip().lower()
    if value in _TRUE:
        return True
    if value not in _FALSE:
        logger.warning("Ignoring %s=%r (expected 1/0, true/false, yes/no)", name, raw)
    return False


def _parse_mode(raw: str | None) -> DawgMode:
    if not raw:
        return DawgMode.DETERMINISTIC
    try:
        return DawgMode(raw.strip().lower())
    except ValueError:
        logger.warning("Ignoring %s=%r (expected det or nondet)", ENV_MODE, raw)
        return DawgMode.DETERMINISTIC


def _parse_log_level(raw: str | None) -> str:
    if not raw:
        return "WARNING"
    level = raw.strip().upper()
    if level not in _LOG_LEVELS:
        logger.warning("Ignoring %s=%r (expected one of %s)", ENV_LOG_LEVEL, raw, _LOG_LEVELS)
        return "WARNING"
    return level


def load_settings(use_dotenv: bool = True) -> Settings:
    """Read settings from the process environment.

    Args:
        use_dotenv: Also load a .env file found from the current directory upwards
            (variables already set in the environment are not overridden)

    Returns:
        Settings with invalid values replaced by defaults
    """
    if use_dotenv:
        dotenv_path = find_dotenv(usecwd=True)
        if dotenv_path:
            load_dotenv(dotenv_path, override=False)
            logger.debug("Loaded settings from %s", dotenv_path)

    table = os.environ.get(ENV_CODING_TABLE, "").strip()
    return Settings(
        coding_table=Path(table) if table else None,
        strict=_parse_bool(ENV_STRICT, os.environ.get(ENV_STRICT)),
        mode=_parse_mode(os.environ.get(ENV_MODE)),
        log_level=_parse_log_level(os.environ.get(ENV_LOG_LEVEL)),
    )
