"""Parse truthy/falsey tokens and log levels from the environment or config strings."""

from __future__ import annotations

import logging
import os
from typing import Optional

TRUE_VALUES = frozenset({"1", "true", "yes", "on", "enable", "enabled"})
FALSE_VALUES = frozenset({"0", "false", "no", "off", "disable", "disabled"})

LOG_LEVEL_ENV = "KSTAILS_LOG_LEVEL"


def parse_bool_flag(value: Optional[str]) -> Optional[bool]:
    """Return True/False for known tokens; None when unset or unrecognized."""
    if value is None:
        return None
    normalized = str(value).strip().lower()
    if normalized in TRUE_VALUES:
        return True
    if normalized in FALSE_VALUES:
        return False
    return None


def log_level_from_env(default: int = logging.WARNING) -> int:
    """Level named by ``KSTAILS_LOG_LEVEL`` (``DEBUG``, ``info``, ``20``...), else ``default``."""
    raw = os.environ.get(LOG_LEVEL_ENV, "").strip()
    if not raw:
        return default
    if raw.isdigit():
        return int(raw)
    level = logging.getLevelName(raw.upper())
    return level if isinstance(level, int) else default
