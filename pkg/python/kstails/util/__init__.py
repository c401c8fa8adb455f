"""Small shared helpers."""

from kstails.util.env import (
    FALSE_VALUES,
    LOG_LEVEL_ENV,
    TRUE_VALUES,
    log_level_from_env,
    parse_bool_flag,
)

__all__ = [
    "FALSE_VALUES",
    "LOG_LEVEL_ENV",
    "TRUE_VALUES",
    "log_level_from_env",
    "parse_bool_flag",
]
