"""The ``kstails`` command: ``run``, ``sweep``, ``analyze`` and ``verify``.

Exit codes: 0 success, 1 internal error or failed verification check,
2 configuration or run-directory error, 3 divergence verdict (``run`` only).
"""

from kstails.cli.__main__ import (
    EXIT_CONFIG,
    EXIT_DIVERGED,
    EXIT_FAILURE,
    EXIT_OK,
    build_parser,
    main,
)

__all__ = ["EXIT_CONFIG", "EXIT_DIVERGED", "EXIT_FAILURE", "EXIT_OK", "build_parser", "main"]
