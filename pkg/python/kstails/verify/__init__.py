"""Named acceptance suites run by ``kstails verify``.

Public Interfaces:
- `SUITES`: suite name -> check function; `SUITE_ORDER`: report order.
- `run_suite`, `run_suites`, `SuiteResult`, `Check`, `VerifyOptions`.
- `format_table`: the measured-vs-required table.
"""

from kstails.verify import dynamics, identities  # noqa: F401  (registers the suites)
from kstails.verify.core import (
    SUITE_ORDER,
    SUITES,
    Check,
    SuiteResult,
    VerifyOptions,
    format_table,
    run_suite,
    run_suites,
)

__all__ = [
    "SUITES",
    "SUITE_ORDER",
    "Check",
    "SuiteResult",
    "VerifyOptions",
    "format_table",
    "run_suite",
    "run_suites",
]
