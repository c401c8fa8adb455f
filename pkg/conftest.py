"""Root pytest hook: import ``kstails`` from the checkout when it is not installed."""

from __future__ import annotations

import importlib.util
import sys
from pathlib import Path

_repo_python = Path(__file__).parent / "python"


def _installed_kstails() -> bool:
    try:
        spec = importlib.util.find_spec("kstails")
    except (ImportError, ValueError):
        return False
    return spec is not None


if _repo_python.is_dir() and not _installed_kstails():
    _repo_python_str = str(_repo_python)
    if _repo_python_str not in sys.path:
        sys.path.insert(0, _repo_python_str)
