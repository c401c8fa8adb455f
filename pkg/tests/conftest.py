"""Shared pytest setup for unit and regression tests."""

from __future__ import annotations

import os

import numpy as np
from hypothesis import settings

# KSTAILS_HYPOTHESIS_PROFILE=thorough for longer property runs
settings.register_profile("default", deadline=None)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("KSTAILS_HYPOTHESIS_PROFILE", "default"))

# failure output of coefficient arrays stays readable
np.set_printoptions(precision=6, linewidth=120)
