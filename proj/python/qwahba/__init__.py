"""Closed-form zero-cost solutions of the two-observation Wahba problem."""

from ._core import *  # noqa: F401,F403
from ._core import Error, Quaternion, solve_two_obs

__all__ = [name for name in dir() if not name.startswith("_")]
