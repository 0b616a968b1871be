"""Taut ideal triangulations, train tracks and disk diagrams."""

from ._tauttrack import *  # noqa: F401,F403
