"""Capacitive sensor read-out interface simulator."""

from ._capsim import *  # noqa: F401,F403
from ._capsim import __doc__  # noqa: F401
