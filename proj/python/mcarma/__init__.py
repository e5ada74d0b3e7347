"""Python bindings for the MCARMA spectral toolkit."""

from ._mcarma import *  # noqa: F401,F403
from ._mcarma import McarmaError, Model

__all__ = [name for name in dir() if not name.startswith("_")]
