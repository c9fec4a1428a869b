"""Quantum friction and rotation of an atom moving above a surface."""

from ._qfric import *  # noqa: F401,F403
from ._qfric import __doc__  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
