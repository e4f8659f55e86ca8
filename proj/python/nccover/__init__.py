"""Finite noncommutative coverings: frames, lifted Dirac operators and Dixmier traces."""

from ._core import *  # noqa: F401,F403
from ._core import NccoverError, __version__

__all__ = [name for name in dir() if not name.startswith("_")]
