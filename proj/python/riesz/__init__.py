"""Python bindings for the riesz_core library."""

from ._riesz import *  # noqa: F401,F403
from ._riesz import __version__  # noqa: F401
