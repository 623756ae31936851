"""Parabolic, hyperbolic and WKB diffusion in a slab with blocking walls."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
