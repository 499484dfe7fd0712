"""Harmonic analysis on homogeneous trees.

Thin python surface over the C++ core: tree balls, boundary cells, the
spectral transform pair, operator symbol calculus, and the L^p machinery.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
