"""Multilevel university cybermetric analysis.

Thin wrapper around the C++ core: URL normalization and locus parsing,
the core/satellite x contour/internal taxonomy, search-operator query
generation, fixture-based measurement replay and the analysis report.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
