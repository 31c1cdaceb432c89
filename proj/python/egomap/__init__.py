"""Reciprocal-interaction community mapping over follower/followee data.

Thin wrapper around the C++ core; see the project README for the pipeline
and file formats.
"""

from egomap._egomap import *  # noqa: F401,F403
from egomap._egomap import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
