"""Random k-uniform hypergraphs and high-order (j-set) connectivity."""

from ._core import *  # noqa: F401,F403
from ._core import InvalidInput, ResourceError, __doc__  # noqa: F401

__version__ = "0.1.0"
