"""Stability laboratory for the second barycentric interpolation formula."""

from ._core import *  # noqa: F401,F403
from ._core import PoleError  # noqa: F401
