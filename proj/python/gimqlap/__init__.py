"""Meshless GIMQ collocation for fractional and classical Laplacians.

Thin re-export of the compiled extension; everything lives in C++.
"""

from ._gimqlap import *  # noqa: F401,F403
