"""Subtree counts of random labelled trees.

Exact counting kernels, certified asymptotic bounds, and Monte Carlo
estimation, backed by the C++ core.
"""

from ._subtrees import *  # noqa: F401,F403
