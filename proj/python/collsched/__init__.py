"""Collective scheduling: rules, axioms and experiments.

Job ids are 0-based. Objectives are Python ints; rates are Fractions.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
