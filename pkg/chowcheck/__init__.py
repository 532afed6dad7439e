"""
chowcheck

Exact-arithmetic verification of the smoothness certificates of a
moduli space of plane point configurations with attached lines:
cross- and triple ratios over polynomial rings, the cotangent rank
check of the chart corpus, randomized oracles and the homology
coefficient trials.
"""

# unused shortcut import are intended:
# ruff: noqa: F401

__version__ = "0.4.0"

# import shortcuts
from .lib.casefile import parse_case, read_case
from .lib.cotangent import verify_case
