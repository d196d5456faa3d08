"""
Exact certification of plane-curve contacts in Q(i, sqrt2, sqrt3)
"""

from . import curves, numbers

__all__ = ["curves", "numbers"]
