"""
Homology bookkeeping for curves in the plane blown up at a scripted sequence of points
"""

from . import configuration, engine, homology

__all__ = ["configuration", "engine", "homology"]
