"""
Plumbings of spheres: intersection matrices, Seifert invariants of the boundary, and its
fundamental group
"""

from . import graph, presentation, seifert, triviality

__all__ = ["graph", "presentation", "seifert", "triviality"]
