"""
Euler characteristic, signature, and symplectic accounting of a rational blowdown
"""

from . import accounting, report, symplectic

__all__ = ["accounting", "report", "symplectic"]
