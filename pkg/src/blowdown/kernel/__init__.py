"""
Exact rational arithmetic, dense linear algebra, Smith normal form, and linear forms
"""

from . import forms, linalg, rendering, smith

__all__ = ["forms", "linalg", "rendering", "smith"]
