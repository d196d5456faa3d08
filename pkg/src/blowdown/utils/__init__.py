"""
Utilities shared across the pipeline stages
"""

from . import _batch, _check

__all__ = ["_batch", "_check"]
