"""
Scenario files, the end-to-end pipeline, reports, and the acceptance suite
"""

from . import acceptance, expected, pipeline, report, schema

__all__ = ["acceptance", "expected", "pipeline", "report", "schema"]
