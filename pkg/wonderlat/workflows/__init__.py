"""
Workflow modules for wonderlat.
"""

from .sweep_pipeline import SweepPipeline, SweepResult

__all__ = [
    'SweepPipeline',
    'SweepResult'
]
