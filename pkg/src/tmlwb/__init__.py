"""tmlwb - a workbench for TimeML temporal annotation corpora."""

__version__ = "0.1.0"
