"""Decomposition-based multi-objective optimization with pluggable reference points."""

__version__ = "0.1.0"
