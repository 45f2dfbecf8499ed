"""Evolutionary search for homogeneous and homogeneous bent Boolean functions."""

__version__ = "0.1.0"
