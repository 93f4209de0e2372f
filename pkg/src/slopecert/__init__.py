"""Exact certification of slope bounds for formal connections on reductive groups."""

__version__ = "0.1.0"
