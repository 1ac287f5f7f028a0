"""Qudit graph codes, information location, local cloning of group-shifted
states and equientangled bases."""

__version__ = "0.1.0"
