"""Mod-p cohomology of compact Lie groups and obstructions to Thom surjectivity."""

__version__ = "0.1.0"
