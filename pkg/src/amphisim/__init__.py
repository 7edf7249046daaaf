"""Deterministic simulator and design toolkit for a shape-morphing amphibious robot."""

__version__ = "0.1.0"
