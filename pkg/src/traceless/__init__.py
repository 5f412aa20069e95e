"""Traceless SU(2) character varieties and pillowcase intersection counts."""

__version__ = "0.1.0"
