"""Tropical mirror construction for complete-intersection Calabi-Yau varieties."""

__version__ = "0.1.0"
