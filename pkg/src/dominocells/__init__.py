"""Domino tableau combinatorics and Kazhdan-Lusztig cells for Weyl groups of type D."""

__version__ = "0.1.0"
