"""Topological generation of SL_n by conjugacy classes, with finite-field experiments."""

__version__ = "0.1.0"
