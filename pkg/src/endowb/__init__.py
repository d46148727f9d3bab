"""Exact computations with root data, elliptic endoscopy, and transfers of test functions."""

__version__ = "0.1.0"
