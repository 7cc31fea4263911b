"""Codes over F5, Construction A lattices, and a machine-checked refutation
pipeline for self-dual [24,12,10] codes over F5."""

__version__ = "0.1.0"
