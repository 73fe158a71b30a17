"""Exact Serre-weight combinatorics for mod p GL2 representations."""
__version__ = "0.1.0"
