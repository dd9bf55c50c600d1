"""Exact characteristic masses of integral lattices and invariant dimensions."""

__version__ = "0.1.0"
