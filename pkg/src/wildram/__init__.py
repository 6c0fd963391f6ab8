"""Wild ramification invariants of rank-1 Artin-Schreier sheaves."""

__version__ = "0.1.0"
