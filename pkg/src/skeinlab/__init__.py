"""Homfly skein calculus: satellites, annulus eigenvectors and their invariants."""

__version__ = "0.1.0"
