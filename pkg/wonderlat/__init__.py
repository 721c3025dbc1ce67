"""
wonderlat: curve and divisor lattices of wonderful varieties

This package computes Picard data of wonderful symmetric varieties and their
G-stable subvarieties, intersection pairings with curve classes, reducibility
certificates for spaces of rational curves, and the limit maps that degenerate
curves on group compactifications down to the closed orbit.
"""

from wonderlat import errors

__version__ = "0.3.0"
__description__ = "Lattice computations and reducibility certificates on wonderful varieties"

__all__ = [
    "errors",
]
