"""Dunkl operators, the intertwining operator on ridge functions and sieved
Gegenbauer polynomials for dihedral groups."""

__version__ = "0.1.0"
