"""Numerical toolkit for singular radial AKNS operators and their linearized spectral map."""
__version__ = "0.1.0"
