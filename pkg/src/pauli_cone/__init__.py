"""Exact analysis of Pauli-diagonal qubit maps: spectra, PPT cone rays, decomposability."""

__version__ = "0.1.0"
