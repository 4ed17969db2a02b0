"""Exact computation of Artin-Hasse coefficients modulo a prime, and a
verification harness for the identities and congruences they satisfy."""

__version__ = "0.1.0"
