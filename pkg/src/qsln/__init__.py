"""Exact symbolic verification kernel for the quantum sl_n minor calculus.

The package builds U(sl_n) with a PBW normal form, the u-shifted matrix of
generators with its quantum minors and principal-minor tower, the truncated
evaluation currents, exact representation spectra, and the root-indexed
deformation images, and checks every identity the construction rests on at
desk scale (n <= 4) with exact rational arithmetic.
"""

__version__ = "0.1.0"
