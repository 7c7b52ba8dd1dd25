"""Discrete quantum mechanics with pure imaginary shifts.

Numerical toolkit for the |q| = 1 regime: the non-compact quantum
dilogarithm, basic hypergeometric series on the unit circle,
Casoratian-built reflectionless potentials, the exactly solvable
sinh-coordinate family, and its scattering amplitudes.
"""

from ._backend import backend_name

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "common",
    "errors",
    "gammafn",
    "qdilog",
    "qseries",
    "reflectionless",
    "scattering",
    "solvable",
    "verification",
]
