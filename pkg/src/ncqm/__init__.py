"""Quantum mechanics on rotationally invariant noncommutative space, to second order in theta."""

__version__ = "0.1.0"
