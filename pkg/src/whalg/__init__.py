"""Exact constructors and verifiers for finite-dimensional weak Hopf algebras."""

__version__ = "0.1.0"
