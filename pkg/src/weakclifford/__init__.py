"""Exact algebra for spin multipoles, Clifford and weak Clifford algebras."""

__version__ = "0.1.0"
