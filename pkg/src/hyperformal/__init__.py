"""Executable syntax, proof systems and substitution algebras for the relevant logics B and R."""

__version__ = "0.1.0"
