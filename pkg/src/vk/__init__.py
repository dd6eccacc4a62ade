"""Valence automata over finite and computable semigroups."""

__version__ = "0.1.0"
