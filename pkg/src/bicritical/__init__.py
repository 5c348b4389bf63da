"""Bi-critical toy model: expansions, coordinate changes, model sets and dynamics."""
__version__ = "0.1.0"
