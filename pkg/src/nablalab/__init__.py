"""Finite ∇-algebras, their Kripke and spectral duals, radical-ideal lattices
of finite rings, and a sequent calculus with proof search and countermodels."""

__version__ = "0.1.0"
