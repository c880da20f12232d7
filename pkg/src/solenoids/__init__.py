"""Exact computations around solenoids, torsion-free rank-one groups and the space of group tables."""

__version__ = "0.1.0"
