"""Metric, strong metric and doubly metric dimensions of Johnson and Kneser graphs."""

__version__ = "0.1.0"
