"""Bayesian retrodiction and irreversibility measures for classical maps and quantum channels."""

__version__ = "0.1.0"
