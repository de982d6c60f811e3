"""Exact computations around sums of consecutive k-th powers that are perfect powers."""

__version__ = "0.1.0"
