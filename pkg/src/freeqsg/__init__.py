"""Exact verification toolkit for free-product quantum semigroups."""

__version__ = "0.1.0"
