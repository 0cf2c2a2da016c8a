"""Exact homological audits over graded quotients of polynomial rings."""

__version__ = "0.1.0"
