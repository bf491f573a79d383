"""Exact series for Ising correlations at the special anisotropy nu = -k."""

from .series import SeriesK, Q, qstr

__version__ = "0.1.0"
