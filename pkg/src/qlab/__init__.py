"""Exact formal-power-series laboratory for weighted-partition double series."""

from qlab.series import LaurentSeries, from_coeffs, monomial, polynomial

__version__ = "0.1.0"

__all__ = ["LaurentSeries", "from_coeffs", "monomial", "polynomial", "__version__"]
