"""Exact tools for the mirabolic Hall bimodule and its trace tables.

Everything here is exact: integer Laurent polynomials in v (with q = v**2),
rational linear algebra, and brute-force point counts over small prime
fields.  No floats enter any computation that feeds a table.
"""

__version__ = "0.1.0"

from .errors import MiraError

__all__ = ["MiraError", "__version__"]
