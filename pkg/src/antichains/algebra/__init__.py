"""Exact polynomials, rational functions and truncated series."""

from .poly import BETA, LAM, N, ExactPoly, binomial_poly, poly_derivative
from .rational import RationalFn, poly_gcd
from .series import TruncatedSeries, series_inv_power, series_log_correction


def substitute(expr, var: str, value):
    """Substitute into a polynomial or rational function.

    A polynomial substituted with a polynomial or number stays a
    polynomial; anything involving a rational function returns one.
    """
    if isinstance(expr, ExactPoly) and not isinstance(value, RationalFn):
        return expr.substitute(var, value)
    return RationalFn.coerce(expr).substitute(var, value)


__all__ = [
    "BETA",
    "LAM",
    "N",
    "ExactPoly",
    "RationalFn",
    "TruncatedSeries",
    "binomial_poly",
    "poly_derivative",
    "poly_gcd",
    "series_inv_power",
    "series_log_correction",
    "substitute",
]
