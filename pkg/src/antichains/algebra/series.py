"""Truncated power series with exact coefficients.

The coefficient ring is anything supporting ``+``, ``-`` and ``*`` with
integers (Fractions, :class:`ExactPoly`, :class:`RationalFn`).  The
coefficient pipeline uses the formal variable ``Y`` standing for
``(1-beta)**k``; auxiliary expansions use ``X``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .poly import ExactPoly, binomial_poly
from .rational import RationalFn


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


class TruncatedSeries:
    """Series sum_{i<order} coeffs[i] * marker**i, discarding degree >= order."""

    __slots__ = ("coeffs", "order", "marker")

    def __init__(self, coeffs: Sequence, order: int, marker: str = "Y"):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = list(coeffs)[:order]
        coeffs += [0] * (order - len(coeffs))
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "marker", marker)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def constant(cls, value, order: int, marker: str = "Y") -> "TruncatedSeries":
        return cls([value], order, marker)

    @classmethod
    def monomial(cls, value, degree: int, order: int, marker: str = "Y") -> "TruncatedSeries":
        return cls([0] * degree + [value], order, marker)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < self.order else 0

    def _check(self, other: "TruncatedSeries"):
        if self.marker != other.marker:
            raise ValueError(f"series in {self.marker} and {other.marker} cannot be combined")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([self[0] + other] + list(self.coeffs[1:]), self.order, self.marker)
        t = self._check(other)
        return TruncatedSeries([self[i] + other[i] for i in range(t)], t, self.marker)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order, self.marker)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order, self.marker)
        t = self._check(other)
        out = [0] * t
        for i in range(t):
            a = self[i]
            if _is_zero(a):
                continue
            for j in range(t - i):
                b = other[j]
                if _is_zero(b):
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, t, self.marker)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("use compose() with an explicit expansion for negative powers")
        result = TruncatedSeries.constant(1, self.order, self.marker)
        for _ in range(exponent):
            result = result * self
        return result

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[:order], min(order, self.order), self.marker)

    def map(self, fn: Callable) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order, self.marker)

    def compose(self, coefficients: Sequence) -> "TruncatedSeries":
        """Evaluate sum_i coefficients[i] * self**i by Horner's rule.

        ``self`` must have zero constant term for the truncation to be exact.
        """
        if not _is_zero(self[0]):
            raise ValueError("composition requires a series without constant term")
        result = TruncatedSeries.constant(0, self.order, self.marker)
        for c in reversed(list(coefficients)[: self.order]):
            result = result * self + c
        return result

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = self._check(other)
        return all(_is_zero(self[i] - other[i]) for i in range(t))

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order}, marker={self.marker!r})"


def series_inv_power(exponent, order: int, marker: str = "X") -> TruncatedSeries:
    """Coefficients binom(-exponent, i) of (1 + marker)**(-exponent), i < order."""
    if order < 1:
        raise ValueError("order must be at least 1")
    exponent = ExactPoly.coerce(exponent)
    return TruncatedSeries([binomial_poly(-exponent, i) for i in range(order)], order, marker)


def series_log_correction(order: int, marker: str = "X") -> TruncatedSeries:
    """ln(1+X) - beta*ln(1+X/beta) truncated below X**order, coefficients in beta."""
    if order < 1:
        return TruncatedSeries([], 0, marker)
    beta = ExactPoly.var("beta")
    coeffs = [RationalFn(0)]
    for i in range(1, order):
        # (1 - beta**(1-i)) = (beta**(i-1) - 1) / beta**(i-1)
        value = RationalFn(beta ** (i - 1) - 1, beta ** (i - 1)) * Fraction((-1) ** (i + 1), i)
        coeffs.append(value)
    return TruncatedSeries(coeffs, order, marker)
