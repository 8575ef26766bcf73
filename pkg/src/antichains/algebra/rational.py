"""Rational functions with polynomial numerator and denominator.

Fractions are kept reduced: a recursive primitive-remainder-sequence gcd
removes common polynomial factors, and the denominator is normalized to a
primitive integer polynomial with positive leading coefficient.  Equality
is decided by cross-multiplication, so it does not depend on reduction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .poly import ExactPoly, variable_key

_ONE = ExactPoly.const(1)


def _leading_in(p: ExactPoly, var: str) -> tuple[int, ExactPoly]:
    parts = p.coefficients_in(var)
    d = max(parts)
    return d, parts[d]


def _pseudo_remainder(a: ExactPoly, b: ExactPoly, var: str) -> ExactPoly:
    db, lb = _leading_in(b, var)
    x = ExactPoly.var(var)
    r = a
    while not r.is_zero():
        dr = r.degree(var)
        if dr < db:
            break
        lr = _leading_in(r, var)[1]
        r = r * lb - b * lr * x ** (dr - db)
    return r


def _content_in(p: ExactPoly, var: str) -> ExactPoly:
    g = ExactPoly.const(0)
    for c in p.coefficients_in(var).values():
        g = poly_gcd(g, c)
        if g.is_constant():
            return _ONE
    return g


def poly_gcd(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    """Greatest common divisor, normalized to a primitive integer polynomial."""
    return _gcd_cached(a, b)


@lru_cache(maxsize=20000)
def _gcd_cached(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return _ONE
    if a == b:
        return a.primitive()
    shared = set(a.variables) & set(b.variables)
    if not shared:
        return _ONE
    var = min(a.variables + b.variables, key=variable_key)
    if var not in a.variables:
        return poly_gcd(a, _content_in(b, var))
    if var not in b.variables:
        return poly_gcd(_content_in(a, var), b)
    ca, cb = _content_in(a, var), _content_in(b, var)
    content = poly_gcd(ca, cb)
    pa = a.exact_divide(ca).primitive()
    pb = b.exact_divide(cb).primitive()
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    while not pb.is_zero() and pb.degree(var) > 0:
        r = _pseudo_remainder(pa, pb, var)
        if r.is_zero():
            pa, pb = pb, r
            break
        pa, pb = pb, r.exact_divide(_content_in(r, var)).primitive()
    if pb.is_zero():
        g = pa.exact_divide(_content_in(pa, var))
    else:
        g = _ONE
    return (content * g).primitive()


class RationalFn:
    """Immutable reduced fraction of two :class:`ExactPoly` values."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, reduce: bool = True):
        num = ExactPoly.coerce(num)
        den = ExactPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @classmethod
    def coerce(cls, value) -> "RationalFn":
        if isinstance(value, RationalFn):
            return value
        return cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> ExactPoly:
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return self.num / self.den.constant_value()

    def __add__(self, other):
        try:
            other = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        left = other.den.exact_divide(g)
        right = self.den.exact_divide(g)
        return RationalFn(self.num * left + other.num * right, self.den * left)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        try:
            other = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFn(0)
            return RationalFn(self.num * Fraction(other), self.den, reduce=False)
        try:
            other = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalFn(0)
        # cross-cancel before multiplying to keep sizes small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.exact_divide(g1) * other.num.exact_divide(g2)
        den = self.den.exact_divide(g2) * other.den.exact_divide(g1)
        return RationalFn(num, den, reduce=False)._renormalized()

    __rmul__ = __mul__

    def _renormalized(self) -> "RationalFn":
        num, den = _normalize_sign(self.num, self.den)
        return RationalFn(num, den, reduce=False)

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFn(self.den, self.num, reduce=False)._renormalized()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        try:
            other = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFn.coerce(other) / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFn(self.num ** exponent, self.den ** exponent, reduce=False)

    def __eq__(self, other):
        try:
            other = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, var: str) -> "RationalFn":
        top = self.num.derivative(var) * self.den - self.num * self.den.derivative(var)
        return RationalFn(top, self.den ** 2)

    def substitute(self, var: str, value) -> "RationalFn":
        if isinstance(value, RationalFn):
            return _substitute_rational(self, var, value)
        value = ExactPoly.coerce(value)
        den = self.den.substitute(var, value)
        if den.is_zero():
            raise ZeroDivisionError(f"substituting {var} makes the denominator vanish")
        return RationalFn(self.num.substitute(var, value), den)

    def evaluate(self, values) -> Fraction:
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(values) / d

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.num.variables) | set(self.den.variables), key=variable_key))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFn":
        return cls(ExactPoly.from_json(data["num"]), ExactPoly.from_json(data["den"]))

    def render(self, unicode: bool = True) -> str:
        if self.den == 1:
            return self.num.render(unicode)
        top = self.num.render(unicode)
        bottom = self.den.render(unicode)
        if len(self.num.terms) > 1:
            top = f"({top})"
        if len(self.den.terms) > 1 or not self.den.is_constant():
            bottom = f"({bottom})"
        return f"{top}/{bottom}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFn({self.render(unicode=False)!r})"


def _normalize_sign(num: ExactPoly, den: ExactPoly):
    c = den.content()
    if den.leading_coefficient() < 0:
        c = -c
    if c != 1:
        num, den = num / c, den / c
    return num, den


def _normalize(num: ExactPoly, den: ExactPoly):
    if num.is_zero():
        return num, _ONE
    if den.is_constant():
        return num / den.constant_value(), _ONE
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.exact_divide(g)
        den = den.exact_divide(g)
    return _normalize_sign(num, den)


def _substitute_rational(f: RationalFn, var: str, value: RationalFn) -> RationalFn:
    top, ct = f.num.substitute_fraction(var, value.num, value.den)
    bottom, cb = f.den.substitute_fraction(var, value.num, value.den)
    if bottom.is_zero():
        raise ZeroDivisionError(f"substituting {var} makes the denominator vanish")
    shift = ct - cb
    if shift >= 0:
        return RationalFn(top, bottom * value.den ** shift)
    return RationalFn(top * value.den ** (-shift), bottom)
