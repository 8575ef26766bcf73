"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial stores its variables as an ordered tuple and its terms as a
dict from exponent tuples to :class:`fractions.Fraction`.  Variables are
kept in a canonical order (``n``, ``lam``, ``beta``, ``X``, ``Y`` first,
anything else alphabetically after), and variables that do not occur are
dropped, so two equal polynomials always have identical internal data.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

KNOWN_VARIABLES = ("n", "lam", "beta", "X", "Y")
DISPLAY_NAMES = {"lam": "λ", "beta": "β"}


def variable_key(name: str) -> tuple[int, str]:
    if name in KNOWN_VARIABLES:
        return (KNOWN_VARIABLES.index(name), "")
    return (len(KNOWN_VARIABLES), name)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def _merge_variables(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=variable_key))


def _remap(terms: Mapping[tuple, Fraction], old: tuple[str, ...], new: tuple[str, ...]):
    if old == new:
        return terms
    positions = [new.index(v) for v in old]
    width = len(new)
    out = {}
    for exp, c in terms.items():
        e = [0] * width
        for p, d in zip(positions, exp):
            e[p] = d
        out[tuple(e)] = c
    return out


class ExactPoly:
    """Immutable polynomial over the rationals."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None,
                 variables: Iterable[str] = ()):
        variables = tuple(variables)
        canonical = tuple(sorted(set(variables), key=variable_key))
        if len(canonical) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(variables):
                raise ValueError("exponent length does not match variables")
            if any(d < 0 for d in exp):
                raise ValueError("negative exponent")
            c = _as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        clean = {e: c for e, c in clean.items() if c}
        clean = _remap(clean, variables, canonical)
        self._set(clean, canonical)

    def _set(self, terms, variables):
        # drop variables that never occur
        used = [i for i in range(len(variables)) if any(e[i] for e in terms)]
        if len(used) != len(variables):
            variables = tuple(variables[i] for i in used)
            terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms, variables) -> "ExactPoly":
        """Build from already-clean data (nonzero Fractions, canonical variables)."""
        p = cls.__new__(cls)
        p._set(terms, variables)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("ExactPoly is immutable")

    # constructors
    @classmethod
    def const(cls, value) -> "ExactPoly":
        c = _as_fraction(value)
        return cls._raw({(): c} if c else {}, ())

    @classmethod
    def var(cls, name: str) -> "ExactPoly":
        return cls._raw({(1,): Fraction(1)}, (name,))

    @classmethod
    def coerce(cls, value) -> "ExactPoly":
        if isinstance(value, ExactPoly):
            return value
        return cls.const(value)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.variables

    def constant_value(self) -> Fraction:
        if self.variables:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or the degree in ``var``; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple, Fraction]:
        exp = max(self.terms, key=lambda e: (sum(e), e))
        return exp, self.terms[exp]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1] if self.terms else Fraction(0)

    # arithmetic
    def _align(self, other: "ExactPoly"):
        vs = _merge_variables(self.variables, other.variables)
        return vs, _remap(self.terms, self.variables, vs), _remap(other.terms, other.variables, vs)

    def __add__(self, other):
        try:
            other = ExactPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        vs, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return ExactPoly._raw(out, vs)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        try:
            other = ExactPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return ExactPoly._raw({}, ())
            return ExactPoly._raw({e: v * c for e, v in self.terms.items()}, self.variables)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ExactPoly._raw({}, ())
        vs, a, b = self._align(other)
        out: dict = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return ExactPoly._raw({e: c for e, c in out.items() if c}, vs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = ExactPoly.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor) -> "ExactPoly":
        return self * _as_fraction(factor)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, ExactPoly):
            if other.is_constant():
                return self / other.constant_value()
            q = self.exact_divide(other)
            if q is None:
                raise ValueError("polynomial division is not exact")
            return q
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactPoly.const(other)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.variables, frozenset(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # calculus and substitution
    def derivative(self, var: str) -> "ExactPoly":
        if var not in self.variables:
            return ExactPoly._raw({}, ())
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return ExactPoly._raw(out, self.variables)

    def coefficients_in(self, var: str) -> dict[int, "ExactPoly"]:
        """Split into ``{d: coefficient of var**d}`` with coefficients free of ``var``."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: ExactPoly._raw(t, rest) for d, t in buckets.items()}

    @classmethod
    def from_coefficients(cls, var: str, coeffs: Mapping[int, "ExactPoly"]) -> "ExactPoly":
        x = cls.var(var)
        total = cls.const(0)
        for d, c in coeffs.items():
            total = total + ExactPoly.coerce(c) * x ** d
        return total

    def substitute(self, var: str, value) -> "ExactPoly":
        """Replace ``var`` by a number or another polynomial."""
        if var not in self.variables:
            return self
        value = ExactPoly.coerce(value)
        parts = self.coefficients_in(var)
        # Horner over the degrees present
        result = ExactPoly.const(0)
        top = max(parts)
        for d in range(top, -1, -1):
            result = result * value
            if d in parts:
                result = result + parts[d]
        return result

    def substitute_fraction(self, var: str, numerator, denominator) -> tuple["ExactPoly", int]:
        """Substitute ``var = numerator/denominator`` and clear denominators.

        Returns ``(G, c)`` with ``self(var=num/den) == G / den**c``, where
        ``c`` is the degree of ``self`` in ``var``.
        """
        numerator = ExactPoly.coerce(numerator)
        denominator = ExactPoly.coerce(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("substitution with zero denominator")
        parts = self.coefficients_in(var)
        if not parts:
            return ExactPoly.const(0), 0
        c = max(parts)
        result = ExactPoly.const(0)
        num_pow = ExactPoly.const(1)
        den_pows = [ExactPoly.const(1)]
        for _ in range(c):
            den_pows.append(den_pows[-1] * denominator)
        for d in range(c + 1):
            if d in parts:
                result = result + parts[d] * num_pow * den_pows[c - d]
            num_pow = num_pow * numerator
        return result, c

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise KeyError(f"no value given for {missing}")
        point = [_as_fraction(values[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, d in zip(point, e):
                if d:
                    term *= x ** d
            total += term
        return total

    def evaluate_partial(self, values: Mapping[str, object]) -> "ExactPoly":
        out = self
        for name, value in values.items():
            out = out.substitute(name, value)
        return out

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        from math import gcd, lcm
        if not self.terms:
            return Fraction(0)
        g = 0
        m = 1
        for c in self.terms.values():
            g = gcd(g, c.numerator)
            m = lcm(m, c.denominator)
        return Fraction(g, m)

    def primitive(self) -> "ExactPoly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self / c

    def monic(self) -> "ExactPoly":
        if not self.terms:
            return self
        return self / self.leading_coefficient()

    def exact_divide(self, divisor: "ExactPoly") -> "ExactPoly | None":
        """Quotient if ``divisor`` divides ``self`` exactly, otherwise None."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        if divisor.is_constant():
            return self / divisor.constant_value()
        if not set(divisor.variables) <= set(self.variables):
            return None
        vs = self.variables
        rem = dict(self.terms)
        dv = _remap(divisor.terms, divisor.variables, vs)
        key = lambda e: (sum(e), e)
        lead_e = max(dv, key=key)
        lead_c = dv[lead_e]
        quotient = {}
        while rem:
            e = max(rem, key=key)
            shift = tuple(x - y for x, y in zip(e, lead_e))
            if any(s < 0 for s in shift):
                return None
            q = rem[e] / lead_c
            quotient[shift] = q
            for de, dc in dv.items():
                t = tuple(x + y for x, y in zip(de, shift))
                v = rem.get(t, 0) - q * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return ExactPoly._raw(quotient, vs)

    # serialization
    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ExactPoly":
        terms = {tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]}
        return cls(terms, data["vars"])

    def render(self, unicode: bool = True) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = []
            for v, d in zip(self.variables, e):
                if d:
                    name = DISPLAY_NAMES.get(v, v) if unicode else v
                    mono.append(name if d == 1 else f"{name}^{d}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = "*".join(mono)
                if a == 1:
                    text = body
                elif a.denominator == 1:
                    text = f"{a.numerator}*{body}"
                else:
                    text = f"{a.numerator}/{a.denominator}*{body}"
            else:
                text = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ExactPoly({self.render(unicode=False)!r})"


def poly_derivative(p: ExactPoly, var: str) -> ExactPoly:
    return p.derivative(var)


def binomial_poly(top, r: int) -> ExactPoly:
    """Generalized binomial coefficient prod_{i<r}(top - i) / r! as a polynomial."""
    if r < 0:
        raise ValueError("binomial order must be nonnegative")
    top = ExactPoly.coerce(top)
    out = ExactPoly.const(1)
    for i in range(r):
        out = out * (top - i)
    fact = 1
    for i in range(2, r + 1):
        fact *= i
    return out / fact


N = ExactPoly.var("n")
LAM = ExactPoly.var("lam")
BETA = ExactPoly.var("beta")
ONE = ExactPoly.const(1)
ZERO = ExactPoly.const(0)
