"""Published reference values for the coefficient families.

Each entry is a callable returning the value as an ExactPoly or RationalFn,
so the table costs nothing until it is used.  R_2^1 follows the bracket
reading in which the factor 2 multiplies only its leading beta^5 term.
"""

from __future__ import annotations

from fractions import Fraction as Q

from .algebra import ExactPoly, RationalFn

_n = ExactPoly.var("n")
_b = ExactPoly.var("beta")


def _poly(*coeffs) -> ExactPoly:
    """Polynomial in n from coefficients of n^0, n^1, ..."""
    out = ExactPoly.const(0)
    for i, c in enumerate(coeffs):
        out = out + _n ** i * Q(c)
    return out


def _p30():
    return _poly(Q(1, 3), Q(7, 96), Q(-5, 128), Q(-1, 384), Q(1, 512))


def _p31():
    return _poly(Q(841, 1536), Q(1, 192), Q(-181, 768), Q(-1, 192), Q(11, 512))


def _p32():
    return _poly(Q(401, 768), Q(9, 32), Q(17, 384), Q(-1, 96), Q(-1, 256))


def _p40():
    return _poly(Q(-1, 4), Q(1, 96), Q(3, 128), Q(-25, 1536), Q(1, 3072), 0, Q(1, 6144))


def _p41():
    return _poly(Q(-26225, 32768), Q(1723, 12288), Q(62537, 98304), Q(-803, 6144),
                 Q(-9113, 98304), Q(-39, 4096), Q(225, 32768))


def _p42():
    return _poly(Q(-13095, 32768), Q(-10477, 24576), Q(-27709, 98304), Q(233, 12288),
                 Q(4153, 98304), Q(9, 8192), Q(-45, 32768))


def _r20():
    n, b = _n, _b
    num = -(n ** 2 * (n + 2) * (n + 6) * b ** 3 + n * (n + 2) * (n ** 2 - 14 * n + 8) * b ** 2
            + 16 * n ** 2 * b)
    return RationalFn(num, 8 * (n + 2) ** 2 * (1 - b))


def _r21():
    n, b = _n, _b
    num = (2 * (n - 1) * (n + 1) * (n + 3) * b ** 5
           - (n - 1) * (n + 3) * (n ** 2 + 12 * n - 1) * b ** 4
           + 4 * (n - 1) * (5 * n ** 2 + 18 * n + 5) * b ** 3
           + (n + 1) * (n ** 3 - 11 * n ** 2 - 53 * n + 31) * b ** 2
           + 16 * (n + 1) ** 2 * b)
    return RationalFn(num, 8 * (n + 3) ** 2 * (b - 1) ** 3)


def _r30():
    n, b = _n, _b
    num = (n ** 2 * (n + 2) ** 2 * (3 * n ** 3 + 28 * n ** 2 + 132 * n + 112) * b ** 6
           + 3 * n ** 2 * (n + 2) ** 2 * (n ** 3 - 28 * n ** 2 - 212 * n + 16) * b ** 5
           - n * (n + 2) ** 2 * (3 * n ** 4 + 36 * n ** 3 - 1308 * n ** 2 + 656 * n - 128) * b ** 4
           - n * (3 * n ** 6 - 72 * n ** 5 + 384 * n ** 4 + 3504 * n ** 3 + 2640 * n ** 2
                  - 3136 * n + 512) * b ** 3
           - 96 * n ** 2 * (n + 2) * (n ** 2 - 14 * n + 8) * b ** 2
           - 512 * n ** 3 * b)
    return RationalFn(num, 192 * (n + 2) ** 3 * (b - 1) ** 3)


def _r31():
    n, b = _n, _b
    num = -(8 * (n - 1) * (n + 1) * (n + 3) ** 2 * (n ** 2 - 6 * n - 19) * b ** 9
            + 3 * (n - 1) * (n + 1) * (n + 3) ** 2 * (n ** 3 + 3 * n ** 2 + 167 * n + 117) * b ** 8
            - 2 * (n - 1) * (n + 3) ** 2 * (3 * n ** 4 + 90 * n ** 3 + 1068 * n ** 2 + 566 * n + 225) * b ** 7
            - 2 * (n - 1) * (3 * n ** 6 - 118 * n ** 5 - 3227 * n ** 4 - 16452 * n ** 3
                             - 24739 * n ** 2 - 4166 * n - 2501) * b ** 6
            + 12 * (n - 1) * (n ** 6 + 10 * n ** 5 - 497 * n ** 4 - 3564 * n ** 3 - 6409 * n ** 2
                              - 1310 * n - 7) * b ** 5
            + (3 * n ** 7 - 309 * n ** 6 + 2499 * n ** 5 + 30275 * n ** 4 + 51089 * n ** 3
               - 37383 * n ** 2 - 39255 * n + 1273) * b ** 4
            - 2 * (n + 1) * (3 * n ** 6 - 66 * n ** 5 + 81 * n ** 4 + 6180 * n ** 3 + 13269 * n ** 2
                             - 10018 * n - 3305) * b ** 3
            - 192 * (n + 1) ** 2 * (n ** 3 - 11 * n ** 2 - 45 * n + 23) * b ** 2
            - 1024 * (n + 1) ** 3 * b)
    return RationalFn(num, 384 * (n + 3) ** 3 * (b - 1) ** 6)


# (kind, j, parity, branch) -> builder
APPENDIX = {
    ("P", 3, "even", 0): _p30,
    ("P", 3, "odd", 1): _p31,
    ("P", 3, "odd", 2): _p32,
    ("P", 4, "even", 0): _p40,
    ("P", 4, "odd", 1): _p41,
    ("P", 4, "odd", 2): _p42,
    ("R", 2, "even", 0): _r20,
    ("R", 2, "odd", 1): _r21,
    ("R", 3, "even", 0): _r30,
    ("R", 3, "odd", 1): _r31,
}

# Low-order closed forms, as printed alongside the leading asymptotics.
LOW_ORDER = {
    ("P", 1, "even", 0): lambda: _poly(1),
    ("P", 2, "even", 0): lambda: _poly(Q(-16, 32), Q(-2, 32), Q(1, 32)),
    ("P", 1, "odd", 1): lambda: _poly(1),
    ("P", 2, "odd", 1): lambda: _poly(Q(-19, 32), 0, Q(3, 32)),
    ("P", 1, "odd", 2): lambda: _poly(Q(1, 2)),
    ("P", 2, "odd", 2): lambda: _poly(Q(5, 8), Q(1, 8)),
    ("R", 1, "even", 0): lambda: RationalFn(2 * _b * _n, _n + 2),
    ("R", 1, "odd", 1): lambda: RationalFn(_b, 1 - _b) + RationalFn((_n - 1) * _b, _n + 3),
}

# The value the cluster pipeline actually yields where it departs from LOW_ORDER.
DERIVED_OVERRIDES = {
    ("P", 2, "odd", 2): lambda: _poly(Q(-1, 2), Q(-1, 8)),
}


def reference_value(key):
    if key in APPENDIX:
        return APPENDIX[key]()
    return LOW_ORDER[key]()
