"""Exact power series in lam over Fractions, for expansion checks at fixed n."""

from fractions import Fraction
from math import comb

from antichains.oracle import central_polymer_configurations


def mul(a, b, order):
    out = [Fraction(0)] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j, y in enumerate(b[: order - i]):
                out[i + j] += x * y
    return out


def inv_power(m, order):
    """(1+lam)^(-m)."""
    out, c = [], Fraction(1)
    for i in range(order):
        out.append(c)
        c = c * (-m - i) / (i + 1)
    return out


def reciprocal(a, order):
    out = [Fraction(1) / a[0]]
    for i in range(1, order):
        s = sum(a[j] * out[i - j] for j in range(1, min(i, len(a) - 1) + 1))
        out.append(-s / a[0])
    return out


def derivative(a):
    return [i * c for i, c in enumerate(a)][1:]


def log(a, order):
    """ln a for a[0] = 1."""
    assert a[0] == 1
    d = mul(derivative(a) + [Fraction(0)], reciprocal(a, order), order - 1)
    return [Fraction(0)] + [c / (i + 1) for i, c in enumerate(d)]


def lam_poly(p, n, order):
    """ExactPoly in n, lam evaluated at n, as a list of lam coefficients."""
    out = [Fraction(0)] * order
    for d, coeff in p.coefficients_in("lam").items():
        if d < order:
            out[d] += coeff.evaluate({"n": n}) if coeff.variables else coeff.constant_value()
    return out


def log_xi_central(n, order):
    """ln Xi_C to lam^(order-1), from configurations of total size < order."""
    xi = [Fraction(0)] * order
    for size, shadow in central_polymer_configurations(n, order - 1):
        term = [Fraction(0)] * size + inv_power(shadow, order - size)
        for i in range(order):
            xi[i] += term[i]
    return log(xi, order)


def layer_binomials(n):
    """binom(n, layer of root) for root 1 (L_{k-1}) and root 2 (L_{k+1})."""
    k = (n + 1) // 2
    return {1: comb(n, k - 1), 2: comb(n, k + 1)}
