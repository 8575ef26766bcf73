"""High-precision evaluation of the asymptotic antichain formulas.

Exact quantities (binomials, coefficient values at rational points) are
computed as integers or Fractions and only converted to mpmath floats at
the end.  The working precision defaults to 200 bits.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

import mpmath

from .coefficients import compute_P, compute_R
from .clusters import DEFAULT_J_MAX

DEFAULT_PRECISION = 200
THEOREMS = ("T1.1-Korshunov", "T1.3-psi-nm", "T1.4-refined", "T1.2-window")
CSV_HEADER = ("n", "param", "exact", "formula", "ratio", "variant")
CSV_DIGITS = 30
# R_1..R_4 cost about a minute to derive; deeper ones are opt-in
DEFAULT_R_DEPTH = 4


class DepthExceededError(ValueError):
    """The requested truncation needs coefficients beyond the computed depth."""


def parity_of(n: int) -> str:
    return "even" if n % 2 == 0 else "odd"


def middle_size(n: int) -> int:
    return comb(n, n // 2)


def _to_mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


@dataclass(frozen=True)
class FormulaSpec:
    theorem: str
    parity: str
    t: int = 1
    j_max: int = DEFAULT_J_MAX

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}")
        if self.parity not in ("even", "odd"):
            raise ValueError(f"unknown parity {self.parity!r}")
        if self.t < 0:
            raise ValueError("truncation must be nonnegative")


# Closed-form (P_1, P_2) per branch, coefficients of 1, n, n^2.
_PRINTED_P = {
    "even": {0: ((1,), (Fraction(-16, 32), Fraction(-2, 32), Fraction(1, 32)))},
    "odd": {
        1: ((1,), (Fraction(-19, 32), 0, Fraction(3, 32))),
        2: ((Fraction(1, 2),), (Fraction(5, 8), Fraction(1, 8))),
    },
}


def _poly_at(coeffs, n: int) -> Fraction:
    return sum((Fraction(c) * n ** i for i, c in enumerate(coeffs)), Fraction(0))


def _branch_binomials(n: int) -> dict[int, int]:
    if n % 2 == 0:
        return {0: comb(n, n // 2 + 1)}
    return {1: comb(n, (n + 1) // 2), 2: comb(n, (n + 3) // 2)}


def _p_values(n: int, spec: FormulaSpec) -> dict[int, list[Fraction]]:
    """P_j(n) for j = 1..t+1 on each branch."""
    parity = parity_of(n)
    if spec.theorem == "T1.1-Korshunov":
        return {b: [_poly_at(c, n) for c in pair] for b, pair in _PRINTED_P[parity].items()}
    depth = spec.t + 1
    if depth > spec.j_max:
        raise DepthExceededError(f"t={spec.t} needs P_j up to j={depth}, beyond j_max={spec.j_max}")
    out: dict[int, list[Fraction]] = {}
    for j in range(1, depth + 1):
        for fam in compute_P(j, parity, spec.j_max):
            out.setdefault(fam.branch, []).append(Fraction(fam.value.evaluate({"n": n})))
    return out


def log_psi_exponent(n: int, spec: FormulaSpec) -> Fraction:
    """The exact rational inside exp[...] of the Dedekind asymptotics."""
    if spec.theorem not in ("T1.1-Korshunov", "T1.4-refined"):
        raise ValueError(f"{spec.theorem} is not a formula for psi(n)")
    if parity_of(n) != spec.parity:
        raise ValueError(f"n={n} does not have {spec.parity} parity")
    half = n // 2 if n % 2 == 0 else (n + 1) // 2
    binoms = _branch_binomials(n)
    total = Fraction(0)
    for branch, values in _p_values(n, spec).items():
        for j, p in enumerate(values, start=1):
            total += binoms[branch] * p / Fraction(2) ** (j * half)
    return total


def eval_log_psi(n: int, spec: FormulaSpec, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Natural log of the asymptotic estimate for the number of antichains in B_n."""
    exponent = log_psi_exponent(n, spec)
    with mpmath.workprec(precision):
        ln2 = mpmath.log(2)
        value = middle_size(n) * ln2 + _to_mpf(exponent)
        if n % 2:
            value += ln2
        return +value


def default_truncation(beta: Fraction) -> int:
    """Smallest t >= 0 with (1-beta)^t <= 1/4, i.e. ceil(log_{1/(1-beta)} 4)."""
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    if beta == 1:
        return 0
    t, power = 0, Fraction(1)
    while power > Fraction(1, 4):
        power *= 1 - beta
        t += 1
    return t


def psi_nm_exponent(n: int, m: int, t: int | None = None,
                    depth: int = DEFAULT_R_DEPTH) -> tuple[Fraction, int]:
    """Exact N * sum_{j<t} R_j(n, beta) (1-beta)^(jk), together with the t used."""
    N = middle_size(n)
    if not 0 < m <= N:
        raise ValueError(f"m must satisfy 0 < m <= {N}")
    beta = Fraction(m, N)
    t = default_truncation(beta) if t is None else t
    if t <= 1:
        return Fraction(0), t
    if t - 1 > min(depth, DEFAULT_J_MAX):
        raise DepthExceededError(f"t={t} needs R_j up to j={t - 1}, beyond depth {depth}")
    parity = parity_of(n)
    k = n // 2 if parity == "even" else (n + 1) // 2
    total = Fraction(0)
    for fam in compute_R(t, parity):
        total += Fraction(fam.value.evaluate({"n": n, "beta": beta})) * (1 - beta) ** (fam.j * k)
    return N * total, t


def eval_psi_nm(n: int, m: int, t: int | None = None, precision: int = DEFAULT_PRECISION,
                depth: int = DEFAULT_R_DEPTH) -> mpmath.mpf:
    """Asymptotic estimate for the number of antichains of size m in B_n."""
    exponent, _ = psi_nm_exponent(n, m, t, depth)
    prefactor = 1 if n % 2 == 0 else 2
    with mpmath.workprec(precision):
        return prefactor * comb(middle_size(n), m) * mpmath.exp(_to_mpf(exponent))


def threshold_window(n: int, c=0, precision: int = DEFAULT_PRECISION) -> dict:
    """Size-1 cluster sum at beta = 3/4 - ln(n)/(4n) + c/n and the limiting survival constant.

    ``cluster_sum_1`` is the total weight of single-vertex polymers with
    lam = beta/(1-beta); exp(-cluster_sum_1) approximates the probability
    that a uniform antichain of size beta*N lies in the middle layer(s).
    """
    if n < 10:
        raise ValueError("the window evaluation needs n >= 10")
    c = Fraction(c)
    with mpmath.workprec(precision):
        beta = mpmath.mpf(3) / 4 - mpmath.log(n) / (4 * n) + _to_mpf(c) / n
        lam = beta / (1 - beta)
        if n % 2 == 0:
            k = n // 2
            cluster = 2 * comb(n, k + 1) * lam * (1 + lam) ** (-(k + 1))
            weight = 3
        else:
            k = (n + 1) // 2
            cluster = (comb(n, k - 1) * lam * (1 + lam) ** (-k)
                       + comb(n, k + 1) * lam * (1 + lam) ** (-(k + 1)))
            weight = mpmath.mpf(15) / 4
        exponent_limit = mpmath.exp(-2 * _to_mpf(c)) / mpmath.sqrt(2 * mpmath.pi) * weight
        return {
            "beta": +beta,
            "cluster_sum_1": +cluster,
            "survival": mpmath.exp(-cluster),
            "limit_exponent": +exponent_limit,
            "limit_constant": mpmath.exp(-exponent_limit),
        }


def comparability_probability(n: int) -> Fraction:
    """P(u and v comparable or equal) for independent uniform u, v in B_n."""
    return 2 * Fraction(3, 4) ** n - Fraction(1, 2) ** n


def sparse_regime(n: int, m: int, precision: int = DEFAULT_PRECISION) -> dict:
    """Comparability probability and the one-defect count ratio.

    The ratio counts antichains made of one vertex of L_{k-1} together with
    m-1 middle-layer vertices outside its up-shadow, relative to C(N, m),
    with k = floor(n/2) indexing the middle layer.
    """
    if m < 1:
        raise ValueError("m must be positive")
    N = middle_size(n)
    k = n // 2
    if k < 1:
        raise ValueError("n must be at least 2")
    free = N - (n - k + 1)
    exact = Fraction(comb(n, k - 1) * comb(free, m - 1), comb(N, m)) if m <= N else Fraction(0)
    with mpmath.workprec(precision):
        return {
            "comparability_prob": comparability_probability(n),
            "one_defect_exact": exact,
            "one_defect_ratio": _to_mpf(exact),
        }


def binomial_pointmass(N: int, m: int, lam0=None, precision: int = DEFAULT_PRECISION) -> dict:
    """C(N, m) next to (1+lam0)^(N+1) / (lam0^m sqrt(2 pi m lam0)), lam0 = m/(N-m) by default."""
    if not 0 < m < N:
        raise ValueError("need 0 < m < N")
    lam0 = Fraction(m, N - m) if lam0 is None else Fraction(lam0)
    exact = comb(N, m)
    with mpmath.workprec(precision):
        lam = _to_mpf(lam0)
        approx = (1 + lam) ** (N + 1) / (lam ** m * mpmath.sqrt(2 * mpmath.pi * m * lam))
        return {"exact": exact, "asymptotic": approx, "ratio": exact / approx}


def binomial_pmf(trials: int, p, value: int) -> Fraction:
    """Exact P(Bin(trials, p) = value)."""
    p = Fraction(p)
    if not 0 <= value <= trials:
        return Fraction(0)
    return comb(trials, value) * p ** value * (1 - p) ** (trials - value)


def local_limit_pointmass(trials: int, p, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """1/sqrt(2 pi n p (1-p)), the local-limit approximation to a central binomial point mass."""
    with mpmath.workprec(precision):
        p = _to_mpf(Fraction(p))
        return 1 / mpmath.sqrt(2 * mpmath.pi * trials * p * (1 - p))


@dataclass(frozen=True)
class ComparisonRecord:
    n: int
    param: str
    exact: int | Fraction | None
    formula: mpmath.mpf | None
    ratio: mpmath.mpf | None
    variant: str

    @classmethod
    def build(cls, n: int, param, exact, formula, variant: str,
              precision: int = DEFAULT_PRECISION) -> "ComparisonRecord":
        ratio = None
        if exact is not None and formula is not None and exact != 0:
            with mpmath.workprec(precision):
                ratio = formula / _to_mpf(Fraction(exact))
        return cls(n, "" if param is None else str(param), exact, formula, ratio, variant)

    def row(self) -> list[str]:
        return [str(self.n), self.param, _fmt_exact(self.exact),
                _fmt_float(self.formula), _fmt_float(self.ratio), self.variant]

    def to_json(self) -> dict:
        return dict(zip(CSV_HEADER, [self.n, self.param or None, _fmt_exact(self.exact) or None,
                                     _fmt_float(self.formula) or None,
                                     _fmt_float(self.ratio) or None, self.variant]))


def _fmt_exact(x) -> str:
    if x is None:
        return ""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_float(x) -> str:
    if x is None:
        return ""
    return mpmath.nstr(x, CSV_DIGITS, strip_zeros=False, min_fixed=-10, max_fixed=10)


def _parse_float(text: str):
    if text == "":
        return None
    with mpmath.workprec(DEFAULT_PRECISION):
        return mpmath.mpf(text)


def write_csv(records: Iterable[ComparisonRecord], handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.row())


def records_to_csv(records: Iterable[ComparisonRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def read_csv(text: str) -> list[ComparisonRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    out = []
    for n, param, exact, formula, ratio, variant in reader:
        out.append(ComparisonRecord(int(n), param, Fraction(exact) if exact else None,
                                    _parse_float(formula), _parse_float(ratio), variant))
    return out


def exact_psi(n: int) -> int | None:
    """Exact Dedekind number when the oracle can afford it (n <= 6)."""
    from .oracle import count_antichains

    return count_antichains(n) if n <= 6 else None


def exact_psi_profile(n: int) -> list[int] | None:
    from .oracle import count_antichains

    return count_antichains(n, by_size=True) if n <= 6 else None


def compare_psi(n: int, theorem: str, t: int = 1, precision: int = DEFAULT_PRECISION) -> ComparisonRecord:
    spec = FormulaSpec(theorem, parity_of(n), t)
    with mpmath.workprec(precision):
        estimate = mpmath.exp(eval_log_psi(n, spec, precision))
    variant = theorem if theorem == "T1.1-Korshunov" else f"{theorem} t={t}"
    return ComparisonRecord.build(n, f"t={t}" if theorem == "T1.4-refined" else None,
                                  exact_psi(n), estimate, variant, precision)


def compare_psi_nm(n: int, sizes: Iterable[int] | None = None, t: int | None = None,
                   precision: int = DEFAULT_PRECISION) -> list[ComparisonRecord]:
    profile = exact_psi_profile(n)
    N = middle_size(n)
    sizes = range(1, N + 1) if sizes is None else sizes
    out = []
    for m in sizes:
        exact = None
        if profile is not None:
            exact = profile[m] if m < len(profile) else 0
        used = default_truncation(Fraction(m, N)) if t is None else t
        variant = f"T1.3-psi-nm t={used}"
        try:
            estimate = eval_psi_nm(n, m, used, precision)
        except DepthExceededError:
            estimate, variant = None, variant + " depth-exceeded"
        out.append(ComparisonRecord.build(n, f"m={m}", exact, estimate, variant, precision))
    return out
