"""Coefficient families derived from the cluster sums.

All series work happens in the marker ``Y`` standing for (1-beta)^k, with
(1-beta)^(k+1) = (1-beta) * Y.  The activity is written as
lam = (beta + X)/(1 - beta), where X is itself a series in Y whose
coefficients are the calibration functions B_j:
X = sum_j B_j (1-beta)^(j+1) Y^j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb

from .algebra import ExactPoly, RationalFn, TruncatedSeries, series_inv_power, series_log_correction
from .clusters import DEFAULT_J_MAX, cluster_sum, middle_index

KINDS = ("S", "P", "F", "B", "R")

_n = ExactPoly.var("n")
_lam = ExactPoly.var("lam")
_beta = ExactPoly.var("beta")
_X = ExactPoly.var("X")


class PipelineError(RuntimeError):
    """The series solve met a condition that contradicts its assumptions."""


@dataclass(frozen=True)
class CoefficientFamily:
    kind: str
    parity: str
    j: int
    branch: int
    value: object
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        allowed = {"even": {0}, "odd": {1, 2}}[self.parity]
        if self.kind in ("B", "R") or (self.kind == "F" and self.parity == "odd"):
            allowed = {0} if self.parity == "even" else {1}
        if self.branch not in allowed:
            raise ValueError(f"branch {self.branch} invalid for {self.kind} with {self.parity} parity")

    @property
    def name(self) -> str:
        return f"{self.kind}_{self.j}^{self.branch}"

    def render(self) -> str:
        return f"{self.name} = {self.value.render()}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "parity": self.parity,
            "j": self.j,
            "branch": self.branch,
            "value_type": type(self.value).__name__,
            "value": self.value.to_json(),
            "provenance": self.provenance,
        }


def branch_ratios(parity: str) -> dict[int, RationalFn]:
    """binom(n, layer of root)/N for each published branch of S."""
    k = middle_index(parity)
    if parity == "even":
        return {0: RationalFn(k, _n - k + 1)}
    return {1: RationalFn(k, _n - k + 1), 2: RationalFn(_n - k, k + 1)}


def shadow_degree_product(parity: str) -> ExactPoly:
    """(n-k+1)(k+1), the normalization of F."""
    k = middle_index(parity)
    return (_n - k + 1) * (k + 1)


def compute_S(j: int, parity: str, j_max: int = DEFAULT_J_MAX) -> list[CoefficientFamily]:
    cs = cluster_sum(j, parity, j_max)
    prov = {"j_max": j_max, **cs.metadata}
    return [CoefficientFamily("S", parity, j, b, v, prov) for b, v in cs.values().items()]


def compute_P(j: int, parity: str, j_max: int = DEFAULT_J_MAX) -> list[CoefficientFamily]:
    """P_j = 2^-j S_j(n, 1)."""
    out = []
    for fam in compute_S(j, parity, j_max):
        value = fam.value.substitute("lam", 1) / 2 ** j
        out.append(CoefficientFamily("P", parity, j, fam.branch, value, fam.provenance))
    return out


@lru_cache(maxsize=None)
def _f_poly(j: int, parity: str, j_max: int) -> ExactPoly:
    k = middle_index(parity)
    D = shadow_degree_product(parity)
    total = ExactPoly.const(0)
    values = cluster_sum(j, parity, j_max).values()
    for b, ratio in branch_ratios(parity).items():
        S = values[b]
        bracket = (1 + _lam) * S.derivative("lam") - S * (j * (k + 1))
        scaled = RationalFn(bracket * D) * ratio
        total = total + scaled.as_poly()
    return total


def compute_F(j: int, parity: str, j_max: int = DEFAULT_J_MAX) -> CoefficientFamily:
    """F_j, the size-j correction to the mean antichain size.

    E|A|/N = lam/(1+lam) * [1 + sum_j F_j (1+lam)^(-j(k+1)) / ((n-k+1)(k+1))].
    """
    branch = 0 if parity == "even" else 1
    return CoefficientFamily("F", parity, j, branch, _f_poly(j, parity, j_max),
                             {"j_max": j_max})


def _rf(value) -> RationalFn:
    return RationalFn.coerce(value)


def _lam_poly_series(p: ExactPoly, x_series: TruncatedSeries) -> TruncatedSeries:
    """p(n, lam) at lam = (beta + X)/(1 - beta), expanded as a series in Y."""
    G, c = p.substitute_fraction("lam", _beta + _X, 1 - _beta)
    parts = G.coefficients_in("X")
    coeffs = [_rf(parts.get(d, 0)) for d in range(x_series.order)]
    return x_series.compose(coeffs) * RationalFn(1, (1 - _beta) ** c)


def _inv_power_series(exponent: ExactPoly, x_series: TruncatedSeries) -> TruncatedSeries:
    base = series_inv_power(exponent, x_series.order)
    return x_series.compose([_rf(c) for c in base.coeffs])


def _x_series(B: list[RationalFn], order: int) -> TruncatedSeries:
    coeffs = [_rf(0)]
    for j, b in enumerate(B, start=1):
        coeffs.append(b * RationalFn((1 - _beta) ** (j + 1)))
    return TruncatedSeries(coeffs, order, "Y")


def mean_size_series(B: list[RationalFn], parity: str, order: int,
                     j_max: int = DEFAULT_J_MAX) -> TruncatedSeries:
    """E|A|/N as a series in Y once lam is calibrated by the given B_j."""
    k = middle_index(parity)
    D = RationalFn(shadow_degree_product(parity))
    X = _x_series(B, order)
    one = TruncatedSeries.constant(_rf(1), order)
    # lam/(1+lam) = (beta + X)/(1 + X)
    geometric = X.compose([_rf((-1) ** i) for i in range(order)])
    front = (X + _rf(_beta)) * geometric
    bracket = one
    for j in range(1, order):
        F = _f_poly(j, parity, j_max)
        term = _lam_poly_series(F, X) * _inv_power_series((k + 1) * j, X)
        shift = TruncatedSeries.monomial(RationalFn((1 - _beta) ** j) / D, j, order)
        bracket = bracket + term * shift
    return front * bracket


def compute_B(q: int, parity: str, j_max: int = DEFAULT_J_MAX) -> list[CoefficientFamily]:
    """Solve for B_1..B_q so that E|A|/N = beta through order Y^q."""
    middle_index(parity)
    branch = 0 if parity == "even" else 1
    return [CoefficientFamily("B", parity, j + 1, branch, b, {"q": q, "j_max": j_max})
            for j, b in enumerate(_solve_B(q, parity, j_max))]


@lru_cache(maxsize=None)
def _solve_B(q: int, parity: str, j_max: int) -> tuple[RationalFn, ...]:
    if q < 0:
        raise ValueError("q must be nonnegative")
    if q > j_max:
        raise ValueError(f"q={q} needs cluster sums beyond j_max={j_max}")
    if q == 0:
        return ()
    known = list(_solve_B(q - 1, parity, j_max))
    j = q

    def residual(trial):
        series = mean_size_series(known + [_rf(trial)], parity, j + 1, j_max)
        return series[j]

    h0, h1, h2 = residual(0), residual(1), residual(2)
    slope = h1 - h0
    if not (h2 - h1 - slope).is_zero():
        raise PipelineError(f"order-{j} residual is not linear in B_{j}")
    if slope.is_zero():
        raise PipelineError(f"order-{j} residual does not depend on B_{j}")
    return tuple(known + [-h0 / slope])


def truncation_q(t: int) -> int:
    return max(ceil(t / 2) - 1, 0)


def exponent_series(t: int, parity: str, q: int | None = None,
                    j_max: int = DEFAULT_J_MAX) -> TruncatedSeries:
    """The normalized log-count series whose Y^j coefficients are R_j, j < t."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if t - 1 > j_max:
        raise ValueError(f"t={t} needs cluster sums beyond j_max={j_max}")
    q = truncation_q(t) if q is None else q
    k = middle_index(parity)
    B = list(_solve_B(q, parity, j_max))
    X = _x_series(B, t)
    total = X.compose(list(series_log_correction(t).coeffs))
    ratios = branch_ratios(parity)
    for j in range(1, t):
        values = cluster_sum(j, parity, j_max).values()
        inv = _inv_power_series((k + 1) * j, X)
        shift = TruncatedSeries.monomial(RationalFn((1 - _beta) ** j), j, t)
        for b, ratio in ratios.items():
            total = total + _lam_poly_series(values[b], X) * inv * shift * ratio
    return total


def compute_R(t: int, parity: str, j_max: int = DEFAULT_J_MAX) -> list[CoefficientFamily]:
    """R_1..R_{t-1} for the fixed-size antichain asymptotics."""
    middle_index(parity)
    branch = 0 if parity == "even" else 1
    q = truncation_q(t)
    series = exponent_series(t, parity, q, j_max)
    prov = {"t": t, "q": q, "j_max": j_max}
    return [CoefficientFamily("R", parity, j, branch, series[j], prov) for j in range(1, t)]


def compute(kind: str, j: int, parity: str, j_max: int = DEFAULT_J_MAX) -> list[CoefficientFamily]:
    """Uniform entry point used by the CLI: the family members with index j."""
    if kind == "S":
        return compute_S(j, parity, j_max)
    if kind == "P":
        return compute_P(j, parity, j_max)
    if kind == "F":
        return [compute_F(j, parity, j_max)]
    if kind == "B":
        return [compute_B(j, parity, j_max)[j - 1]]
    if kind == "R":
        return [compute_R(j + 1, parity, j_max)[j - 1]]
    raise ValueError(f"unknown kind {kind!r}")
