"""Brute-force ground truth on small lattices.

Everything here enumerates antichains or polymer configurations directly
and returns exact integers or Fractions.  These routines are deliberately
independent of the symbolic cluster machinery so that they can check it.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .lattice import (
    AmbientGraph,
    VertexSet,
    down_neighbors,
    is_below_any,
    layer_masks,
    popcount,
    two_linked_components,
    up_neighbors,
)


class ResourceGuardError(RuntimeError):
    """Raised when an enumeration would exceed its work budget."""


DEFAULT_WORK_LIMIT = 50_000_000


def as_activity(value) -> Fraction:
    """Accept an int, Fraction, "p/q" string or (p, q) pair as an exact activity."""
    if isinstance(value, tuple):
        return Fraction(*value)
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def evaluate_profile(profile: Sequence[int], lam) -> Fraction:
    lam = as_activity(lam)
    total = Fraction(0)
    for c in reversed(profile):
        total = total * lam + c
    return total


def _profile_add(a: list[int], b: list[int], shift: int = 0) -> list[int]:
    out = list(a)
    if len(out) < len(b) + shift:
        out.extend([0] * (len(b) + shift - len(out)))
    for i, c in enumerate(b):
        out[i + shift] += c
    return out


class _Counter:
    def __init__(self, vertices: Sequence[int], work_limit: int):
        self.vertices = list(vertices)
        m = len(self.vertices)
        self.blocked = []
        for i, u in enumerate(self.vertices):
            mask = 0
            for j, v in enumerate(self.vertices):
                if u & v == u or u & v == v:
                    mask |= 1 << j
            self.blocked.append(mask)
        self.memo: dict[int, tuple] = {}
        self.work = 0
        self.limit = work_limit
        self.full = (1 << m) - 1

    def profile(self, candidates: int) -> tuple:
        if candidates == 0:
            return (1,)
        hit = self.memo.get(candidates)
        if hit is not None:
            return hit
        self.work += 1
        if self.work > self.limit:
            raise ResourceGuardError(f"antichain enumeration exceeded {self.limit} states")
        i = (candidates & -candidates).bit_length() - 1
        skip = self.profile(candidates & ~(1 << i))
        take = self.profile(candidates & ~self.blocked[i])
        out = tuple(_profile_add(list(skip), list(take), 1))
        self.memo[candidates] = out
        return out


def _window_vertices(n: int, restrict_to, forbidden_above) -> list[int]:
    if restrict_to is None:
        verts = list(range(1 << n))
    else:
        verts = list(restrict_to)
    if forbidden_above:
        tops = tuple(forbidden_above)
        verts = [v for v in verts if not is_below_any(v, tops)]
    # middle layers first keeps the memo small
    verts.sort(key=lambda v: (abs(2 * popcount(v) - n), v))
    return verts


def antichain_profile(n: int, restrict_to: Iterable[int] | None = None,
                      forbidden_above: Iterable[int] | None = None,
                      work_limit: int = DEFAULT_WORK_LIMIT) -> list[int]:
    """Number of antichains of each size among the allowed vertices."""
    if restrict_to is None and n > 6:
        raise ResourceGuardError("full-lattice antichain counts are limited to n <= 6")
    verts = _window_vertices(n, restrict_to, forbidden_above)
    counter = _Counter(verts, work_limit)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(verts) + 100))
    try:
        return list(counter.profile(counter.full))
    finally:
        sys.setrecursionlimit(old)


def count_antichains(n: int, restrict_to: Iterable[int] | VertexSet | None = None,
                     forbidden_above: Iterable[int] | VertexSet | None = None,
                     lam=1, by_size: bool = False, work_limit: int = DEFAULT_WORK_LIMIT):
    """Weighted antichain count sum lam^|A|, or the full size profile."""
    profile = antichain_profile(n, restrict_to, forbidden_above, work_limit)
    if by_size:
        return profile
    lam = as_activity(lam)
    if lam == 1:
        return sum(profile)
    return evaluate_profile(profile, lam)


def monotone_function_count(n: int) -> int:
    """Dedekind number via monotone Boolean functions, a second independent count.

    A monotone function on n variables is a pair f0 <= f1 of monotone
    functions on n-1 variables (its restrictions to x_n = 0 and x_n = 1).
    """
    import numpy as np

    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 6:
        raise ResourceGuardError("monotone function count is limited to n <= 6")
    funcs = np.array([0, 1], dtype=np.uint64)  # truth tables on 0 variables
    for m in range(1, n):
        half = 1 << (m - 1)
        lo = funcs[:, None]
        hi = funcs[None, :]
        ok = (lo & ~hi) == 0
        i, j = np.nonzero(ok)
        funcs = funcs[i] | (funcs[j] << np.uint64(half))
    if n == 0:
        return 2
    total = 0
    for f in funcs:
        total += int(np.count_nonzero((f & ~funcs) == 0))
    return total


def _components(vertices: Iterable[int], n: int, lower: int, excluded=()) -> list[tuple[int, ...]]:
    ambient = AmbientGraph(n, lower, tuple(excluded))
    return [c.elements for c in two_linked_components(VertexSet(n, vertices), ambient)]


def _up_set(vs: Iterable[int], n: int) -> set[int]:
    out = set()
    for v in vs:
        out.update(up_neighbors(v, n))
    return out


def _down_set(vs: Iterable[int]) -> set[int]:
    out = set()
    for v in vs:
        out.update(down_neighbors(v))
    return out


def expands(size: int, shadow: int, n: int) -> bool:
    """The polymer expansion test |shadow| >= (1 + 1/n)|A|."""
    return shadow * n >= (n + 1) * size


def _subsets(items: Sequence[int]):
    m = len(items)
    for mask in range(1 << m):
        yield [items[i] for i in range(m) if mask >> i & 1]


def _check_r(n: int, r: int) -> None:
    if r not in (n // 2, (n + 1) // 2) or r < 1:
        raise ValueError(f"r must be floor(n/2) or ceil(n/2), got r={r} for n={n}")


def count_antichains_expansion_restricted(n: int, r: int, X: Iterable[int] = (),
                                          layers: tuple[int, int] | None = None,
                                          lam=1, condition: str = "projected",
                                          work_limit: int = DEFAULT_WORK_LIMIT) -> Fraction:
    """Z_r over the window L^X_{[lo, r]}, with lo = r-2 or r-1.

    ``condition`` selects which lower-layer set must have expanding 2-linked
    components: ``"projected"`` tests (S cap L_{r-1}) union N^+(S cap L_{r-2}),
    ``"literal"`` tests S cap L_{r-1} alone.  The two agree on two-layer
    windows and whenever r = floor(n/2).
    """
    if n > 7:
        raise ResourceGuardError("expansion-restricted counts are limited to n <= 7")
    _check_r(n, r)
    if condition not in ("projected", "literal"):
        raise ValueError(f"unknown condition {condition!r}")
    lo = r - 2 if layers is None else layers[0]
    if layers is not None and layers[1] != r:
        raise ValueError("window must end at layer r")
    if lo not in (r - 2, r - 1) or lo < 0:
        raise ValueError("window must start at r-2 or r-1")
    lam = as_activity(lam)
    X = tuple(X)
    bottom = [v for v in layer_masks(n, lo) if not is_below_any(v, X)] if lo == r - 2 else []
    mid = [v for v in layer_masks(n, r - 1) if not is_below_any(v, X)]
    top_size = sum(1 for v in layer_masks(n, r) if not is_below_any(v, X))
    if len(bottom) > 24 or len(mid) > 24:
        raise ResourceGuardError("window too large for exhaustive enumeration")
    work = 0
    total = Fraction(0)
    for B in _subsets(bottom):
        blocked = _up_set(B, n)
        free_mid = [v for v in mid if v not in blocked]
        work += 1 << len(free_mid)
        if work > work_limit:
            raise ResourceGuardError("window enumeration exceeded its work budget")
        for A in _subsets(free_mid):
            tested = set(A) | blocked if condition == "projected" else set(A)
            ok = all(expands(len(c), len(_up_set(c, n)), n)
                     for c in _components(tested, n, r - 1, X))
            if not ok:
                continue
            covered = _up_set(set(A) | blocked, n)
            total += lam ** (len(B) + len(A)) * (1 + lam) ** (top_size - len(covered))
    return total


def _central_layers(n: int) -> int:
    return (n + 1) // 2


def _central_configurations(n: int, work_limit: int = 1 << 22) -> list[tuple[int, int]]:
    """(size, shadow size) of every compatible polymer configuration in L_{k-1} and L_{k+1}.

    A configuration is any subset of the two flanking layers whose 2-linked
    components all satisfy the expansion test and whose lower and upper
    parts have disjoint shadows on L_k.
    """
    k = _central_layers(n)
    lower = layer_masks(n, k - 1)
    upper = layer_masks(n, k + 1) if k + 1 <= n else []
    if 1 << (len(lower) + len(upper)) > work_limit:
        raise ResourceGuardError("too many flanking vertices for subset enumeration")
    lower_ok = []
    for A in _subsets(lower):
        comps = _components(A, n, k - 1)
        if all(expands(len(c), len(_up_set(c, n)), n) for c in comps):
            lower_ok.append((len(A), _up_set(A, n)))
    upper_ok = []
    for U in _subsets(upper):
        comps = _components(U, n, k)
        if all(expands(len(c), len(_down_set(c)), n) for c in comps):
            upper_ok.append((len(U), _down_set(U)))
    out = []
    for size_a, shadow_a in lower_ok:
        for size_u, shadow_u in upper_ok:
            if not shadow_a & shadow_u:
                out.append((size_a + size_u, len(shadow_a) + len(shadow_u)))
    return out


def brute_xi_central(n: int, lam, work_limit: int = 1 << 22) -> Fraction:
    """Xi_C = sum over configurations of lam^size (1+lam)^(-shadow)."""
    lam = as_activity(lam)
    return sum((lam ** size / (1 + lam) ** shadow
                for size, shadow in _central_configurations(n, work_limit)), Fraction(0))


def mean_size_oracle(n: int, lam) -> tuple[Fraction, Fraction]:
    """Expected antichain size under polymers plus an independent fill of L_k, two ways.

    The first value sums explicitly over configurations and over the number
    of filled free middle vertices.  The second uses
    E|A| = lam N/(1+lam) + E_Omega[size - lam/(1+lam) * shadow].
    For even n both equal lam d/dlam ln Z(C_n, lam).
    """
    if n > 5:
        raise ResourceGuardError("mean-size oracle is limited to n <= 5")
    lam = as_activity(lam)
    if lam < 0:
        raise ValueError("activity must be nonnegative")
    N = comb(n, _central_layers(n))
    configs = _central_configurations(n)
    weight_sum = Fraction(0)
    size_sum = Fraction(0)
    for size, shadow in configs:
        free = N - shadow
        for filled in range(free + 1):
            w = comb(free, filled) * lam ** (size + filled)
            weight_sum += w
            size_sum += w * (size + filled)
    direct = size_sum / weight_sum
    xi = Fraction(0)
    tilt = Fraction(0)
    p = lam / (1 + lam)
    for size, shadow in configs:
        w = lam ** size / (1 + lam) ** shadow
        xi += w
        tilt += w * (size - p * shadow)
    return direct, p * N + tilt / xi


def interior_weight(A: Sequence[int], n: int, lam: Fraction, excluded=()) -> Fraction:
    """lam^|A| (1+lam)^(-|N^+A|) sum_{B in Int A} lam^(|B| - |N^+B|), for A in one layer."""
    A = list(A)
    members = set(A)
    if not A:
        return Fraction(1)
    size = popcount(A[0])
    inner = []
    if size > 0:
        for v in layer_masks(n, size - 1):
            if excluded and is_below_any(v, excluded):
                continue
            if all(u in members for u in up_neighbors(v, n)):
                inner.append(v)
    acc = Fraction(0)
    for B in _subsets(inner):
        # combine exponents first so lam = 0 stays well defined
        acc += lam ** (len(A) + len(B) - len(_up_set(B, n)))
    return acc / (1 + lam) ** len(_up_set(A, n))


def brute_xi_three_layer(n: int, r: int, X: Iterable[int] = (), lam=1) -> Fraction:
    """Partition function of the polymer model on L^X_{r-1} with interior-sum weights.

    Polymers are expanding 2-linked subsets; two polymers are compatible when
    their union is not 2-linked, so configurations are subsets whose
    components are all polymers, weighted by the product over components.
    """
    if n > 6:
        raise ResourceGuardError("three-layer polymer sums are limited to n <= 6")
    _check_r(n, r)
    lam = as_activity(lam)
    X = tuple(X)
    mid = [v for v in layer_masks(n, r - 1) if not is_below_any(v, X)]
    if len(mid) > 22:
        raise ResourceGuardError("too many polymer vertices")
    total = Fraction(0)
    for A in _subsets(mid):
        term = Fraction(1)
        for comp in _components(A, n, r - 1, X):
            if not expands(len(comp), len(_up_set(comp, n)), n):
                term = None
                break
            term *= interior_weight(comp, n, lam, X)
        if term is not None:
            total += term
    return total


def lemma_three_layer_sides(n: int, r: int, X: Iterable[int] = (), lam=1,
                            condition: str = "projected") -> tuple[Fraction, Fraction]:
    """Both sides of (1+lam)^M * Xi = Z_r(L^X_{[r-2,r]}) with M = |L^X_r|."""
    lam = as_activity(lam)
    X = tuple(X)
    M = sum(1 for v in layer_masks(n, r) if not is_below_any(v, X))
    left = (1 + lam) ** M * brute_xi_three_layer(n, r, X, lam)
    right = count_antichains_expansion_restricted(n, r, X, (r - 2, r), lam, condition)
    return left, right


def central_chain_sides(n: int, lam) -> tuple[Fraction, Fraction]:
    """Both sides of Z(C_n, lam) = (1+lam)^N Xi_C for even n (three central layers)."""
    if n % 2:
        raise ValueError("the exact three-layer identity needs even n")
    lam = as_activity(lam)
    k = n // 2
    window = [v for v in range(1 << n) if k - 1 <= popcount(v) <= k + 1]
    left = count_antichains(n, restrict_to=window, lam=lam)
    return Fraction(left), (1 + lam) ** comb(n, k) * brute_xi_central(n, lam)


def verify_polypart(n: int, lam=1, condition: str = "projected") -> tuple[bool, Fraction, Fraction]:
    """Check (1+lam)^N Xi_L = sum_{X in L_{k+1}} lam^|X| Z_k(L^X_{[k-2,k]}) for odd n.

    Xi_L has upper polymers in L_{k+1} weighted through N^-, and lower polymers
    in L_{k-1} with the interior-sum weight; compatibility is disjointness of
    the two-sided shadows on L_k.
    """
    if n % 2 == 0 or n not in (3, 5):
        raise ValueError("this check is implemented for n in {3, 5}")
    lam = as_activity(lam)
    k = (n + 1) // 2
    N = comb(n, k)
    upper = layer_masks(n, k + 1)
    lower = layer_masks(n, k - 1)
    lower_terms = []
    for A in _subsets(lower):
        comps = _components(A, n, k - 1)
        if not all(expands(len(c), len(_up_set(c, n)), n) for c in comps):
            continue
        weight = Fraction(1)
        for c in comps:
            weight *= interior_weight(c, n, lam)
        lower_terms.append((_up_set(A, n), weight))
    xi = Fraction(0)
    for U in _subsets(upper):
        comps = _components(U, n, k)
        if not all(expands(len(c), len(_down_set(c)), n) for c in comps):
            continue
        shadow_u = _down_set(U)
        w_up = lam ** len(U) / (1 + lam) ** len(shadow_u)
        for shadow_a, w_low in lower_terms:
            if not shadow_a & shadow_u:
                xi += w_up * w_low
    left = (1 + lam) ** N * xi
    right = Fraction(0)
    for U in _subsets(upper):
        right += lam ** len(U) * count_antichains_expansion_restricted(
            n, k, U, (k - 2, k), lam, condition)
    return left == right, left, right


def central_polymer_configurations(n: int, max_size: int):
    """Yield (size, shadow_size) for every compatible configuration of total size <= max_size.

    Used to expand ln Xi_C as a power series in lam without the full subset sum.
    """
    k = _central_layers(n)
    lower = layer_masks(n, k - 1)
    upper = layer_masks(n, k + 1) if k + 1 <= n else []
    verts = lower + upper
    for size in range(max_size + 1):
        for T in combinations(verts, size):
            lo = [v for v in T if popcount(v) == k - 1]
            up = [v for v in T if popcount(v) == k + 1]
            ok = True
            for c in _components(lo, n, k - 1) if lo else []:
                if not expands(len(c), len(_up_set(c, n)), n):
                    ok = False
                    break
            if ok and up:
                for c in _components(up, n, k):
                    if not expands(len(c), len(_down_set(c)), n):
                        ok = False
                        break
            if not ok:
                continue
            sa, su = _up_set(lo, n), _down_set(up)
            if sa & su:
                continue
            yield size, len(sa) + len(su)
