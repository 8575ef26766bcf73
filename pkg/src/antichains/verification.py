"""Self-check suites exposed through ``antichains verify``.

Each suite returns a list of CheckResult; a suite passes when all of its
checks do.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import e

from .algebra import RationalFn
from .lattice import (
    AmbientGraph,
    VertexSet,
    layer_masks,
    up_shadow,
)

SUITES = ("appendix", "identities", "isoperimetry", "ursell")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def suite_passed(results: list[CheckResult]) -> bool:
    return all(r.ok for r in results)


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return {"appendix": appendix_checks, "identities": identity_checks,
            "isoperimetry": isoperimetry_checks, "ursell": ursell_checks}[name]()


def appendix_checks() -> list[CheckResult]:
    from .coefficients import compute
    from .reference import APPENDIX

    out = []
    for (kind, j, parity, branch), build in APPENDIX.items():
        fam = next(f for f in compute(kind, j, parity) if f.branch == branch)
        ok = RationalFn.coerce(fam.value) == RationalFn.coerce(build())
        out.append(CheckResult(fam.name + f" ({parity})", ok))
    return out


def seeded_upper_antichains(n: int, r: int, count: int, seed: int = 0) -> list[tuple[int, ...]]:
    """Nonempty antichains drawn from layers above r, reproducibly."""
    from .lattice import is_antichain

    rng = random.Random(seed)
    upper = [v for size in range(r + 1, n + 1) for v in layer_masks(n, size)]
    found: list[tuple[int, ...]] = []
    while len(found) < count:
        pick = rng.sample(upper, rng.randint(1, 3))
        if is_antichain(pick):
            key = tuple(sorted(pick))
            if key not in found:
                found.append(key)
    return found


def identity_checks() -> list[CheckResult]:
    from .oracle import (
        central_chain_sides,
        lemma_three_layer_sides,
        mean_size_oracle,
        verify_polypart,
    )

    out = []
    for lam in (Fraction(1), Fraction(1, 2), Fraction(3)):
        left, right = central_chain_sides(4, lam)
        out.append(CheckResult(f"central chain n=4 lam={lam}", left == right, f"{left} vs {right}"))
    for n, r in ((4, 2), (5, 3)):
        for X in [()] + seeded_upper_antichains(n, r, 5, seed=n):
            left, right = lemma_three_layer_sides(n, r, X, 1)
            out.append(CheckResult(f"three-layer n={n} r={r} X={list(X)}", left == right,
                                   f"{left} vs {right}"))
    for n in (3, 5):
        for lam in (Fraction(1), Fraction(1, 3)):
            ok, left, right = verify_polypart(n, lam)
            out.append(CheckResult(f"odd partition n={n} lam={lam}", ok, f"{left} vs {right}"))
    for n in (4, 5):
        direct, identity = mean_size_oracle(n, 1)
        out.append(CheckResult(f"mean size n={n}", direct == identity, f"{direct} vs {identity}"))
    return out


def _check_subsets(n: int, size: int, rng: random.Random, exhaustive_limit: int = 4000,
                   samples: int = 300):
    """Subsets of L_size: all small ones when cheap, otherwise a seeded sample."""
    verts = layer_masks(n, size)
    for t in range(1, len(verts) + 1):
        total = 1
        for i in range(t):
            total = total * (len(verts) - i) // (i + 1)
        if total <= exhaustive_limit:
            yield from combinations(verts, t)
        else:
            for _ in range(samples):
                yield tuple(rng.sample(verts, t))


def isoperimetry_checks(max_n: int = 8, seed: int = 2024) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for n in range(2, max_n + 1):
        shadow_fail = expand_fail = 0
        checked = 0
        for i in range(1, (n + 1) // 2 + 1):
            for S in _check_subsets(n, i - 1, rng):
                checked += 1
                shadow = len(up_shadow(VertexSet(n, S)))
                s = len(S)
                # the stated range |S| <= n/10 is empty for n < 10, so test every size
                if 2 * shadow < n * s - 2 * s * s:
                    shadow_fail += 1
                if i <= n // 2 and n * shadow < (n + 1) * s:
                    expand_fail += 1
        out.append(CheckResult(f"shadow >= n|S|/2 - |S|^2, n={n}", shadow_fail == 0,
                               f"{checked} sets, {shadow_fail} failures"))
        out.append(CheckResult(f"expansion (1+1/n) n={n}", expand_fail == 0,
                               f"{checked} sets, {expand_fail} failures"))
    for n in range(2, 7):
        for lower in range(n):
            ambient = AmbientGraph(n, lower)
            degree = max(n - lower, lower + 1)
            root = layer_masks(n, lower)[0]
            for t in (1, 2, 3):
                count = count_two_linked_containing(ambient, root, t)
                bound = (e * degree ** 2) ** (t - 1)
                out.append(CheckResult(f"2-linked count n={n} layers {lower},{lower + 1} t={t}",
                                       count <= bound, f"{count} <= {bound:.1f}"))
    return out


def ambient_vertices(ambient: AmbientGraph) -> list[int]:
    return layer_masks(ambient.n, ambient.lower) + layer_masks(ambient.n, ambient.lower + 1)


def count_two_linked_containing(ambient: AmbientGraph, root: int, size: int) -> int:
    """Number of 2-linked vertex sets of the given size that contain ``root``."""
    verts = [v for v in ambient_vertices(ambient) if ambient.contains(v)]
    nbrs = {v: {u for u in verts if u != v and ambient.linked(u, v)} for v in verts}
    level = {frozenset([root])}
    for _ in range(size - 1):
        level = {S | {u} for S in level for v in S for u in nbrs[v] if u not in S}
    return len(level)


def all_graphs(size: int):
    pairs = list(combinations(range(size), 2))
    for mask in range(1 << len(pairs)):
        yield [p for i, p in enumerate(pairs) if mask >> i & 1]


def ursell_checks() -> list[CheckResult]:
    from .ursell import ursell, ursell_deletion_contraction

    expected = {
        "K1": (1, [], Fraction(1)),
        "K2": (2, [(0, 1)], Fraction(-1, 2)),
        "P3": (3, [(0, 1), (1, 2)], Fraction(1, 6)),
        "K3": (3, [(0, 1), (1, 2), (0, 2)], Fraction(1, 3)),
    }
    out = []
    for name, (size, edges, value) in expected.items():
        got = ursell(size, edges)
        out.append(CheckResult(f"ursell {name}", got == value, f"{got}"))
    for size in range(1, 6):
        bad = sum(1 for edges in all_graphs(size)
                  if ursell(size, edges) != ursell_deletion_contraction(size, edges))
        out.append(CheckResult(f"deletion-contraction, {size} vertices", bad == 0,
                               f"{bad} disagreements"))
    return out
