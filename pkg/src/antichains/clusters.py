"""Rooted cluster enumeration for the central polymer model.

Polymers live in L_{k-1} (LOWER) or L_{k+1} (UPPER) and two polymers are
incompatible when their shadows on L_k meet.  Every cluster is counted
from a root vertex: v1 = [k-1] (root 1, lower) or v2 = [k+1] (root 2,
upper).  A cluster's vertices differ from the root only on a window of
``a1`` coordinates inside the root and ``a2`` coordinates outside it, so
each vertex is stored as its pattern on that window: bit i < a1 is an
"in" coordinate, bit a1 + i an "out" coordinate.  Nothing here depends
on n; n enters only through the binomial counts of window placements
and through the shadow sizes, which are linear in n.

Shadow bookkeeping.  A lower vertex v has the n-k+1 up-neighbours
v + {i}.  When i lies in the window the neighbour is an in-window point
and may be shared with other vertices; when i lies outside the window
the neighbour differs from the root pattern outside the window, so it
cannot coincide with any in-window point nor with a fresh neighbour of
another vertex (those differ from the root at a different outside
coordinate, or are the same vertex).  The same holds for upper vertices
and their down-neighbours.  Hence |shadow(A)| = degree * |A| - excess(A)
where excess counts repeated in-window points only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable

from .algebra import ExactPoly, binomial_poly
from .ursell import ursell

LOWER = "LOWER"
UPPER = "UPPER"
PARITIES = ("even", "odd")
DEFAULT_J_MAX = 5
HARD_J_MAX = 6

_n = ExactPoly.var("n")
_lam = ExactPoly.var("lam")


def middle_index(parity: str) -> ExactPoly:
    """k as a polynomial in n: n/2 for even n, (n+1)/2 for odd n."""
    if parity == "even":
        return _n / 2
    if parity == "odd":
        return (_n + 1) / 2
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def lower_alpha_shift(parity: str) -> int:
    """(k+1) - (n-k+1) = 2k - n: 0 for even n, 1 for odd n."""
    return 0 if parity == "even" else 1


def degree_of(tag: str, parity: str) -> ExactPoly:
    k = middle_index(parity)
    return _n - k + 1 if tag == LOWER else k + 1


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Window:
    root: int
    a1: int
    a2: int

    def __post_init__(self):
        if self.root not in (1, 2):
            raise ValueError("root must be 1 (lower) or 2 (upper)")
        if self.a1 < 0 or self.a2 < 0:
            raise ValueError("window sizes must be nonnegative")

    @property
    def width(self) -> int:
        return self.a1 + self.a2

    @property
    def full(self) -> int:
        return (1 << self.width) - 1

    @property
    def root_pattern(self) -> int:
        return (1 << self.a1) - 1

    def tag(self, pattern: int) -> str | None:
        offset = _popcount(pattern) - self.a1
        if self.root == 1:
            return {0: LOWER, 2: UPPER}.get(offset)
        return {0: UPPER, -2: LOWER}.get(offset)

    def vertices(self) -> list[int]:
        return [p for p in range(1 << self.width) if self.tag(p) is not None]

    def placements(self, parity: str) -> ExactPoly:
        """Number of ways to choose the in/out window coordinates around the root."""
        k = middle_index(parity)
        if self.root == 1:
            return binomial_poly(k - 1, self.a1) * binomial_poly(_n - k + 1, self.a2)
        return binomial_poly(k + 1, self.a1) * binomial_poly(_n - k - 1, self.a2)


def shadows_meet(tag_u: str, u: int, tag_v: str, v: int) -> bool:
    """True if the two vertices share a neighbour in the middle layer."""
    if u == v:
        return True
    if tag_u == tag_v:
        return _popcount(u ^ v) == 2
    lo, hi = (u, v) if tag_u == LOWER else (v, u)
    return lo & hi == lo


@dataclass(frozen=True)
class Polymer:
    """A 2-linked single-layer vertex set, stored as sorted window patterns."""

    tag: str
    vertices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def in_window_shadow(self, window: Window) -> dict[int, int]:
        """In-window shadow points with their multiplicities."""
        counts: dict[int, int] = {}
        for p in self.vertices:
            for i in range(window.width):
                bit = 1 << i
                if self.tag == LOWER and not p & bit:
                    x = p | bit
                elif self.tag == UPPER and p & bit:
                    x = p & ~bit
                else:
                    continue
                counts[x] = counts.get(x, 0) + 1
        return counts

    def excess(self, window: Window) -> int:
        return sum(c - 1 for c in self.in_window_shadow(window).values())

    def fresh_count(self, pattern: int, window: Window, parity: str) -> ExactPoly:
        """Shadow neighbours of one vertex that use a coordinate outside the window."""
        if self.tag == LOWER:
            return degree_of(LOWER, parity) - (window.width - _popcount(pattern))
        return degree_of(UPPER, parity) - _popcount(pattern)

    def alpha(self, window: Window, parity: str) -> int:
        """(k+1)|A| - |shadow(A)|, an integer once the parity is fixed."""
        shift = lower_alpha_shift(parity) if self.tag == LOWER else 0
        return self.excess(window) + shift * self.size


def shadow_size_linear(polymer: Polymer, parity: str, window: Window) -> tuple[ExactPoly, int]:
    """|shadow(A)| as a linear polynomial in n, plus the number of in-window points."""
    in_window = len(polymer.in_window_shadow(window))
    total = ExactPoly.const(in_window)
    for p in polymer.vertices:
        total = total + polymer.fresh_count(p, window, parity)
    return total, in_window


@dataclass(frozen=True)
class Cluster:
    """A multiset of polymers with connected incompatibility graph.

    ``orderings`` is the number of distinct ordered tuples it stands for;
    all of them share the same Ursell value.
    """

    polymers: tuple[Polymer, ...]
    edges: tuple[tuple[int, int], ...]
    ursell: Fraction
    orderings: int
    excess: int
    lower_count: int

    @property
    def size(self) -> int:
        return sum(p.size for p in self.polymers)

    def alpha(self, parity: str) -> int:
        return self.excess + lower_alpha_shift(parity) * self.lower_count

    def shadow_total(self, parity: str) -> ExactPoly:
        """Sum over polymers of |shadow|, equal to (k+1)j - alpha."""
        k = middle_index(parity)
        return (k + 1) * self.size - self.alpha(parity)

    def to_json(self) -> dict:
        return {
            "polymers": [{"tag": p.tag, "vertices": list(p.vertices)} for p in self.polymers],
            "edges": [list(e) for e in self.edges],
            "ursell": str(self.ursell),
            "orderings": self.orderings,
            "excess": self.excess,
            "lower_count": self.lower_count,
        }


def _connected_vertex_sets(window: Window, size: int) -> list[tuple[int, ...]]:
    verts = window.vertices()
    tags = {p: window.tag(p) for p in verts}
    neighbours = {
        p: [q for q in verts if q != p and shadows_meet(tags[p], p, tags[q], q)] for p in verts
    }
    level = {frozenset([window.root_pattern])}
    for _ in range(size - 1):
        nxt = set()
        for S in level:
            for p in S:
                for q in neighbours[p]:
                    if q not in S:
                        nxt.add(S | {q})
        level = nxt
    out = []
    for S in level:
        active = 0
        for p in S:
            active |= p ^ window.root_pattern
        if active == window.full:
            out.append(tuple(sorted(S)))
    out.sort()
    return out


def _polymers_within(window: Window, vertex_set: tuple[int, ...]) -> list[Polymer]:
    out = []
    for tag in (LOWER, UPPER):
        members = [p for p in vertex_set if window.tag(p) == tag]
        for r in range(1, len(members) + 1):
            for combo in combinations(members, r):
                if _same_layer_connected(combo):
                    out.append(Polymer(tag, combo))
    return out


def _same_layer_connected(vertices: tuple[int, ...]) -> bool:
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        p = stack.pop()
        for q in vertices:
            if q not in seen and _popcount(p ^ q) == 2:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(vertices)


def _incompatible(a: Polymer, b: Polymer) -> bool:
    return any(shadows_meet(a.tag, u, b.tag, v) for u in a.vertices for v in b.vertices)


def _is_connected(size: int, edges: list[tuple[int, int]]) -> bool:
    adj = [[] for _ in range(size)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == size


def _check_class(j: int, ell: int, a1: int, a2: int) -> None:
    if not 1 <= ell <= j:
        raise ValueError(f"need 1 <= ell <= j, got ell={ell}, j={j}")
    if j > HARD_J_MAX:
        raise ValueError(f"cluster size {j} exceeds the hard limit {HARD_J_MAX}")
    if a1 + a2 > 2 * (ell - 1):
        raise ValueError(f"a1 + a2 = {a1 + a2} exceeds 2(ell-1) = {2 * (ell - 1)}")


def enumerate_cluster_class(j: int, ell: int, a1: int, a2: int, root: int) -> list[Cluster]:
    """All clusters of size j on ell vertices containing the root with active window (a1, a2)."""
    _check_class(j, ell, a1, a2)
    return list(_cluster_class(j, ell, a1, a2, root))


@lru_cache(maxsize=None)
def _cluster_class(j: int, ell: int, a1: int, a2: int, root: int) -> tuple[Cluster, ...]:
    window = Window(root, a1, a2)
    found = []
    for vertex_set in _connected_vertex_sets(window, ell):
        polymers = _polymers_within(window, vertex_set)
        target = set(vertex_set)
        excess = [p.excess(window) for p in polymers]
        chosen: list[int] = []

        def extend(start: int, remaining: int):
            if remaining == 0:
                covered = set()
                for i in chosen:
                    covered.update(polymers[i].vertices)
                if covered != target:
                    return
                members = [polymers[i] for i in chosen]
                t = len(members)
                edges = [(a, b) for a in range(t) for b in range(a + 1, t)
                         if _incompatible(members[a], members[b])]
                if not _is_connected(t, edges):
                    return
                counts: dict[int, int] = {}
                for i in chosen:
                    counts[i] = counts.get(i, 0) + 1
                orderings = factorial(t)
                for c in counts.values():
                    orderings //= factorial(c)
                found.append(Cluster(
                    polymers=tuple(members),
                    edges=tuple(edges),
                    ursell=ursell(t, edges),
                    orderings=orderings,
                    excess=sum(excess[i] for i in chosen),
                    lower_count=sum(polymers[i].size for i in chosen if polymers[i].tag == LOWER),
                ))
                return
            for i in range(start, len(polymers)):
                if polymers[i].size <= remaining:
                    chosen.append(i)
                    extend(i, remaining - polymers[i].size)
                    chosen.pop()

        extend(0, j)
    return tuple(found)


def class_weight_table(j: int, ell: int, a1: int, a2: int, root: int) -> dict[tuple[int, int], Fraction]:
    """Sum of orderings * Ursell value, keyed by (excess, lower vertex count)."""
    table: dict[tuple[int, int], Fraction] = {}
    for c in _cluster_class(j, ell, a1, a2, root):
        key = (c.excess, c.lower_count)
        table[key] = table.get(key, Fraction(0)) + c.orderings * c.ursell
    return {k: v for k, v in table.items() if v}


def class_sum(j: int, ell: int, a1: int, a2: int, root: int, parity: str) -> ExactPoly:
    """sum over the class of phi(G) * lam^j * (1+lam)^alpha, a polynomial in lam."""
    _check_class(j, ell, a1, a2)
    shift = lower_alpha_shift(parity)
    total = ExactPoly.const(0)
    for (excess, lower), w in class_weight_table(j, ell, a1, a2, root).items():
        total = total + (1 + _lam) ** (excess + shift * lower) * w
    return total * _lam ** j


def class_indices(j: int):
    for ell in range(1, j + 1):
        bound = 2 * (ell - 1)
        for a1 in range(bound + 1):
            for a2 in range(bound - a1 + 1):
                yield ell, a1, a2


@dataclass
class ClusterSum:
    """Assembled cluster sums for one size j and parity.

    ``branches`` maps the root (1 or 2) to S_j^root(n, lam), so that the
    total weight of clusters of size j is
    sum_root binom(n, layer(root)) * S_j^root * (1+lam)^(-j(k+1)).
    For even n the two binomials coincide and S_j^0 is their sum.
    """

    j: int
    parity: str
    branches: dict[int, ExactPoly]
    metadata: dict = field(default_factory=dict)

    @property
    def combined(self) -> ExactPoly:
        if self.parity != "even":
            raise ValueError("a single combined sum exists only for even n")
        return self.branches[1] + self.branches[2]

    def values(self) -> dict[int, ExactPoly]:
        """Published branches: {0: S^0} for even parity, {1: S^1, 2: S^2} for odd."""
        if self.parity == "even":
            return {0: self.combined}
        return dict(self.branches)


def _check_j(j: int, j_max: int) -> None:
    if j < 1:
        raise ValueError("cluster size must be at least 1")
    if j > min(j_max, HARD_J_MAX):
        raise ValueError(f"cluster size {j} exceeds j_max={min(j_max, HARD_J_MAX)}")


def _weighted_sum(j: int, parity: str, weight) -> ClusterSum:
    shift = lower_alpha_shift(parity)
    branches = {}
    for root in (1, 2):
        total = ExactPoly.const(0)
        for ell, a1, a2 in class_indices(j):
            table = class_weight_table(j, ell, a1, a2, root)
            if not table:
                continue
            inner = ExactPoly.const(0)
            for (excess, lower), w in table.items():
                alpha = excess + shift * lower
                inner = inner + weight(alpha) * (1 + _lam) ** alpha * w
            total = total + Window(root, a1, a2).placements(parity) * inner / ell
        branches[root] = total * _lam ** j
    meta = {"j": j, "parity": parity, "n_min": 2 * (j - 1) + j + 2}
    return ClusterSum(j, parity, branches, meta)


@lru_cache(maxsize=None)
def _cached_cluster_sum(j: int, parity: str) -> ClusterSum:
    return _weighted_sum(j, parity, lambda alpha: 1)


def cluster_sum(j: int, parity: str, j_max: int = DEFAULT_J_MAX) -> ClusterSum:
    """S_j for the given parity (both root branches)."""
    _check_j(j, j_max)
    middle_index(parity)
    return _cached_cluster_sum(j, parity)


def truncated_cumulant_sum(power: int, j: int, parity: str, mode: str = "SIZE",
                           j_max: int = DEFAULT_J_MAX) -> ClusterSum:
    """Cluster sums of size j weighted by ||Gamma||^power (SIZE) or ||shadow(Gamma)||^power (SHADOW)."""
    _check_j(j, j_max)
    if power < 0:
        raise ValueError("power must be nonnegative")
    k = middle_index(parity)
    if mode == "SIZE":
        return _weighted_sum(j, parity, lambda alpha: ExactPoly.const(j) ** power)
    if mode == "SHADOW":
        return _weighted_sum(j, parity, lambda alpha: ((k + 1) * j - alpha) ** power)
    raise ValueError(f"mode must be SIZE or SHADOW, got {mode!r}")


def dump_cluster_class(j: int, ell: int, a1: int, a2: int, root: int) -> str:
    data = {
        "j": j, "ell": ell, "a1": a1, "a2": a2, "root": root,
        "clusters": [c.to_json() for c in enumerate_cluster_class(j, ell, a1, a2, root)],
    }
    return json.dumps(data, sort_keys=True)


def literal_cluster_sum(n: int, j: int, lam, polymers_up_to: int | None = None) -> Fraction:
    """Total weight of clusters of size j in the concrete lattice B_n.

    Polymers are enumerated as actual vertex sets with the literal
    expansion test, so this is an independent check of the window
    abstraction used by :func:`cluster_sum`.
    """
    from .oracle import as_activity, expands

    lam = as_activity(lam)
    k = (n + 1) // 2
    polymers = _literal_polymers(n, k, polymers_up_to or j)
    # index polymers by the middle-layer points of their shadows
    by_point: dict[int, list[int]] = {}
    for idx, (_, shadow) in enumerate(polymers):
        for x in shadow:
            by_point.setdefault(x, []).append(idx)
    weights = [lam ** len(verts) / (1 + lam) ** len(shadow) for verts, shadow in polymers]

    def conflicts(idx: int) -> set[int]:
        out = set()
        for x in polymers[idx][1]:
            out.update(by_point[x])
        return out

    seen: set[tuple[int, ...]] = set()
    total = Fraction(0)

    def grow(chosen: list[int], size: int, frontier: set[int]):
        if size == j:
            key = tuple(sorted(chosen))
            if key in seen:
                return
            seen.add(key)
            t = len(key)
            edges = [(a, b) for a in range(t) for b in range(a + 1, t)
                     if key[a] == key[b] or polymers[key[a]][1] & polymers[key[b]][1]]
            counts: dict[int, int] = {}
            for i in key:
                counts[i] = counts.get(i, 0) + 1
            orderings = factorial(t)
            for c in counts.values():
                orderings //= factorial(c)
            w = Fraction(orderings) * ursell(t, edges)
            for i in key:
                w *= weights[i]
            nonlocal total
            total += w
            return
        for idx in sorted(frontier):
            s = len(polymers[idx][0])
            if size + s <= j:
                chosen.append(idx)
                grow(chosen, size + s, frontier | conflicts(idx))
                chosen.pop()

    for idx, (verts, _) in enumerate(polymers):
        if len(verts) <= j:
            grow([idx], len(verts), conflicts(idx) | {idx})
    return total


def _literal_polymers(n: int, k: int, max_size: int) -> list[tuple[frozenset, frozenset]]:
    from .lattice import down_neighbors, layer_masks, up_neighbors
    from .oracle import expands

    out = []
    for size_layer, upward in ((k - 1, True), (k + 1, False)):
        if not 0 <= size_layer <= n:
            continue
        verts = layer_masks(n, size_layer)
        nbrs = {v: [u for u in verts if u != v and _popcount(u ^ v) == 2] for v in verts}
        found: set[frozenset] = set()
        level = {frozenset([v]) for v in verts}
        for size in range(1, max_size + 1):
            found.update(level)
            if size == max_size:
                break
            nxt = set()
            for S in level:
                for v in S:
                    for u in nbrs[v]:
                        if u not in S:
                            nxt.add(S | {u})
            level = nxt
        for S in sorted(found, key=lambda s: (len(s), sorted(s))):
            shadow = set()
            for v in S:
                shadow.update(up_neighbors(v, n) if upward else down_neighbors(v))
            if expands(len(S), len(shadow), n):
                out.append((S, frozenset(shadow)))
    return out
