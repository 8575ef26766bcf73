"""Ursell function of a finite graph.

phi(G) = (1/|V|!) * sum over spanning connected edge subsets A of (-1)^|A|.
Graphs are given as a vertex count and an iterable of edges (pairs of
vertex indices); loops and repeated edges are ignored.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable

MAX_VERTICES = 9


def _edge_key(size: int, edges: Iterable[tuple[int, int]]) -> tuple[int, frozenset]:
    clean = set()
    for a, b in edges:
        if not (0 <= a < size and 0 <= b < size):
            raise ValueError(f"edge {(a, b)} outside vertex range {size}")
        if a != b:
            clean.add((min(a, b), max(a, b)))
    return size, frozenset(clean)


def ursell(size: int, edges: Iterable[tuple[int, int]] = ()) -> Fraction:
    """Ursell function via the connected-subset recurrence on vertex subsets."""
    if size < 1:
        raise ValueError("graph needs at least one vertex")
    if size > MAX_VERTICES:
        raise ValueError(f"Ursell function is limited to {MAX_VERTICES} vertices")
    return _ursell_cached(*_edge_key(size, edges))


@lru_cache(maxsize=None)
def _ursell_cached(size: int, edges: frozenset) -> Fraction:
    adj = [0] * size
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    def edgeless(S: int) -> bool:
        x = S
        while x:
            low = x & -x
            v = low.bit_length() - 1
            if adj[v] & S:
                return False
            x ^= low
        return True

    # connected[S] = signed count of connected spanning edge subsets of G[S]
    connected: dict[int, int] = {}
    full = (1 << size) - 1
    for S in range(1, full + 1):
        low = S & -S
        rest = S ^ low
        total = 1 if edgeless(S) else 0
        # T runs over proper subsets of S containing its lowest vertex
        sub = (rest - 1) & rest
        while True:
            T = low | sub
            if T != S:
                if edgeless(S ^ T):
                    total -= connected[T]
            if sub == 0:
                break
            sub = (sub - 1) & rest
        connected[S] = total
    return Fraction(connected[full], factorial(size))


def ursell_by_edge_subsets(size: int, edges: Iterable[tuple[int, int]] = ()) -> Fraction:
    """Direct definition: enumerate all edge subsets and test connectivity."""
    size, edge_set = _edge_key(size, edges)
    edge_list = sorted(edge_set)
    if len(edge_list) > 20:
        raise ValueError("too many edges for direct enumeration")
    total = 0
    for mask in range(1 << len(edge_list)):
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parts = size
        count = 0
        for i, (a, b) in enumerate(edge_list):
            if mask >> i & 1:
                count += 1
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    parts -= 1
        if parts == 1:
            total += -1 if count % 2 else 1
    return Fraction(total, factorial(size))


def ursell_deletion_contraction(size: int, edges: Iterable[tuple[int, int]] = ()) -> Fraction:
    """Independent evaluation by deletion and contraction on multigraphs.

    With C(G) the signed count of connected spanning edge subsets,
    C(G) = C(G - e) - C(G / e); a loop forces C = 0, a single vertex
    gives 1 and several vertices with no edges give 0.
    """
    size, edge_set = _edge_key(size, edges)
    signed = _dc_count(size, tuple(sorted(edge_set)))
    return Fraction(signed, factorial(size))


def _dc_count(size: int, edges: tuple[tuple[int, int], ...]) -> int:
    if any(a == b for a, b in edges):
        return 0
    if not edges:
        return 1 if size == 1 else 0
    (a, b), rest = edges[0], edges[1:]
    deleted = _dc_count(size, rest)
    # merge b into a, then relabel so vertices stay 0..size-2
    def relabel(v):
        v = a if v == b else v
        return v - 1 if v > b else v
    contracted = tuple(sorted((min(relabel(x), relabel(y)), max(relabel(x), relabel(y))) for x, y in rest))
    return deleted - _dc_count(size - 1, contracted)
