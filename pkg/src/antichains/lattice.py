"""Combinatorics of the Boolean lattice B_n on bitmask elements.

An element of B_n is an ``int`` whose bit ``i`` is set when coordinate
``i+1`` belongs to the subset.  A :class:`VertexSet` carries the ground set
size together with a sorted tuple of such masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

MAX_N = 24


class LatticeError(ValueError):
    pass


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise LatticeError(f"ground set size {n} outside [0, {MAX_N}]")


def popcount(v: int) -> int:
    return bin(v).count("1")


def mask_from_coords(coords: Iterable[int]) -> int:
    """Bitmask of a set of 1-based coordinates."""
    v = 0
    for c in coords:
        if c < 1:
            raise LatticeError("coordinates are 1-based")
        v |= 1 << (c - 1)
    return v


def coords_from_mask(v: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(v.bit_length()) if v >> i & 1)


@dataclass(frozen=True)
class VertexSet:
    """A finite set of elements of B_n, canonically sorted by bit pattern."""

    n: int
    elements: tuple[int, ...]

    def __init__(self, n: int, elements: Iterable[int] = ()):
        _check_n(n)
        full = (1 << n) - 1
        elems = tuple(sorted(set(elements)))
        for v in elems:
            if v < 0 or v & ~full:
                raise LatticeError(f"element {v:#b} not a subset of [{n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "elements", elems)

    @classmethod
    def from_coords(cls, n: int, sets: Iterable[Iterable[int]]) -> "VertexSet":
        return cls(n, (mask_from_coords(s) for s in sets))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return v in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def _same_n(self, other: "VertexSet") -> None:
        if self.n != other.n:
            raise LatticeError("vertex sets over different ground sets")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._same_n(other)
        return VertexSet(self.n, self._set | other._set)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._same_n(other)
        return VertexSet(self.n, self._set & other._set)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._same_n(other)
        return VertexSet(self.n, self._set - other._set)

    def issubset(self, other: "VertexSet") -> bool:
        self._same_n(other)
        return self._set <= other._set

    def layers(self) -> set[int]:
        return {popcount(v) for v in self.elements}

    def single_layer(self) -> int | None:
        """The common layer of all elements, or None when empty."""
        ls = self.layers()
        if len(ls) > 1:
            raise LatticeError(f"expected a single layer, got layers {sorted(ls)}")
        return next(iter(ls)) if ls else None

    def as_coord_sets(self) -> list[tuple[int, ...]]:
        return [coords_from_mask(v) for v in self.elements]

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.as_coord_sets())
        return f"VertexSet(n={self.n}, [{body}])"


def layer(n: int, k: int) -> VertexSet:
    """All k-subsets of [n]."""
    _check_n(n)
    if not 0 <= k <= n:
        raise LatticeError(f"layer {k} outside [0, {n}]")
    return VertexSet(n, (sum(1 << i for i in c) for c in combinations(range(n), k)))


def layer_masks(n: int, k: int) -> list[int]:
    return list(layer(n, k).elements)


def middle_layer_size(n: int) -> int:
    return comb(n, n // 2)


def up_neighbors(v: int, n: int) -> list[int]:
    return [v | 1 << i for i in range(n) if not v >> i & 1]


def down_neighbors(v: int) -> list[int]:
    return [v & ~(1 << i) for i in range(v.bit_length()) if v >> i & 1]


def up_shadow(S: VertexSet) -> VertexSet:
    """N^+(S): elements one layer up that contain some member of S."""
    k = S.single_layer()
    if k is not None and k >= S.n:
        raise LatticeError("top layer has no up-shadow")
    out = set()
    for v in S:
        out.update(up_neighbors(v, S.n))
    return VertexSet(S.n, out)


def down_shadow(S: VertexSet) -> VertexSet:
    """N^-(S): elements one layer down contained in some member of S."""
    k = S.single_layer()
    if k == 0:
        raise LatticeError("bottom layer has no down-shadow")
    out = set()
    for v in S:
        out.update(down_neighbors(v))
    return VertexSet(S.n, out)


def two_sided_shadow(A: VertexSet, k: int) -> VertexSet:
    """Elements of L_k comparable to some member of A, where A lies in L_{k-1} and L_{k+1}."""
    out = set()
    for v in A:
        size = popcount(v)
        if size == k - 1:
            out.update(up_neighbors(v, A.n))
        elif size == k + 1:
            out.update(down_neighbors(v))
        else:
            raise LatticeError(f"element of layer {size} is not adjacent to layer {k}")
    return VertexSet(A.n, out)


def is_below_any(v: int, tops: Iterable[int]) -> bool:
    """True if v is a proper subset of some element of ``tops``."""
    return any(v != w and v & w == v for w in tops)


def restrict_below(Y: VertexSet, X: Iterable[int]) -> VertexSet:
    """Y^X: the members of Y not strictly below any element of X."""
    X = tuple(X)
    return VertexSet(Y.n, (v for v in Y if not is_below_any(v, X)))


@dataclass(frozen=True)
class AmbientGraph:
    """Comparability graph of B_n induced on two consecutive layers.

    ``lower`` is the index of the lower layer; ``excluded_tops`` removes
    every vertex strictly below one of its elements (the Y^X restriction).
    """

    n: int
    lower: int
    excluded_tops: tuple[int, ...] = ()

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.lower < self.n:
            raise LatticeError(f"no layer pair starting at {self.lower} in B_{self.n}")

    def contains(self, v: int) -> bool:
        size = popcount(v)
        if size not in (self.lower, self.lower + 1):
            return False
        return not is_below_any(v, self.excluded_tops)

    def linked(self, u: int, v: int) -> bool:
        """Distance at most two in the ambient graph."""
        if u == v:
            return True
        su, sv = popcount(u), popcount(v)
        if su != sv:
            lo, hi = (u, v) if su < sv else (v, u)
            return lo & hi == lo
        if popcount(u ^ v) != 2:
            return False
        middle = u | v if su == self.lower else u & v
        return self.contains(middle)


def two_linked_components(S: VertexSet, ambient: AmbientGraph) -> list[VertexSet]:
    """Split S into maximal 2-linked pieces relative to ``ambient``."""
    if S.n != ambient.n:
        raise LatticeError("ambient graph over a different ground set")
    for v in S:
        if not ambient.contains(v):
            raise LatticeError(f"{coords_from_mask(v)} is not a vertex of the ambient graph")
    remaining = list(S.elements)
    parent = {v: v for v in remaining}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, u in enumerate(remaining):
        for v in remaining[i + 1:]:
            if ambient.linked(u, v):
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in remaining:
        groups.setdefault(find(v), []).append(v)
    comps = [VertexSet(S.n, g) for g in groups.values()]
    comps.sort(key=lambda c: c.elements[0])
    return comps


def is_two_linked(S: VertexSet, ambient: AmbientGraph) -> bool:
    return len(S) > 0 and len(two_linked_components(S, ambient)) == 1


def closure(A: VertexSet) -> VertexSet:
    """[A]: members v of A's layer whose whole up-shadow lies in N^+(A)."""
    k = A.single_layer()
    if k is None:
        return A
    shadow = set(up_shadow(A))
    return VertexSet(A.n, (v for v in layer(A.n, k) if all(u in shadow for u in up_neighbors(v, A.n))))


def interior(A: VertexSet, excluded_tops: Iterable[int] = ()) -> VertexSet:
    """Int(A): members v of the layer below A (restricted by Y^X) with N^+(v) inside A."""
    k = A.single_layer()
    if k is None or k == 0:
        return VertexSet(A.n, ())
    members = set(A)
    tops = tuple(excluded_tops)
    out = []
    for v in layer(A.n, k - 1):
        if tops and is_below_any(v, tops):
            continue
        if all(u in members for u in up_neighbors(v, A.n)):
            out.append(v)
    return VertexSet(A.n, out)


def is_antichain(S: VertexSet | Iterable[int]) -> bool:
    elems = list(S)
    for i, u in enumerate(elems):
        for v in elems[i + 1:]:
            if u != v and (u & v == u or u & v == v):
                return False
    return True


def comparable(u: int, v: int) -> bool:
    return u & v == u or u & v == v
