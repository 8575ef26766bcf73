import json
from fractions import Fraction
from itertools import permutations

import pytest

from antichains.algebra import ExactPoly
from antichains.clusters import (
    LOWER,
    UPPER,
    Polymer,
    Window,
    class_indices,
    cluster_sum,
    dump_cluster_class,
    enumerate_cluster_class,
    literal_cluster_sum,
    shadow_size_linear,
    truncated_cumulant_sum,
)

import series_tools as ser

n = ExactPoly.var("n")
lam = ExactPoly.var("lam")


def test_single_vertex_class():
    for root in (1, 2):
        clusters = enumerate_cluster_class(1, 1, 0, 0, root)
        assert len(clusters) == 1
        c = clusters[0]
        assert c.size == 1 and c.ursell == 1 and c.orderings == 1


def test_repeated_singleton_at_size_two():
    clusters = enumerate_cluster_class(2, 1, 0, 0, 1)
    assert len(clusters) == 1
    c = clusters[0]
    assert len(c.polymers) == 2 and c.polymers[0] == c.polymers[1]
    assert c.ursell == Fraction(-1, 2) and c.orderings == 1


def test_class_parameter_validation():
    with pytest.raises(ValueError):
        enumerate_cluster_class(2, 1, 1, 0, 1)
    with pytest.raises(ValueError):
        enumerate_cluster_class(2, 3, 0, 0, 1)
    with pytest.raises(ValueError):
        Window(3, 0, 0)


def test_shadow_sizes_of_singletons():
    w = Window(1, 0, 0)
    even, _ = shadow_size_linear(Polymer(LOWER, (0,)), "even", w)
    assert even == n / 2 + 1
    odd_lower, _ = shadow_size_linear(Polymer(LOWER, (0,)), "odd", w)
    assert odd_lower == (n + 1) / 2
    w2 = Window(2, 0, 0)
    odd_upper, _ = shadow_size_linear(Polymer(UPPER, (0,)), "odd", w2)
    assert odd_upper == (n + 1) / 2 + 1


def test_shadow_of_swapped_pair():
    # window a1 = a2 = 1 around v1: patterns 0b01 (root) and 0b10 (swap)
    w = Window(1, 1, 1)
    total, in_window = shadow_size_linear(Polymer(LOWER, (0b01, 0b10)), "even", w)
    assert total == 2 * (n / 2 + 1) - 1
    assert in_window == 1


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_alpha_bounds(parity):
    for j in range(1, 5):
        for ell, a1, a2 in class_indices(j):
            for root in (1, 2):
                for c in enumerate_cluster_class(j, ell, a1, a2, root):
                    assert 0 <= c.alpha(parity) <= j * (j + 1) // 2


def _permuted(pattern, perm, offset):
    """Move bit offset+i of the pattern to offset+perm[i]."""
    out = pattern
    for i in range(len(perm)):
        out &= ~(1 << (offset + i))
    for i, target in enumerate(perm):
        out |= ((pattern >> (offset + i)) & 1) << (offset + target)
    return out


def _signature(c, perm=None, offset=0):
    def move(p):
        return p if perm is None else _permuted(p, perm, offset)
    return tuple(sorted((p.tag, tuple(sorted(move(v) for v in p.vertices))) for p in c.polymers))


@pytest.mark.parametrize("root", [1, 2])
def test_class_closed_under_window_permutations(root):
    for j in (2, 3):
        for ell, a1, a2 in class_indices(j):
            clusters = enumerate_cluster_class(j, ell, a1, a2, root)
            base = sorted(_signature(c) for c in clusters)
            for offset, size in ((0, a1), (a1, a2)):
                for perm in permutations(range(size)):
                    moved = sorted(_signature(c, perm, offset) for c in clusters)
                    assert moved == base


def test_size_one_sums():
    assert cluster_sum(1, "even").values()[0] == 2 * lam
    odd = cluster_sum(1, "odd").values()
    assert odd[1] == lam * (1 + lam)
    assert odd[2] == lam


@pytest.mark.parametrize("size", [7, 8, 9, 12])
def test_size_one_total_matches_closed_form(size):
    from math import comb

    x = Fraction(2, 5)
    k = (size + 1) // 2
    values = cluster_sum(1, "even" if size % 2 == 0 else "odd").values()
    if size % 2 == 0:
        total = comb(size, k - 1) * values[0].evaluate({"lam": x}) / (1 + x) ** (k + 1)
        closed = 2 * comb(size, k + 1) * x / (1 + x) ** (k + 1)
    else:
        total = sum(ser.layer_binomials(size)[b] * values[b].evaluate({"lam": x}) / (1 + x) ** (k + 1)
                    for b in (1, 2))
        closed = comb(size, k - 1) * x / (1 + x) ** k + comb(size, k + 1) * x / (1 + x) ** (k + 1)
    assert total == closed


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_degree_bounds(parity):
    for j in range(1, 5):
        for value in cluster_sum(j, parity).values().values():
            assert value.degree("n") <= 2 * (j - 1)
            assert value.degree("lam") <= 2 * j * j


def test_j_guard():
    with pytest.raises(ValueError):
        cluster_sum(7, "even")
    with pytest.raises(ValueError):
        cluster_sum(3, "even", j_max=2)


def _symbolic_total(size, j, x):
    parity = "even" if size % 2 == 0 else "odd"
    k = (size + 1) // 2
    binoms = ser.layer_binomials(size)
    branches = cluster_sum(j, parity).branches
    return sum(binoms[b] * branches[b].evaluate({"n": size, "lam": x}) / (1 + x) ** (j * (k + 1))
               for b in (1, 2))


@pytest.mark.parametrize("j", [1, 2])
def test_literal_lattice_sum_n8(j):
    assert literal_cluster_sum(8, j, 1) == _symbolic_total(8, j, Fraction(1))


@pytest.mark.parametrize("size,j", [(7, 2), (5, 2), (4, 2), (6, 2)])
def test_literal_lattice_sum_other_sizes(size, j):
    x = Fraction(1, 2)
    assert literal_cluster_sum(size, j, x) == _symbolic_total(size, j, x)


@pytest.mark.slow
def test_literal_lattice_sum_size_three():
    assert literal_cluster_sum(6, 3, 1) == _symbolic_total(6, 3, Fraction(1))


@pytest.mark.parametrize("size,order", [(4, 3), (5, 3), (6, 4)])
def test_cluster_sums_expand_log_xi(size, order):
    """ln Xi_C from brute-force configurations agrees with the cluster sums as a lam-series."""
    exact = ser.log_xi_central(size, order)
    parity = "even" if size % 2 == 0 else "odd"
    k = (size + 1) // 2
    binoms = ser.layer_binomials(size)
    predicted = [Fraction(0)] * order
    for j in range(1, order):
        branches = cluster_sum(j, parity).branches
        for b in (1, 2):
            term = ser.mul(ser.lam_poly(branches[b], size, order),
                           ser.inv_power(j * (k + 1), order), order)
            for i in range(order):
                predicted[i] += binoms[b] * term[i]
    assert predicted == exact


def test_cumulant_sums():
    for parity in ("even", "odd"):
        for j in (1, 2):
            base = cluster_sum(j, parity).branches
            zero = truncated_cumulant_sum(0, j, parity).branches
            size = truncated_cumulant_sum(1, j, parity, "SIZE").branches
            assert zero == base
            assert all(size[b] == base[b] * j for b in (1, 2))
    k = n / 2
    shadow = truncated_cumulant_sum(1, 1, "even", "SHADOW").values()[0]
    assert shadow == (k + 1) * 2 * lam
    with pytest.raises(ValueError):
        truncated_cumulant_sum(1, 1, "even", "OTHER")


def test_shadow_cumulant_matches_cluster_shadow_totals():
    j, parity = 2, "odd"
    direct = {1: ExactPoly.const(0), 2: ExactPoly.const(0)}
    for ell, a1, a2 in class_indices(j):
        for root in (1, 2):
            inner = ExactPoly.const(0)
            for c in enumerate_cluster_class(j, ell, a1, a2, root):
                inner = inner + c.shadow_total(parity) * (1 + lam) ** c.alpha(parity) * (c.orderings * c.ursell)
            direct[root] = direct[root] + Window(root, a1, a2).placements(parity) * inner / ell
    got = truncated_cumulant_sum(1, j, parity, "SHADOW").branches
    assert all(got[b] == direct[b] * lam ** j for b in (1, 2))


def test_dump_is_deterministic_json():
    text = dump_cluster_class(3, 2, 1, 1, 1)
    assert text == dump_cluster_class(3, 2, 1, 1, 1)
    data = json.loads(text)
    assert data["j"] == 3 and data["clusters"]
