import random
from math import prod

import pytest

from billiard_monodromy import (
    build_permutations,
    check_structure,
    group_order,
    span_invariants,
    span_vectors,
    validate,
)
from billiard_monodromy import EdgeLabel
from billiard_monodromy.errors import CapExceeded
from billiard_monodromy.monodromy import deltas_of
from billiard_monodromy.oracle import (
    _closure,
    _identity,
    _mul,
    _packed_pair,
    _power,
    edge_index,
    edge_label,
)
from conftest import random_algebraic


def edge(m, i, k):
    return edge_index(EdgeLabel(m, i), k)


def test_edge_labels_biject():
    for k, n in ((3, 4), (5, 7)):
        seen = {edge_index(EdgeLabel(m, i), k) for m in range(n) for i in range(k)}
        assert seen == set(range(n * k))
        assert all(edge_label(x, k) == divmod(x, k) for x in range(n * k))


class TestBuildPermutations:
    def test_white_rotation_equilateral(self):
        pp = build_permutations(validate([1, 1, 1], 3))
        # (0,0) -> (0 - a_2, 2) = (2, 2)
        assert pp.sigma1[edge(0, 0, 3)] == edge(2, 2, 3)

    def test_black_rotation_wraps(self):
        pp = build_permutations(validate([2, 2, 2, 4], 5))
        for m in range(5):
            assert pp.sigma0[edge(m, 3, 4)] == edge(m, 0, 4)

    def test_white_rotation_quadrilateral(self):
        pp = build_permutations(validate([2, 2, 2, 4], 5))
        # (0,0) -> (-a_3, 3) = (1, 3)
        assert pp.sigma1[edge(0, 0, 4)] == edge(1, 3, 4)

    def test_orders_divide_k(self):
        rng = random.Random(61)
        for _ in range(50):
            t = random_algebraic(rng, k_lo=2, k_hi=6, n_lo=2, n_hi=12)
            pp = build_permutations(t)
            size = t.modulus * t.k
            s0, s1, _ = _packed_pair(pp)
            assert _power(s0, t.k) == _identity(size)
            assert _power(s1, t.k) == _identity(size)

    def test_pair_power_closed_form(self):
        # sigma0^x sigma1^x sends (m, i) to (m - sum_{j=i-x}^{i-1} a_j, i)
        rng = random.Random(67)
        for _ in range(30):
            t = random_algebraic(rng, k_lo=2, k_hi=6, n_lo=2, n_hi=10)
            n, k = t.modulus, t.k
            a = t.residues()
            pp = build_permutations(t)
            s0, s1, _ = _packed_pair(pp)
            for x in range(1, k):
                g = _mul(_power(s0, x), _power(s1, x))
                for m in range(n):
                    for i in range(k):
                        drop = sum(a[j % k] for j in range(i - x, i))
                        assert g[edge(m, i, k)] == edge((m - drop) % n, i, k)


class TestGroupOrder:
    @pytest.mark.parametrize("entries,n,expected", [
        ([1, 1, 1], 3, 9),
        ([2, 2, 2, 4], 5, 500),
        ([1, 2, 4], 7, 21),
        ([3, 4, 3, 4], 7, 28),
    ])
    def test_examples(self, entries, n, expected):
        assert group_order(build_permutations(validate(entries, n))) == expected

    def test_cap_carries_partial(self):
        pp = build_permutations(validate([2, 2, 2, 4], 5))
        with pytest.raises(CapExceeded) as exc:
            group_order(pp, cap=10)
        assert exc.value.partial == 10


class TestSpanInvariants:
    def test_worked_example(self):
        inv = span_invariants(validate([2, 2, 2, 4], 5))
        assert inv.order == 125 and inv.factors == (5, 5, 5)

    def test_regular_pentagon(self):
        inv = span_invariants(validate([3] * 5, 5, "geometric"))
        assert inv.factors == (5,)

    def test_single_factor_example(self):
        inv = span_invariants(validate([1, 2, 4, 3], 5))
        assert inv.order == 5 and inv.factors == (5,)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            span_invariants(validate([2, 2, 2, 4], 5), cap=50)

    def test_matches_snf_route(self):
        rng = random.Random(71)
        for _ in range(120):
            t = random_algebraic(rng, k_lo=2, k_hi=5, n_lo=2, n_hi=12)
            if t.modulus ** t.k > 30000:
                continue
            assert span_invariants(t).factors == deltas_of(t)


class TestCheckStructure:
    def test_equilateral(self):
        rep = check_structure(validate([1, 1, 1], 3))
        assert rep.passed and rep.action_trivial
        assert rep.group_order == 9 and rep.translation_order == 3

    def test_worked_quadrilateral(self):
        rep = check_structure(validate([2, 2, 2, 4], 5))
        assert rep.passed and not rep.action_trivial
        assert rep.failures == []

    def test_lifted_two_gon(self):
        rep = check_structure(validate([3, 4, 3, 4], 7))
        assert rep.passed
        assert rep.group_order == 28 and rep.translation_order == 7

    def test_group_factors_through_span(self):
        rng = random.Random(73)
        for _ in range(40):
            t = random_algebraic(rng, k_lo=2, k_hi=5, n_lo=2, n_hi=8)
            rep = check_structure(t)
            assert rep.passed
            assert rep.group_order == t.k * rep.translation_order
            assert rep.translation_order == span_invariants(t).order


def test_stabilizer_count_equals_span_order():
    rng = random.Random(79)
    for _ in range(30):
        t = random_algebraic(rng, k_lo=2, k_hi=4, n_lo=2, n_hi=8)
        pp = build_permutations(t)
        s0, s1, size = _packed_pair(pp)
        G = _closure([s0, s1], size, 10**6)
        k = t.k
        fixing = sum(1 for g in G
                     if all(y % k == x % k for x, y in enumerate(g)))
        assert fixing == len(span_vectors(t))


def test_group_order_is_k_times_span_order():
    rng = random.Random(83)
    for _ in range(60):
        t = random_algebraic(rng, k_lo=2, k_hi=5, n_lo=2, n_hi=10)
        if t.modulus ** t.k > 20000:
            continue
        inv = span_invariants(t)
        assert group_order(build_permutations(t)) == t.k * inv.order
        assert inv.order == prod(inv.factors)
