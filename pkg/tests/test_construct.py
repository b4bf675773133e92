import random
from math import gcd

import pytest

from billiard_monodromy import (
    achievable_d_set,
    classify_prime,
    classify_triangles,
    combine_coprime_k,
    combine_crt,
    composite_feasible,
    construct_prime_case,
    enumerate_geometric,
    group_of,
    lift,
    merge_invariant_factors,
    project,
    validate,
)
from billiard_monodromy.errors import (
    BadFactorization,
    CapExceeded,
    DNotAchievable,
    LengthMismatch,
    ModuliNotCoprime,
    NotMultiple,
    NTooSmall,
    PDividesK,
    PreconditionFailed,
)
from billiard_monodromy.monodromy import deltas_of
from conftest import random_algebraic

TWELVE_GON_MOD_35 = (22, 23, 18, 22, 2, 18, 8, 2, 32, 8, 23, 32)


class TestCombineCrt:
    def test_quadrilateral_example(self):
        out = combine_crt(validate([1, 4, 4, 1], 5), validate([2, 3, 4, 3], 6))
        assert out.entries == (26, 9, 4, 21) and out.modulus == 30

    def test_triangle_example(self):
        out = combine_crt(validate([0, 1, 1], 2), validate([1, 0, 4], 5))
        assert out.entries == (6, 5, 9)

    def test_moduli_must_be_coprime(self):
        with pytest.raises(ModuliNotCoprime):
            combine_crt(validate([1, 1, 4], 6), validate([1, 2, 6], 9))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            combine_crt(validate([1, 1, 1], 3), validate([1, 4, 4, 1], 5))

    def test_modulus_one_rejected(self):
        from billiard_monodromy import PolygonTuple
        degenerate = PolygonTuple((0, 0, 0), 1)
        with pytest.raises(PreconditionFailed):
            combine_crt(validate([0, 1, 1], 2), degenerate)

    def test_deltas_merge(self):
        rng = random.Random(107)
        done = 0
        while done < 200:
            t1 = random_algebraic(rng, k_lo=2, k_hi=5, n_lo=2, n_hi=12)
            t2 = random_algebraic(rng, k_lo=t1.k, k_hi=t1.k, n_lo=2, n_hi=12)
            if gcd(t1.modulus, t2.modulus) != 1:
                continue
            out = combine_crt(t1, t2)
            assert deltas_of(out) == merge_invariant_factors(
                deltas_of(t1), deltas_of(t2))
            done += 1


class TestProject:
    def test_mod25_example(self):
        out = project(validate([1, 2, 24, 23], 25), 5)
        assert out.entries == (1, 2, 4, 3) and out.modulus == 5

    def test_mod30_recovers_ingredient(self):
        assert project(validate([26, 9, 4, 21], 30), 5).entries == (1, 4, 4, 1)

    def test_mod6_example(self):
        assert project(validate([1, 1, 4], 6), 2).entries == (1, 1, 0)

    def test_bad_factorization(self):
        t = validate([1, 1, 4], 6)
        for n1 in (1, 4, 6):
            with pytest.raises(BadFactorization):
                project(t, n1)

    def test_non_coprime_caveat(self):
        # reducing mod 5 from modulus 25 lands on 5N, not N/5N: the deltas
        # drop from (25, 5) to (5,)
        t = validate([1, 2, 24, 23], 25)
        assert deltas_of(t) == (25, 5)
        assert deltas_of(project(t, 5)) == (5,)

    def test_coprime_projections_merge_back(self):
        rng = random.Random(109)
        done = 0
        while done < 100:
            t = random_algebraic(rng, k_lo=2, k_hi=5, n_lo=6, n_hi=40)
            n = t.modulus
            splits = [(a, n // a) for a in range(2, n)
                      if n % a == 0 and gcd(a, n // a) == 1 and n // a > 1]
            if not splits:
                continue
            n1, n2 = splits[0]
            merged = merge_invariant_factors(
                deltas_of(project(t, n1)), deltas_of(project(t, n2)))
            assert merged == deltas_of(t)
            done += 1


class TestLift:
    def test_two_gon_example(self):
        assert lift(validate([3, 4], 7), 4).entries == (3, 4, 3, 4)

    def test_identity(self):
        t = validate([1, 2, 4], 7)
        assert lift(t, 3).entries == t.entries

    def test_twelve_fold(self):
        assert lift(validate([1, 2, 4], 7), 12).entries == (1, 2, 4) * 4

    def test_not_multiple(self):
        with pytest.raises(NotMultiple):
            lift(validate([1, 2, 4], 7), 7)

    def test_preserves_deltas_scales_order(self):
        rng = random.Random(113)
        for _ in range(60):
            t = random_algebraic(rng, k_lo=2, k_hi=4, n_lo=2, n_hi=15)
            ell = t.k * rng.randint(2, 3)
            lifted = lift(t, ell)
            assert deltas_of(lifted) == deltas_of(t)
            assert group_of(lifted, action_cap=0).order \
                == group_of(t, action_cap=0).order * ell // t.k


class TestCombineCoprimeK:
    def test_twelve_gon_example(self):
        out = combine_coprime_k(validate([1, 2, 4], 7), validate([2, 3, 3, 2], 5))
        assert out.entries == TWELVE_GON_MOD_35 and out.modulus == 35
        assert deltas_of(out) == (35, 5)

    def test_k_not_coprime(self):
        with pytest.raises(PreconditionFailed):
            combine_coprime_k(validate([1, 4, 4, 1], 5),
                              validate([1, 1, 1, 1, 1, 2], 7))


class TestAchievableDSet:
    def test_examples(self):
        assert achievable_d_set(3, 5) == {1}
        assert achievable_d_set(4, 5) == {1, 2, 3}
        assert achievable_d_set(17, 41) == {1}

    def test_p_divides_k(self):
        with pytest.raises(PDividesK):
            achievable_d_set(6, 3)


class TestConstructPrimeCase:
    def test_divisor_route(self):
        assert construct_prime_case(4, 5, 2).entries == (4, 4, 1, 1)

    def test_triangle_full_rank(self):
        w = construct_prime_case(3, 7, 1)
        assert group_of(w).deltas == (7, 7)

    def test_not_achievable(self):
        with pytest.raises(DNotAchievable):
            construct_prime_case(3, 5, 2)

    def test_all_routes_verify(self):
        # (10, 11) and (12, 13) hit the small-d and large-d constructions
        for k, p in ((5, 11), (6, 7), (10, 11), (12, 13)):
            for d in sorted(achievable_d_set(k, p)):
                w = construct_prime_case(k, p, d)
                assert w.geometric
                assert deltas_of(w) == (p,) * (k - d)

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            construct_prime_case(3, 3, 1)
        with pytest.raises(PreconditionFailed):
            construct_prime_case(4, 9, 1)


class TestClassifyPrime:
    def test_k3_p5_single_group(self):
        rep = classify_prime(3, 5)
        assert [d.deltas for d in rep.achievable] == [(5, 5)]
        assert [(d.deltas, rule) for d, rule in rep.excluded] \
            == [((5,), "factor-degree-subset-sum")]

    def test_k4_p5_three_groups(self):
        rep = classify_prime(4, 5)
        assert [d.deltas for d in rep.achievable] == [(5, 5, 5), (5, 5), (5,)]
        for desc in rep.achievable:
            assert group_of(rep.witnesses[desc]) == desc

    def test_k17_p41(self):
        rep = classify_prime(17, 41)
        assert len(rep.achievable) == 1
        desc = rep.achievable[0]
        assert desc.deltas == (41,) * 16
        assert deltas_of(rep.witnesses[desc]) == (41,) * 16

    def test_rejects_small_p(self):
        with pytest.raises(PreconditionFailed):
            classify_prime(3, 3)


class TestClassifyTriangles:
    def test_n81_exactly_two_groups(self):
        rep = classify_triangles(81)
        assert [d.deltas for d in rep.achievable] == [(81, 81), (81, 27)]
        assert rep.witnesses[rep.achievable[0]].entries == (1, 2, 78)
        assert rep.witnesses[rep.achievable[1]].entries == (1, 1, 79)

    def test_n3(self):
        rep = classify_triangles(3)
        assert [d.deltas for d in rep.achievable] == [(3,)]
        assert rep.witnesses[rep.achievable[0]].entries == (1, 1, 1)

    def test_n35_alpha_sets(self):
        rep = classify_triangles(35)
        achieved = {35 // (d.deltas + (1,))[1] for d in rep.achievable}
        assert achieved == {1, 7}
        excluded = {35 // (d.deltas + (1,))[1] for d, _ in rep.excluded}
        assert excluded == {5, 35}

    def test_explicit_alpha_one_candidates(self):
        # the two closed-form witnesses for the full group
        for n in (5, 7, 8, 10, 20):
            a0, a1, a2 = 1, 1, n - 2
            assert gcd(n, a0 * a2 - a1 * a1) == 1
        for n in (9, 12, 27, 81):
            a0, a1, a2 = n // 3 - 1, n // 3, n // 3 + 1
            assert sum((a0, a1, a2)) == n
            assert gcd(n, a0 * a2 - a1 * a1) == 1

    def test_n_too_small(self):
        with pytest.raises(NTooSmall):
            classify_triangles(2)

    def test_matches_enumeration_sample(self):
        for n in (4, 6, 9, 10, 12, 15, 21):
            rep = classify_triangles(n)
            achieved = {deltas_of(t) for t in enumerate_geometric(3, n)}
            assert {d.deltas for d in rep.achievable} == achieved


class TestCompositeFeasible:
    def test_mod10_squares(self):
        res = composite_feasible(3, 10, (10, 10))
        assert res.feasible
        assert res.witness.geometric
        assert deltas_of(res.witness) == (10, 10)

    def test_mod35_infeasible(self):
        res = composite_feasible(3, 35, (35,))
        assert not res.feasible and res.failing_modulus == 5
        res = composite_feasible(3, 35, (35, 7))
        assert not res.feasible and res.failing_modulus == 5

    def test_mod6_feasible(self):
        res = composite_feasible(3, 6, (6, 2))
        assert res.feasible
        assert group_of(res.witness).deltas == (6, 2)

    def test_covering_failure(self):
        # every algebraic 3-tuple mod 2 with group C2^2 : C3 has a zero
        # entry, so no geometric triangle mod 2 exists even though the
        # algebraic target is achievable
        res = composite_feasible(3, 2, (2, 2))
        assert not res.feasible
        assert res.failing_modulus is None
        assert "coordinate" in res.detail

    def test_agrees_with_triangle_classification(self):
        rep = classify_triangles(12)
        assert {d.deltas for d in rep.achievable} == {(12, 12), (12, 4)}
        assert composite_feasible(3, 12, (12, 4)).feasible
        for target in ((12, 6), (12, 2), (12,)):
            assert not composite_feasible(3, 12, target).feasible

    def test_cap(self):
        with pytest.raises(CapExceeded):
            composite_feasible(3, 10, (10, 10), per_prime_cap=10)

    def test_bad_targets(self):
        with pytest.raises(PreconditionFailed):
            composite_feasible(3, 10, (3,))
        with pytest.raises(PreconditionFailed):
            composite_feasible(3, 10, (2, 10))
