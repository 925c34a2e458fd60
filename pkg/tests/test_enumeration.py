import random
from fractions import Fraction as F
from math import comb

import pytest

from oracles import blocking_sets, dim, subspaces, to_set
from relblock.antichains import Antichain, enumerate_antichains
from relblock.blockers import MAX_RANK, blocking_subposet
from relblock.errors import DomainError, ResourceGuardError
from relblock.enumeration import (
    BINOMIAL,
    BinomialBracket,
    build_C,
    build_E,
    count_all,
    count_brute,
    count_inclusion_exclusion,
    count_mobius,
    decompose_layers,
    gaussian_binomial,
    nu,
    q_count_eq,
    q_count_geq,
    union_sum,
)
from relblock.poset import boolean_lattice, maximals

B3 = boolean_lattice(3)
B4 = boolean_lattice(4)
A52 = [0b1110, 0b0011]


def names(P, xs):
    return {P.name(x) for x in xs}


def test_nu():
    assert nu(F(1, 2), 3) == 2
    assert nu(F(1, 2), 2) == 2
    assert all(nu(0, k) == 1 for k in range(1, 8))
    assert nu(F(2, 3), 3) == 3
    with pytest.raises(DomainError):
        nu(F(1, 2), 0)


def test_brackets():
    assert BINOMIAL.mode == "binomial" and BinomialBracket(2).mode == "q-binomial(2)"
    assert [gaussian_binomial(4, i, 2) for i in range(5)] == [1, 15, 35, 15, 1]
    for j in range(7):
        for i in range(-1, j + 2):
            assert gaussian_binomial(j, i, 1) == (comb(j, i) if 0 <= i <= j else 0)
    assert BinomialBracket(3)(0, 0) == 1 and BinomialBracket(3)(1, 1) == 1


class TestDecomposition:
    def test_examples(self):
        got = decompose_layers(B4, A52, F(1, 2))
        assert {k: names(B4, v) for k, v in got.items()} == {
            1: {"0010"}, 2: set(), 3: {"1011", "0111"}, 4: set()}
        got = decompose_layers(B3, [0b110], F(1, 2))
        assert {k: names(B3, v) for k, v in got.items()} == {1: {"100", "010"}, 2: {"110"}, 3: {"111"}}

    def test_union_matches_blocking_b4(self):
        for A in enumerate_antichains(B4):
            if A.is_trivial:
                continue
            for r in (F(0), F(1, 3), F(1, 2), F(2, 3)):
                parts = decompose_layers(B4, A, r)
                assert frozenset().union(*parts.values()) == blocking_subposet(B4, MAX_RANK, r, A)

    def test_union_matches_blocking_sampled(self):
        rng = random.Random(7)
        for n in (6, 7):
            B = boolean_lattice(n)
            for _ in range(25):
                A = maximals(B, rng.sample(range(1, 1 << n), rng.randint(1, 4)))
                r = rng.choice([F(1, 3), F(1, 2), F(2, 3)])
                parts = decompose_layers(B, A, r)
                assert frozenset().union(*parts.values()) == blocking_subposet(B, MAX_RANK, r, A)


class TestCounting:
    def test_example(self):
        assert count_all(4, A52, F(1, 2), 3) == {"brute": 2, "inclexcl": 2, "mobius": 2}
        assert count_inclusion_exclusion(3, [0b110], F(1, 2), 2) == 1
        assert count_mobius(3, [0b110], F(1, 2), 2) == 1
        # nu(1/2 * 4) = 3 exceeds the rank of 0011
        assert count_inclusion_exclusion(4, A52, F(1, 2), 4) == 0
        assert count_brute(4, A52, F(1, 2), 1) == 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_three_way_exhaustive(self, n):
        B = boolean_lattice(n)
        for A in enumerate_antichains(B):
            if A.is_trivial:
                continue
            for r in (F(1, 3), F(1, 2), F(2, 3)):
                fam = [to_set(n, a) for a in A.members]
                oracle = blocking_sets(n, fam, r)
                for k in range(1, n + 1):
                    want = sum(1 for b in oracle if len(b) == k)
                    assert count_all(n, A, r, k) == {"brute": want, "inclexcl": want, "mobius": want}

    def test_three_way_sampled_b5(self):
        B5 = boolean_lattice(5)
        family = [A for A in enumerate_antichains(B5) if not A.is_trivial]
        for A in random.Random(3).sample(family, 150):
            for r in (F(1, 3), F(1, 2), F(2, 3)):
                for k in range(1, 6):
                    count_all(5, A, r, k)

    def test_union_sum_counts_upper_layer(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(2, 6)
            X = rng.sample(range(1, 1 << n), rng.randint(1, min(4, (1 << n) - 1)))
            k = rng.randint(1, n)
            want = sum(1 for b in range(1 << n) if b.bit_count() == k and any(x & ~b == 0 for x in X))
            assert union_sum(n, X, k) == want

    def test_guards(self):
        B6 = boolean_lattice(6)
        A = Antichain(B6, set(B6.layer_masks(2)))
        assert len(A) == 15
        with pytest.raises(ResourceGuardError):
            count_mobius(6, A, F(1, 2), 2)
        wide = [0b1111111100000000, 0b0000000011111111]
        with pytest.raises(ResourceGuardError):
            count_inclusion_exclusion(16, wide, F(1, 2), 8)
        with pytest.raises(DomainError):
            count_mobius(4, A52, F(1, 2), 5)
        with pytest.raises(DomainError):
            count_mobius(4, [0], F(1, 2), 2)


class TestAuxLattices:
    def test_c_lattice_example(self):
        C = build_C(B4, A52, F(1, 2), 3)
        p123 = frozenset({0b1100, 0b1010, 0b0110})
        a2 = frozenset({0b0011})
        assert set(C.sets) == {frozenset(), p123, a2, p123 | a2}
        assert C.top == p123 | a2
        mu = C.mobius()
        assert mu[frozenset()] == 1 and mu[p123] == -1 and mu[a2] == -1 and mu[p123 | a2] == 1

    def test_e_lattice_example(self):
        X = {0b1100, 0b1010, 0b0110, 0b0011}
        E = build_E(B4, X)
        assert len(E.masks) == 9 and E.top == 0b1111
        mu = E.mobius()
        assert mu[None] == 1 and mu[0b1110] == 2 and mu[0b1111] == -1
        assert all(mu[x] == -1 for x in X)

    def test_e_singleton_is_chain(self):
        E = build_E(B4, {0b0101})
        assert E.masks == [None, 0b0101] and E.mobius() == {None: 1, 0b0101: -1}
        with pytest.raises(DomainError):
            build_E(B4, set())


class TestQCounts:
    def test_examples(self):
        assert q_count_eq(2, 1, 1, 1, 2) == 1
        assert q_count_eq(2, 1, 1, 0, 2) == 2
        assert q_count_eq(3, 1, 2, 2, 2) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_against_gf2(self, n):
        spaces = subspaces(n)
        for a in spaces:
            m = dim(a)
            for k in range(n + 1):
                rank_k = [b for b in spaces if dim(b) == k]
                for h in range(k + 1):
                    eq = sum(1 for b in rank_k if dim(a & b) == h)
                    geq = sum(1 for b in rank_k if dim(a & b) >= h)
                    assert q_count_eq(n, m, k, h, 2) == eq
                    assert q_count_geq(n, m, k, h, 2) == geq

    def test_q_one_is_boolean(self):
        for n in range(1, 7):
            for m in range(n + 1):
                a = (1 << m) - 1
                for k in range(n + 1):
                    for h in range(k + 1):
                        want = sum(1 for b in range(1 << n) if b.bit_count() == k and (a & b).bit_count() == h)
                        assert q_count_eq(n, m, k, h, 1) == want
                        assert q_count_geq(n, m, k, h, 1) == sum(q_count_eq(n, m, k, j, 1) for j in range(h, k + 1))
