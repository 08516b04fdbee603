"""Sequences, length sets, and the subsequence-sum tables, cross-checked
against position-subset brute force."""

import math
import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zerosum import (
    InvalidInputError,
    LengthSet,
    Sequence,
    apply_automorphism,
    count_subseq,
    enumerate_automorphisms,
    feasibility,
    has_zero_sum_in,
    make_group,
    min_zero_sum_length,
    n_plus_minus,
    orbit_canonical,
    sigma,
    subsequence_count_table,
)

from conftest import brute_has_zero_sum, brute_min_zero_sum, tuple_sum

C32 = make_group([3, 3])
C23 = make_group([2, 2, 2])
C24 = make_group([2, 4])


def random_sequence(G, length, rng):
    elems = [G.element(c) for c in _coords(G)]
    return Sequence.from_elements(G, [rng.choice(elems) for _ in range(length)])


def _coords(G):
    from conftest import all_elements

    return all_elements(G.factors)


class TestSequenceBasics:
    def test_terms_canonical_and_merged(self):
        S = Sequence.from_pairs(C32, [(C32.element((1, 0)), 2), (C32.element((0, 1)), 1),
                                      (C32.element((1, 0)), 1)])
        assert [(g.coords, m) for g, m in S.terms] == [((0, 1), 1), ((1, 0), 3)]
        assert S.length == 4
        assert len(S) == 4
        assert S.max_multiplicity() == 3
        assert S.multiplicity(C32.element((1, 0))) == 3
        assert S.multiplicity(C32.element((2, 2))) == 0

    def test_equality_is_multiset_equality(self):
        a = Sequence.from_elements(C32, [C32.element((1, 0)), C32.element((0, 1))])
        b = Sequence.from_elements(C32, [C32.element((0, 1)), C32.element((1, 0))])
        assert a == b

    def test_parse_format_round_trip(self):
        S = Sequence.parse(C32, "1,0^2; 0,1; 2,2^3")
        assert S.length == 6
        assert Sequence.parse(C32, S.format()) == S

    def test_parse_errors(self):
        with pytest.raises(InvalidInputError):
            Sequence.parse(C32, "1,0^x")
        with pytest.raises(InvalidInputError):
            Sequence.parse(C32, "1,spam")
        with pytest.raises(InvalidInputError):
            Sequence.parse(C32, "1^2")  # wrong coordinate count

    def test_parse_empty(self):
        assert Sequence.parse(C32, "").length == 0

    def test_with_without_term(self):
        g = C32.element((1, 1))
        S = Sequence.empty(C32).with_term(g, 2)
        assert S.multiplicity(g) == 2
        assert S.without_term(g).multiplicity(g) == 1
        assert S.without_term(g, 2).length == 0
        with pytest.raises(InvalidInputError):
            S.without_term(g, 3)
        with pytest.raises(InvalidInputError):
            S.without_term(C32.element((2, 0)))

    def test_expand_order_matches_terms(self):
        S = Sequence.parse(C32, "0,1^2; 1,0")
        assert [g.coords for g in S.expand()] == [(0, 1), (0, 1), (1, 0)]

    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), max_size=8))
    def test_from_elements_round_trip_multiset(self, coords):
        S = Sequence.from_elements(C32, [C32.element(c) for c in coords])
        assert S.length == len(coords)
        assert sorted(g.coords for g in S.expand()) == sorted(coords)
        assert Sequence.parse(C32, S.format()) == S


class TestLengthSet:
    def test_interval(self):
        L = LengthSet.up_to(3)
        assert 1 in L and 3 in L and 4 not in L and 0 not in L
        assert L.mask(10) == 0b1110
        assert L.label() == "[1,3]"

    def test_singleton(self):
        L = LengthSet.exactly(4)
        assert 4 in L and 3 not in L
        assert L.mask(10) == 1 << 4
        assert L.mask(3) == 0
        assert L.label() == "{4}"

    def test_explicit(self):
        L = LengthSet.of([2, 5])
        assert 2 in L and 5 in L and 3 not in L
        assert L.mask(4) == 1 << 2
        assert L.label() == "{2,5}"

    def test_all(self):
        L = LengthSet.all_positive()
        assert 1 in L and 99 in L and 0 not in L
        assert L.mask(3) == 0b1110
        assert L.label() == "N"

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            LengthSet.up_to(0)
        with pytest.raises(InvalidInputError):
            LengthSet.of([])
        with pytest.raises(InvalidInputError):
            LengthSet.of([0, 2])
        with pytest.raises(InvalidInputError):
            LengthSet("weird")


class TestSigma:
    def test_sigma_known(self):
        S = Sequence.parse(C32, "1,0^2; 0,1^2; 1,1")
        assert sigma(S).coords == (0, 0)
        assert sigma(Sequence.empty(C32)).is_zero()

    def test_sigma_brute(self):
        rng = random.Random(5)
        for _ in range(30):
            S = random_sequence(C24, rng.randrange(0, 7), rng)
            expected = tuple_sum([g.coords for g in S.expand()], C24.factors)
            assert sigma(S).coords == expected


class TestFeasibility:
    @pytest.mark.parametrize("G,length", [(C32, 6), (C23, 6), (C24, 5)])
    def test_possible_matches_brute(self, G, length):
        rng = random.Random(11)
        for _ in range(20):
            S = random_sequence(G, length, rng)
            coords = [g.coords for g in S.expand()]
            tab = feasibility(S)
            for target in _coords(G):
                for l in range(0, length + 1):
                    brute = any(
                        tuple_sum([coords[i] for i in pos], G.factors) == target
                        for pos in combinations(range(length), l)
                    )
                    assert tab.possible(G.element(target), l) == brute

    def test_min_zero_sum_matches_brute(self):
        rng = random.Random(12)
        for G in (C32, C23, C24):
            for _ in range(40):
                S = random_sequence(G, rng.randrange(1, 7), rng)
                assert min_zero_sum_length(S) == brute_min_zero_sum(
                    [g.coords for g in S.expand()], G.factors
                )

    def test_has_zero_sum_in_matches_brute(self):
        rng = random.Random(13)
        for _ in range(40):
            S = random_sequence(C32, rng.randrange(1, 7), rng)
            coords = [g.coords for g in S.expand()]
            for L, lengths in [
                (LengthSet.up_to(2), [1, 2]),
                (LengthSet.exactly(3), [3]),
                (LengthSet.of([1, 4]), [1, 4]),
                (LengthSet.all_positive(), range(1, len(coords) + 1)),
            ]:
                assert has_zero_sum_in(S, L) == brute_has_zero_sum(
                    coords, lengths, C32.factors
                )

    def test_zero_sum_lengths_empty_sequence(self):
        assert feasibility(Sequence.empty(C32)).zero_sum_lengths() == ()


class TestCountTable:
    def brute_counts(self, S):
        G = S.group
        coords = [g.coords for g in S.expand()]
        out = {c: [0] * (len(coords) + 1) for c in _coords(G)}
        for l in range(0, len(coords) + 1):
            for pos in combinations(range(len(coords)), l):
                out[tuple_sum([coords[i] for i in pos], G.factors)][l] += 1
        return out

    def test_exact_counts_match_brute(self):
        rng = random.Random(21)
        from zerosum.groups import group_table

        for G in (C32, C24):
            tab = group_table(G)
            for _ in range(10):
                S = random_sequence(G, rng.randrange(0, 7), rng)
                counts = subsequence_count_table(S)
                brute = self.brute_counts(S)
                for idx, c in enumerate(tab.elements):
                    assert counts[idx] == brute[c]

    def test_mod_reduction(self):
        rng = random.Random(22)
        S = random_sequence(C32, 6, rng)
        exact = subsequence_count_table(S)
        mod = subsequence_count_table(S, mod=3)
        assert all(
            m == e % 3 for row_m, row_e in zip(mod, exact) for m, e in zip(row_m, row_e)
        )

    def test_max_len_truncation(self):
        rng = random.Random(23)
        S = random_sequence(C32, 6, rng)
        full = subsequence_count_table(S)
        short = subsequence_count_table(S, max_len=2)
        assert all(row[:3] == frow[:3] for row, frow in zip(short, full))
        assert len(short[0]) == 3

    def test_count_subseq(self):
        S = Sequence.parse(C32, "1,0^3; 0,1^3")
        # choosing all six terms is the only length-6 subsequence; sum is 0.
        assert count_subseq(S, C32.zero(), 6) == 1
        assert count_subseq(S, C32.zero(), 7) == 0
        assert count_subseq(S, C32.zero(), -1) == 0
        # three of one kind: C(3,3) * C(3,0) choices for sum (0,0)? both
        # triples sum to zero, and mixing does not reach length 3 sums of 0.
        assert count_subseq(S, C32.zero(), 3) == 2

    def test_n_plus_minus_matches_brute_parity(self):
        rng = random.Random(24)
        for G, p in ((C23, 2), (C32, 3)):
            for _ in range(8):
                S = random_sequence(G, 5, rng)
                brute = self.brute_counts(S)
                for c in _coords(G):
                    even = sum(brute[c][l] for l in range(0, 6, 2)) % p
                    odd = sum(brute[c][l] for l in range(1, 6, 2)) % p
                    assert n_plus_minus(S, G.element(c), p) == (even, odd)


class TestAutomorphismAction:
    def test_preserves_zero_sum_lengths(self):
        rng = random.Random(31)
        autos = list(enumerate_automorphisms(C32))
        for _ in range(10):
            S = random_sequence(C32, 5, rng)
            base = feasibility(S).zero_sum_lengths()
            phi = rng.choice(autos)
            assert feasibility(apply_automorphism(phi, S)).zero_sum_lengths() == base

    def test_orbit_canonical_is_least_and_invariant(self):
        rng = random.Random(32)
        for _ in range(5):
            S = random_sequence(C32, 4, rng)
            canon = orbit_canonical(S)
            images = [apply_automorphism(phi, S) for phi in enumerate_automorphisms(C32)]
            assert canon in images
            for phi in enumerate_automorphisms(C32):
                assert orbit_canonical(apply_automorphism(phi, S)) == canon
