"""Lower-bound constructions, inverse families, and the structure matcher."""

import random

import pytest

from zerosum import (
    InvalidInputError,
    InvalidParamsError,
    LowerCnrParams,
    LowerGeneralParams,
    Sequence,
    apply_automorphism,
    build_inv2,
    build_lower_general,
    build_lowercnr,
    d_star,
    enumerate_automorphisms,
    inverse_family_members,
    make_group,
    match_inverse_structure,
    min_zero_sum_length,
    s_leq,
    sigma,
    verify_construction,
)

from conftest import brute_min_zero_sum

C32 = make_group([3, 3])


class TestParams:
    @pytest.mark.parametrize("n,r,k", [(1, 2, 0), (3, 1, 0), (3, 2, -1), (3, 2, 3)])
    def test_lowercnr_rejects(self, n, r, k):
        with pytest.raises(InvalidParamsError):
            LowerCnrParams(n, r, k)

    def test_lower_general_range(self):
        G = make_group([3, 3, 3])  # D* = 7, exp = 3: D*-k in [3, 5] -> k in [2, 4]
        for k in (2, 3, 4):
            LowerGeneralParams(G, k)
        for k in (0, 1, 5):
            with pytest.raises(InvalidParamsError):
                LowerGeneralParams(G, k)


class TestLowerCnr:
    @pytest.mark.parametrize(
        "n,r,k",
        [(n, r, k) for n in (2, 3, 4) for r in (2, 3) for k in range(n)],
    )
    def test_length_and_min_zero_sum(self, n, r, k):
        S = build_lowercnr(LowerCnrParams(n, r, k))
        report = verify_construction(S, 2 ** (r - 1) * (n - 1) + k, 2 * n - k)
        assert report.passed
        # brute confirmation of the shortest zero-sum claim
        coords = [g.coords for g in S.expand()]
        brute = brute_min_zero_sum(coords, S.group.factors)
        assert brute is None or brute >= 2 * n - k

    def test_base_case_shape(self):
        S = build_lowercnr(LowerCnrParams(3, 2, 2))
        assert S == Sequence.parse(C32, "1,0^2; 0,1^2; 1,1^2")

    def test_doubling_shape(self):
        S = build_lowercnr(LowerCnrParams(3, 3, 1))
        G = S.group
        assert len(S) == 2 ** 2 * 2 + 1
        assert S.multiplicity(G.element((1, 1, 0))) == 1
        for coords in [(1, 0, 0), (1, 0, 1), (0, 1, 0), (0, 1, 1)]:
            assert S.multiplicity(G.element(coords)) == 2

    def test_sharpness_against_search(self):
        # the construction meets the exact value of the invariant here ...
        for r, k in [(2, 0), (2, 1), (3, 0), (4, 0)]:
            S = build_lowercnr(LowerCnrParams(2, r, k))
            value = s_leq(S.group, 2 * 2 - k - 1).value
            assert value == len(S) + 1
        # ... and is a strict lower bound (not sharp) at (n, r, k) = (2, 3, 1)
        S = build_lowercnr(LowerCnrParams(2, 3, 1))
        assert s_leq(S.group, 2).value == 8 > len(S) + 1


class TestLowerGeneral:
    @pytest.mark.parametrize(
        "factors,k",
        [([3, 3], 1), ([3, 3], 2), ([2, 4], 1), ([2, 2, 2], 1), ([3, 3, 3], 3)],
    )
    def test_verifies(self, factors, k):
        G = make_group(factors)
        S = build_lower_general(LowerGeneralParams(G, k))
        report = verify_construction(S, d_star(G) + k - 1, d_star(G) - k + 1)
        assert report.passed

    def test_exact_shape_rank_two(self):
        G = make_group([3, 3])
        S = build_lower_general(LowerGeneralParams(G, 2))
        # D* = 5, x = 3 + 2 - 3 = 2: e_2^2 e_1^2 (e_2 - e_1)^2
        assert S == Sequence.parse(G, "0,1^2; 1,0^2; 2,1^2")


class TestInverseFamilies:
    def test_build_shapes(self):
        assert build_inv2(3, 2) == Sequence.parse(C32, "1,0^2; 0,1^2; 1,1^2")
        assert build_inv2(4, 3, x=3) == Sequence.parse(
            make_group([4, 4]), "1,0^3; 0,1^3; 3,1^3"
        )
        S = build_inv2(3, 1)
        assert S == Sequence.parse(C32, "1,0^2; 0,1^2; 1,1")
        assert build_inv2(3, 0) == Sequence.parse(C32, "1,0^2; 0,1^2")

    def test_build_validation(self):
        with pytest.raises(InvalidParamsError):
            build_inv2(4, 3, x=2)  # gcd(2, 4) != 1
        with pytest.raises(InvalidParamsError):
            build_inv2(4, 2, x=1)  # middle k takes no parameters
        with pytest.raises(InvalidParamsError):
            build_inv2(3, 1, xs=(1, 1, 1))  # sum = 3 = 0 mod 3, not 1
        with pytest.raises(InvalidParamsError):
            build_inv2(3, 3)  # k out of range

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_members_avoid_short_zero_sums(self, n):
        for k in range(n):
            for S in inverse_family_members(n, k):
                assert len(S) == 2 * n - 2 + k
                m = min_zero_sum_length(S)
                assert m is None or m >= 2 * n - k

    def test_member_counts_small(self):
        # k = n-1 members are one per unit x
        assert len(inverse_family_members(4, 3)) == 2
        assert len(inverse_family_members(3, 2)) == 2
        # middle k is a single sequence
        assert len(inverse_family_members(5, 2)) == 1

    def test_k0_members_are_truncations(self):
        ones = {m.terms for m in inverse_family_members(3, 1)}
        for W in inverse_family_members(3, 0):
            assert W.with_term(-sigma(W)).terms in ones


class TestMatcher:
    @pytest.mark.parametrize("n,k", [(3, 0), (3, 1), (3, 2), (4, 1), (4, 3)])
    def test_members_match(self, n, k):
        for S in inverse_family_members(n, k):
            assert match_inverse_structure(S, n, k)

    def test_automorphism_images_match(self):
        rng = random.Random(7)
        autos = list(enumerate_automorphisms(C32))
        for k in (0, 1, 2):
            for S in inverse_family_members(3, k):
                phi = rng.choice(autos)
                assert match_inverse_structure(apply_automorphism(phi, S), 3, k)

    def test_non_members_rejected(self):
        # contains zero, correct length 6 for (n, k) = (3, 2)
        S = Sequence.parse(C32, "0,0^2; 1,0^2; 0,1^2")
        assert not match_inverse_structure(S, 3, 2)
        # one element repeated: has a length-3 zero-sum, cannot be extremal
        T = Sequence.parse(C32, "1,0^6")
        assert not match_inverse_structure(T, 3, 2)

    def test_wrong_length_raises(self):
        with pytest.raises(InvalidInputError):
            match_inverse_structure(Sequence.parse(C32, "1,0^2"), 3, 2)

    def test_wrong_group_raises(self):
        S = Sequence.parse(make_group([4, 4]), "1,0^3; 0,1^3; 1,1^2")
        with pytest.raises(InvalidInputError):
            match_inverse_structure(S, 3, 2)


class TestVerificationReport:
    def test_failure_paths(self):
        S = Sequence.parse(C32, "1,0; 2,0")  # zero-sum of length 2
        report = verify_construction(S, 3, 3)
        assert not report.length_ok
        assert not report.min_ok
        assert not report.passed
        assert report.actual_min == 2

    def test_no_zero_sum_passes_min(self):
        S = Sequence.parse(C32, "1,0")
        report = verify_construction(S, 1, 5)
        assert report.passed and report.actual_min is None
