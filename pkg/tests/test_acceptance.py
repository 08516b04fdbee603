"""Acceptance checklist.

Each test here covers one numbered item of the package's acceptance
criteria and reports a single pass/fail line through the terminal summary
(see ``pytest_terminal_summary`` in conftest).  Everything is computed or
re-verified in-process; published table rows are used only where the
computation is explicitly out of desk reach, and that use is itself what
criterion 14 documents.
"""

import os
from contextlib import contextmanager

import pytest

from zerosum import (
    LengthSet,
    LowerCnrParams,
    LowerGeneralParams,
    SearchConfig,
    build_lower_general,
    build_lowercnr,
    check_thm_1_8,
    check_thm_1_9,
    check_thm_1_10,
    conjecture_harness,
    d_star,
    davenport,
    enumerate_extremal,
    known_s_leq,
    make_group,
    match_inverse_structure,
    s_leq,
    sweep_congruence,
    sweep_i0,
    sweep_row_transform,
    sweep_zerosub_soundness,
    verify_construction,
)

from conftest import ACCEPTANCE_RESULTS, brute_min_zero_sum, invariant_factor_chains

C32 = make_group([3, 3])
C33 = make_group([3, 3, 3])
C53 = make_group([5, 5, 5])


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS.append((number, False, description))
        raise
    else:
        ACCEPTANCE_RESULTS.append((number, True, description))


def test_criterion_01_c33_interval_values(c33_computed_values):
    with criterion(1, "s_leq(C_3^3, k) for k = 3..7 computed: 17, 10, 9, 8, 7"):
        expected = {3: 17, 4: 10, 5: 9, 6: 8, 7: 7}
        for k, want in expected.items():
            result = c33_computed_values[k]
            assert result.complete, f"k={k} search incomplete"
            assert result.value == want, f"k={k}: {result.value} != {want}"
            assert result.witness.length == want - 1


@pytest.mark.skipif(
    not os.environ.get("ZEROSUM_RUN_SLOW"),
    reason="set ZEROSUM_RUN_SLOW=1 to re-run the k=3 search without symmetry reduction",
)
def test_criterion_01_slow_cross_check_no_symmetry():
    result = s_leq(C33, 3)
    assert result.complete and result.value == 17


def test_criterion_02_exponent_two_groups():
    with criterion(2, "C_2^r landmarks: s_leq(.,2) = 2^r, s_leq(.,3), plateau r+2"):
        for r in (2, 3, 4):
            assert s_leq(make_group([2] * r), 2).value == 2**r
        assert s_leq(make_group([2] * 3), 3).value == 5
        assert s_leq(make_group([2] * 4), 3).value == 9
        # plateau rows r+2 at k = r - j inside the admissible window
        assert s_leq(make_group([2] * 3), 3).value == 3 + 2
        assert s_leq(make_group([2] * 4), 4).value == 4 + 2


def test_criterion_03_rank_two_formula():
    with criterion(3, "rank-2 groups C_n^2 (n = 3, 4) match 2D-k on every valid k"):
        for n in (3, 4):
            G = make_group([n, n])
            D = 2 * n - 1
            for k in range(n, D + 1):
                computed = s_leq(G, k).value
                assert computed == 2 * D - k, (n, k, computed)
                known = known_s_leq(G, k)
                assert known is not None and known.value == computed


def test_criterion_04_davenport_by_search():
    with criterion(4, "zero-sum constants by search: C_2^3 -> 4, C_3^3 -> 7, C_2+C_4 -> 5"):
        for factors, want in ([2, 2, 2], 4), ([3, 3, 3], 7), ([2, 4], 5):
            result = davenport(make_group(factors), SearchConfig(symmetry_reduction=True))
            assert result.complete and result.value == want
            W = result.witness
            assert W.length == want - 1
            assert brute_min_zero_sum([g.coords for g in W.expand()], tuple(make_group(factors).factors)) is None


def test_criterion_05_constructions_verify():
    with criterion(5, "both lower-bound constructions verify across their whole grids"):
        checked = 0
        for n in (2, 3, 4):
            for r in (2, 3, 4):
                for k in range(n):
                    length = 2 ** (r - 1) * (n - 1) + k
                    if length > 20:
                        continue
                    S = build_lowercnr(LowerCnrParams(n, r, k))
                    assert verify_construction(S, length, 2 * n - k).passed, (n, r, k)
                    checked += 1
        assert checked >= 20

        general = 0
        for factors in invariant_factor_chains(64, min_rank=2):
            G = make_group(list(factors))
            if G.factors != tuple(factors) or G.rank < 2:
                continue  # normalization merged factors; skip duplicates
            for k in range(0, d_star(G)):
                try:
                    params = LowerGeneralParams(G, k)
                except Exception:
                    continue
                S = build_lower_general(params)
                report = verify_construction(S, d_star(G) + k - 1, d_star(G) - k + 1)
                assert report.passed, (factors, k)
                general += 1
        assert general >= 40


def test_criterion_06_extremal_enumeration_matches_families():
    with criterion(6, "every maximal short-zero-sum-free sequence over C_3^2 matches its family"):
        for k in (0, 1, 2):
            ex = enumerate_extremal(C32, LengthSet.up_to(5 - k), 4 + k)
            assert ex.complete
            assert len(ex.sequences) > 0
            for S in ex.sequences:
                assert match_inverse_structure(S, 3, k), (k, S.format())


def test_criterion_07_congruence_sweep():
    with criterion(7, "even/odd subsequence-count congruence: 500 samples per group, 0 violations"):
        outcome = sweep_congruence(samples=500, seed=0)
        assert outcome.cases == 1500
        assert outcome.passed, outcome.violations[:3]


def test_criterion_08_row_transform_sweep():
    with criterion(8, "matrix row-transform identity: 200 random tuples, 0 mismatches"):
        outcome = sweep_row_transform(count=200, seed=0)
        assert outcome.cases == 200
        assert outcome.passed, outcome.violations[:3]


def test_criterion_09_guarantee_soundness_sweep():
    with criterion(9, "short-zero-sum guarantee soundness: 500 random certificates, 0 violations"):
        outcome = sweep_zerosub_soundness(samples=500, seed=0)
        assert outcome.cases == 500
        assert outcome.passed, outcome.violations[:3]


def test_criterion_10_i0_prediction_sweep():
    with criterion(10, "first-nonzero-index predictions: exhaustive digit-shape sweep, 0 violations"):
        outcome = sweep_i0(ps=(3, 5, 7), ts=(0, 1), max_T=400)
        assert outcome.cases > 5000
        assert outcome.passed, outcome.violations[:3]


def test_criterion_11_resolved_cases_desk_checks():
    with criterion(11, "resolved special cases: desk equality for (i) and (iii), flags for (ii)"):
        case_iii = check_thm_1_10("iii", p=3, d=2)
        assert case_iii.claimed_bound == 7
        assert s_leq(case_iii.group, case_iii.k).value == 7

        case_i = check_thm_1_10("i", t=1)
        assert case_i.claimed_bound == 4
        assert s_leq(case_i.group, case_i.k).value == 4

        case_ii = check_thm_1_10("ii", p=5)
        assert case_ii.applies and case_ii.claimed_bound == 24
        assert not case_ii.verifiable_at_desk  # group order 625: flags only


def test_criterion_12_two_below_davenport_bound(c33_computed_values):
    with criterion(12, "s_leq(C_3^3, D-2) = 9 = D+2, meeting the bound with equality"):
        claim = check_thm_1_8(C33)
        assert claim.applies and claim.claimed_bound == 9 and claim.k == 5
        result = c33_computed_values[5]
        assert result.value == 9 == claim.d_value + 2
        assert claim.equality_expected


def test_criterion_13_threshold_harness(c33_computed_values):
    with criterion(13, "threshold location: k_G(C_5^3) = 7 from tables, k_G(C_3^3) = 4 computed"):
        bundled = conjecture_harness(C53, source="bundled")
        assert bundled.k_g == 7
        assert bundled.conjecture_k_half is True
        # exact reproduction of the published rows the harness consumed
        published = {5: 33, 6: 24, 7: 19, 8: 18, 9: 17, 10: 15, 11: 14, 12: 14, 13: 13}
        for m, want in published.items():
            hit = known_s_leq(C53, m)
            assert hit is not None and hit.value == want

        computed = conjecture_harness(C33, source="computed",
                                      cfg=SearchConfig(symmetry_reduction=True))
        assert computed.k_g == 4
        assert computed.conjecture_k_half is True
        assert {r.m: r.value for r in computed.rows} == {6: 8, 5: 9, 4: 10, 3: 17}


def test_criterion_14_out_of_reach_results_are_flag_checked_only():
    with criterion(
        14,
        "out-of-desk-reach results carried by hypothesis flags and cited tables only: "
        "C_5^3 interval values (bundled rows, no search), the general congruence bound "
        "(hypothesis flags), the C_p^4 resolved case (order 625, flags only), and "
        "asymptotic statements (not represented)",
    ):
        # C_5^3 interval values come from the bundled table, never from search
        report = conjecture_harness(C53, source="bundled")
        assert all(row.source in ("S10", "k >= D cap (S10)") for row in report.rows)

        # the general congruence bound is reported as hypothesis flags with a
        # claimed bound; nothing here exhausts the search space of C_5^3
        claim = check_thm_1_9(C53, 9)
        assert claim.applies and claim.claimed_bound == 18
        assert not any(name == "search" for name in (claim.d_source,))

        # resolved case (ii) is desk-unverifiable and says so
        assert not check_thm_1_10("ii", p=5).verifiable_at_desk

        # and the desk cap itself: no search is attempted above order 32
        from zerosum.theorems import DESK_ORDER_CAP

        assert C53.order > DESK_ORDER_CAP
