"""The randomized/exhaustive cross-validation sweeps themselves."""

from zerosum import (
    make_group,
    run_all_sweeps,
    sweep_congruence,
    sweep_i0,
    sweep_row_transform,
    sweep_zerosub_soundness,
)


class TestIndividualSweeps:
    def test_i0_small(self):
        outcome = sweep_i0(ps=(3,), ts=(0,), max_T=80)
        assert outcome.name == "i0-predictions"
        assert outcome.cases > 100
        assert outcome.passed and outcome.violations == ()

    def test_i0_includes_p2_via_4_9(self):
        outcome = sweep_i0(ps=(2, 3), ts=(0, 1), max_T=60)
        assert outcome.passed

    def test_row_transform(self):
        outcome = sweep_row_transform(count=50, seed=1)
        assert outcome.cases == 50
        assert outcome.passed

    def test_congruence(self):
        outcome = sweep_congruence(samples=40, seed=2)
        assert outcome.cases == 120  # samples x 3 default groups
        assert outcome.passed

    def test_congruence_custom_groups(self):
        outcome = sweep_congruence(samples=10, seed=2, groups=(make_group([2, 2]),))
        assert outcome.cases == 10
        assert outcome.passed

    def test_zerosub_soundness(self):
        outcome = sweep_zerosub_soundness(samples=40, seed=3)
        assert outcome.cases == 40
        assert outcome.passed


class TestRunAll:
    def test_fixed_order_and_determinism(self):
        kwargs = dict(seed=5, max_T=60, row_count=20,
                      congruence_samples=20, soundness_samples=20)
        first = run_all_sweeps(**kwargs)
        second = run_all_sweeps(**kwargs)
        assert [o.name for o in first] == [
            "i0-predictions",
            "row-transform",
            "count-congruence",
            "zerosub-soundness",
        ]
        assert first == second
        assert all(o.passed for o in first)
