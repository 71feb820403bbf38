import math

import pytest
from hypothesis import given, strategies as st

from wareflow.agent import FaultInjectionPlanner, RulePlanner
from wareflow.service import eval_pass_at_k, pass_at_k, values_match


class TestEstimator:
    def test_all_correct(self):
        assert pass_at_k(2, 2, 1) == 1.0
        assert pass_at_k(2, 2, 2) == 1.0

    def test_none_correct(self):
        assert pass_at_k(4, 0, 2) == 0.0

    def test_half_correct_pass2(self):
        # n=2, c=1: 1 - C(1,2)/C(2,2) -> C(1,2)=0 -> 1.0
        assert pass_at_k(2, 1, 2) == 1.0
        # n=4, c=2, k=2: 1 - C(2,2)/C(4,2) = 1 - 1/6
        assert pass_at_k(4, 2, 2) == pytest.approx(1 - 1 / 6)

    def test_k_exceeds_n(self):
        with pytest.raises(ValueError):
            pass_at_k(1, 1, 2)

    @given(st.integers(1, 30), st.integers(0, 30), st.integers(1, 30))
    def test_bounds_and_monotonicity(self, n, c, k):
        c = min(c, n)
        k = min(k, n)
        value = pass_at_k(n, c, k)
        assert 0.0 <= value <= 1.0
        if k + 1 <= n:
            assert pass_at_k(n, c, k + 1) >= value
        expected_p1 = c / n
        assert pass_at_k(n, c, 1) == pytest.approx(expected_p1)


class TestValuesMatch:
    def test_numeric_tolerance(self):
        assert values_match(1.0000001, 1.0, rtol=1e-6)
        assert not values_match(1.1, 1.0, rtol=1e-6)
        assert values_match(1, 1.0)
        assert values_match(5, 5)
        assert not values_match(5, 6)

    def test_structures(self):
        assert values_match({"a": [1, 2.0]}, {"a": [1, 2.0]})
        assert not values_match({"a": 1}, {"b": 1})
        assert not values_match([1, 2], [2, 1])
        assert values_match(None, None)
        assert not values_match(None, 0)

    def test_bool_not_numeric(self):
        assert not values_match(True, 1)
        assert values_match(True, True)


class TestHarness:
    def test_rule_planner_is_perfect(self, default_log, default_graph):
        report = eval_pass_at_k(default_log, default_graph, RulePlanner(), attempts=2, k_list=(1, 2))
        overall = report.overall()
        assert overall[1] == 1.0 and overall[2] == 1.0
        assert len(report.questions) == 26

    def test_category_averages_recompute(self, default_log, default_graph):
        report = eval_pass_at_k(default_log, default_graph, RulePlanner(), attempts=2, k_list=(1, 2))
        categories = report.category_averages()
        for category, averages in categories.items():
            members = [s for s in report.questions if s.category == category]
            for k, value in averages.items():
                assert value == pytest.approx(sum(m.pass_at[k] for m in members) / len(members))

    def test_attempt_precondition(self, default_log, default_graph):
        with pytest.raises(ValueError):
            eval_pass_at_k(default_log, default_graph, RulePlanner(), attempts=1, k_list=(2,))

    def test_fault_provider_band(self, default_log, default_graph):
        fault = FaultInjectionPlanner(RulePlanner(), failure_rate=0.3, seed=42)
        report = eval_pass_at_k(default_log, default_graph, fault, attempts=10, k_list=(1, 2))
        overall = report.overall()
        assert 0.6 <= overall[1] <= 0.8
        assert overall[2] > overall[1]

    def test_failed_attempts_never_abort(self, default_log, default_graph):
        always_bad = FaultInjectionPlanner(RulePlanner(), failure_rate=1.0, seed=1)
        report = eval_pass_at_k(default_log, default_graph, always_bad, attempts=2, k_list=(1, 2))
        assert report.overall()[1] == 0.0
