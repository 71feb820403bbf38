import pytest

from wareflow.agent import BadThenGoodPlanner, GraphSchema, RulePlanner, run_qa_chain
from wareflow.analytics import answer_canonical
from wareflow.errors import StepExhausted, UnmatchedIntent
from wareflow.service import values_match


class TestQaChain:
    def test_forklift_counts_match_oracle(self, default_log, default_graph):
        result = run_qa_chain("How many packages are handled by each forklift?", default_graph, RulePlanner())
        assert values_match(result.structured, answer_canonical("F17", default_log))

    def test_unmatched_intent(self, default_graph):
        with pytest.raises(UnmatchedIntent):
            run_qa_chain("what is the meaning of life", default_graph, RulePlanner())

    def test_retry_succeeds_at_attempt_two(self, default_graph):
        planner = BadThenGoodPlanner(RulePlanner(), bad_queries=1)
        result = run_qa_chain("How many packages are handled by each forklift?", default_graph, planner)
        assert [e.attempt_count for e in result.evidence] == [2]

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_attempt_count_equals_k(self, default_graph, k):
        planner = BadThenGoodPlanner(RulePlanner(), bad_queries=k - 1)
        result = run_qa_chain("How many packages are handled by each forklift?", default_graph, planner, max_retries=3)
        assert result.evidence[0].attempt_count == k

    def test_exhaustion_at_k4(self, default_graph):
        planner = BadThenGoodPlanner(RulePlanner(), bad_queries=3)
        with pytest.raises(StepExhausted) as err:
            run_qa_chain("How many packages are handled by each forklift?", default_graph, planner, max_retries=3)
        assert "broken syntax" in err.value.last_error or err.value.last_error

    def test_error_text_reaches_provider(self, default_graph):
        seen = []

        class Recorder(BadThenGoodPlanner):
            def to_query(self, step, schema, prior_results, last_error=None):
                seen.append(last_error)
                return super().to_query(step, schema, prior_results, last_error)

        planner = Recorder(RulePlanner(), bad_queries=1)
        run_qa_chain("How many packages are handled by each forklift?", default_graph, planner)
        assert seen[0] is None
        assert seen[1] is not None and "SYNTAX_ERROR" in seen[1]

    def test_evidence_contains_full_trace(self, default_graph):
        result = run_qa_chain("Which AGV was the least utilized ?", default_graph, RulePlanner())
        item = result.evidence[0]
        assert item.plan
        assert item.query_text.startswith("MATCH")
        assert item.result is not None
        assert item.summary

    def test_multi_step_plan_merges_records(self, default_graph):
        schema = GraphSchema.from_graph(default_graph)
        question = (
            "What is the utilization rate of AGVs and forklifts during the discharge process for supplier "
            "CamelCargo and how does it compare to the global average utilization rate for these equipments?"
        )
        result = run_qa_chain(question, default_graph, RulePlanner(), schema=schema)
        assert set(result.structured) == {
            "agv_subject_utilization",
            "agv_global_utilization",
            "fl_subject_utilization",
            "fl_global_utilization",
        }
        assert len(result.evidence) == 2
