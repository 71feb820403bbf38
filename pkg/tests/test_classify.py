import pytest

from wareflow.agent import RulePlanner, classify_query
from wareflow.analytics import CANONICAL_QUESTIONS


class TestClassification:
    def test_paper_operational_example(self):
        assert classify_query("Which AGV was the least utilized ?") == "operational"

    def test_paper_investigative_examples(self):
        assert classify_query("Why did CamelCargo's discharge take longer than others?") == "investigative"
        assert classify_query("What do the differences in forklift waiting times reveal about the discharge flow?") == "investigative"
        assert classify_query("Why was the supplier AuroraFarms discharge slower than others?") == "investigative"

    def test_every_canonical_question_is_operational(self):
        planner = RulePlanner()
        for question in CANONICAL_QUESTIONS:
            assert classify_query(question.text, planner) == "operational", question.question_id

    def test_longer_than_average_stays_operational(self):
        assert classify_query("How many packages took longer than the average unload time?") == "operational"

    def test_bottleneck_cue(self):
        assert classify_query("Identify the bottleneck in the discharge flow") == "investigative"

    def test_root_cause_cue(self):
        assert classify_query("Find the root cause of slow placements") == "investigative"

    def test_empty_question_rejected(self):
        with pytest.raises(ValueError):
            classify_query("   ")

    def test_provider_hint_consulted_on_abstain(self):
        class HintingProvider:
            def classify_hint(self, question):
                return "investigative"

        # no cue, no operational opener: the rules abstain
        question = "Evaluate equipment allocation during the shift"
        assert classify_query(question, HintingProvider()) == "investigative"
        assert classify_query(question) == "operational"

    def test_total_classification(self):
        # anything nonempty maps to exactly one class without errors
        for text in ("x", "what?", "Tell me about forklifts", "123"):
            assert classify_query(text) in ("operational", "investigative")
