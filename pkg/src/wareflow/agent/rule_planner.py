"""Deterministic planner backed by the template registry.

Stands in for a remote language model: intent matching is keyword-based,
queries come from vetted templates, and investigation sub-questions follow
fixed playbooks, so the whole pipeline replays byte-for-byte.
"""

from __future__ import annotations

from typing import Optional, Sequence, Union

from wareflow.agent import templates
from wareflow.agent.provider import EvidenceItem, PlanStep, SubQuestion, Sufficient
from wareflow.agent.schema import GraphSchema
from wareflow.errors import UnmatchedIntent

SUPPLIER_PLAYBOOK = (
    "I_DISCHARGE_VS_GLOBAL",
    "I_SUPPLIER_WAIT_VS_GLOBAL",
    "I_UTILIZATION_PAIR",  # expands to the AGV and FL utilization steps
    "I_STAGE_TABLE",
)

FORKLIFT_PLAYBOOK = (
    "I_FORKLIFT_WAITS",
    "I_FORKLIFT_UTILIZATION",
)


class RulePlanner:
    name = "rule"

    def classify_hint(self, question: str) -> Optional[str]:
        # the rule layer in classify_query already covers everything this
        # planner knows; abstain so defaults apply
        return None

    def _extract_params(self, entry: templates.TemplateEntry, question: str, schema: GraphSchema) -> dict[str, str]:
        params: dict[str, str] = {}
        for param in entry.params:
            if param == "supplier":
                value = schema.find_supplier(question)
            elif param == "agv":
                value = schema.find_agv(question)
            elif param == "forklift":
                value = schema.find_forklift(question)
            else:  # pragma: no cover - registry only uses the three kinds
                value = None
            if value is None:
                raise UnmatchedIntent(f"question names no {param}: {question!r}")
            params[param] = value
        return params

    def _match(self, question: str, schema: GraphSchema) -> templates.TemplateEntry:
        entry = templates.match_entry(question)
        if entry is None:
            supplier = schema.find_supplier(question)
            if supplier:
                entry = templates.match_entry(question.replace(supplier, "$supplier"))
        if entry is None:
            raise UnmatchedIntent(f"no template matches: {question!r}")
        return entry

    def _steps_for_entry(self, entry: templates.TemplateEntry, params: dict[str, str], start_index: int = 0) -> list[PlanStep]:
        bindings = tuple(f"{k}={v}" for k, v in sorted(params.items()))
        return [
            PlanStep(
                index=start_index,
                intent=entry.intent or entry.template_id,
                required_entities=(f"template={entry.template_id}",) + bindings,
                expected_output=f"shape={entry.shape}; {entry.intent}",
            )
        ]

    def plan(self, question: str, schema: GraphSchema) -> list[PlanStep]:
        lowered = question.lower()
        if "utilization" in lowered and "agv" in lowered and "forklift" in lowered:
            supplier = schema.find_supplier(question)
            if supplier is not None:
                params = {"supplier": supplier}
                return (
                    self._steps_for_entry(templates.entry_by_id("I_AGV_UTILIZATION_VS_GLOBAL"), params, 0)
                    + self._steps_for_entry(templates.entry_by_id("I_FL_UTILIZATION_VS_GLOBAL"), params, 1)
                )
        entry = self._match(question, schema)
        params = self._extract_params(entry, question, schema)
        return self._steps_for_entry(entry, params)

    def to_query(
        self,
        step: PlanStep,
        schema: GraphSchema,
        prior_results: Sequence[EvidenceItem] = (),
        last_error: Optional[str] = None,
    ) -> str:
        template_id = step.binding("template")
        if template_id is None:
            raise UnmatchedIntent(f"step carries no template binding: {step.intent!r}")
        entry = templates.entry_by_id(template_id)
        params = {p: step.binding(p) for p in entry.params}
        if any(v is None for v in params.values()):
            raise UnmatchedIntent(f"step lacks bindings for {entry.template_id}")
        return templates.render_query(entry, params)

    def next_subquestion(
        self, main_question: str, evidence: Sequence[EvidenceItem], schema: GraphSchema
    ) -> Union[SubQuestion, Sufficient]:
        supplier = schema.find_supplier(main_question)
        playbook = self._playbook(main_question, supplier)
        position = len(evidence)
        if position >= len(playbook):
            return Sufficient(self.summarize(main_question, evidence))
        item = playbook[position]
        if item == "I_UTILIZATION_PAIR":
            text = (
                f"What is the utilization rate of AGVs and forklifts during the discharge process for supplier "
                f"{supplier} and how does it compare to the global average utilization rate for these equipments?"
            )
            return SubQuestion(text)
        entry = templates.entry_by_id(item)
        params = {"supplier": supplier} if "supplier" in entry.params else {}
        return SubQuestion(templates.render_text(entry, params))

    def _playbook(self, main_question: str, supplier: Optional[str]) -> tuple[str, ...]:
        if supplier is not None:
            return SUPPLIER_PLAYBOOK
        return FORKLIFT_PLAYBOOK

    def summarize(self, question: str, evidence: Sequence[EvidenceItem]) -> str:
        lines = [f"Question: {question}"]
        for item in evidence:
            lines.append(f"- {item.sub_question}: {item.summary}")
        return "\n".join(lines)
