"""HTTP-backed planner speaking a chat-completion style contract.

Request JSON: {"model": str, "temperature": float, "messages":
[{"role": "system"|"user", "content": str}]}. Response JSON: the first
choice's message content is the model reply:
{"choices": [{"message": {"content": str}}]}. A malformed reply triggers
one reformat retry, then MALFORMED_REPLY.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from typing import Optional, Sequence, Union

import httpx

from wareflow.agent.provider import EvidenceItem, PlanStep, SubQuestion, Sufficient
from wareflow.agent.schema import GraphSchema
from wareflow.errors import MalformedReply, ProviderUnavailable

MAX_TEMPERATURE = 0.3
EVIDENCE_ROW_LIMIT = 20


def _load_prompt(name: str) -> str:
    return resources.files("wareflow.agent").joinpath(f"prompts/{name}.txt").read_text(encoding="utf-8")


def _render_evidence(evidence: Sequence[EvidenceItem], row_limit: int = EVIDENCE_ROW_LIMIT) -> str:
    """Bounded evidence rendering: sub-question, top rows, summary."""
    blocks = []
    for item in evidence:
        lines = [f"Sub-question: {item.sub_question}", f"Summary: {item.summary}"]
        if item.result is not None:
            lines.append("Columns: " + ", ".join(item.result.columns))
            for row in item.result.rows[:row_limit]:
                lines.append("  " + json.dumps(row, default=str))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) if blocks else "(none yet)"


class RemotePlanner:
    name = "remote"

    def __init__(
        self,
        endpoint: str,
        token: str = "",
        model: str = "planner",
        temperature: float = 0.0,
        timeout: float = 30.0,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        if not 0.0 <= temperature <= MAX_TEMPERATURE:
            raise ValueError(f"temperature must be within [0.0, {MAX_TEMPERATURE}], got {temperature}")
        self.endpoint = endpoint
        self.token = token
        self.model = model
        self.temperature = temperature
        self.timeout = timeout
        self._client = httpx.Client(transport=transport, timeout=timeout)

    def close(self) -> None:
        self._client.close()

    # transport

    def _complete(self, system: str, user: str) -> str:
        headers = {"Content-Type": "application/json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        payload = {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
        }
        try:
            response = self._client.post(self.endpoint, json=payload, headers=headers)
            response.raise_for_status()
            body = response.json()
        except (httpx.TransportError, httpx.TimeoutException) as exc:
            raise ProviderUnavailable(f"planner endpoint unreachable: {exc}") from exc
        except httpx.HTTPStatusError as exc:
            raise ProviderUnavailable(f"planner endpoint returned {exc.response.status_code}") from exc
        except json.JSONDecodeError as exc:
            raise MalformedReply(f"planner reply is not JSON: {exc}") from exc
        try:
            return body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise MalformedReply("planner reply lacks choices[0].message.content") from exc

    def _ask(self, system: str, user: str, parse):
        """One reformat retry on unparseable content."""
        content = self._complete(system, user)
        try:
            return parse(content)
        except MalformedReply:
            retry = user + "\n\nYour previous reply could not be parsed. Follow the reply format exactly."
            content = self._complete(system, retry)
            try:
                return parse(content)
            except MalformedReply as exc:
                raise MalformedReply(f"planner reply unparseable after retry: {exc}") from exc

    # provider surface

    def classify_hint(self, question: str) -> Optional[str]:
        system = "Classify the question as 'operational' (factual lookup) or 'investigative' (diagnosis). Reply with one word."
        try:
            reply = self._complete(system, question).strip().lower()
        except (ProviderUnavailable, MalformedReply):
            return None
        if "investigative" in reply:
            return "investigative"
        if "operational" in reply:
            return "operational"
        return None

    def plan(self, question: str, schema: GraphSchema) -> list[PlanStep]:
        system = _load_prompt("system").replace("{schema}", schema.describe())
        user = _load_prompt("plan").replace("{question}", question)

        def parse(content: str) -> list[PlanStep]:
            data = _extract_json(content)
            if not isinstance(data, list) or not data:
                raise MalformedReply("plan must be a non-empty JSON array")
            steps = []
            for index, raw in enumerate(data):
                if not isinstance(raw, dict) or "intent" not in raw:
                    raise MalformedReply("each step needs an intent")
                steps.append(
                    PlanStep(
                        index=index,
                        intent=str(raw["intent"]),
                        required_entities=tuple(str(e) for e in raw.get("required_entities", [])),
                        expected_output=str(raw.get("expected_output", "")),
                    )
                )
            return steps

        return self._ask(system, user, parse)

    def to_query(
        self,
        step: PlanStep,
        schema: GraphSchema,
        prior_results: Sequence[EvidenceItem] = (),
        last_error: Optional[str] = None,
    ) -> str:
        system = _load_prompt("system").replace("{schema}", schema.describe())
        error_section = f"The previous query failed with: {last_error}\nFix it." if last_error else ""
        user = (
            _load_prompt("query")
            .replace("{intent}", step.intent)
            .replace("{entities}", ", ".join(step.required_entities) or "(none)")
            .replace("{expected_output}", step.expected_output or "(unspecified)")
            .replace("{error_section}", error_section)
        )

        def parse(content: str) -> str:
            query = _extract_query(content)
            if not query:
                raise MalformedReply("no query found in reply")
            return query

        return self._ask(system, user, parse)

    def next_subquestion(
        self, main_question: str, evidence: Sequence[EvidenceItem], schema: GraphSchema
    ) -> Union[SubQuestion, Sufficient]:
        system = _load_prompt("system").replace("{schema}", schema.describe())
        user = (
            _load_prompt("subquestion")
            .replace("{main_question}", main_question)
            .replace("{evidence}", _render_evidence(evidence))
        )

        def parse(content: str):
            data = _extract_json(content)
            if not isinstance(data, dict) or "action" not in data:
                raise MalformedReply("reply must carry an action")
            if data["action"] == "sufficient":
                return Sufficient(str(data.get("summary", "")))
            if data["action"] == "ask" and data.get("question"):
                return SubQuestion(str(data["question"]))
            raise MalformedReply(f"unrecognized action {data.get('action')!r}")

        return self._ask(system, user, parse)

    def summarize(self, question: str, evidence: Sequence[EvidenceItem]) -> str:
        system = "Summarize analytics findings precisely and briefly."
        user = (
            _load_prompt("summarize")
            .replace("{question}", question)
            .replace("{evidence}", _render_evidence(evidence))
        )
        return self._complete(system, user).strip()


def _extract_json(content: str):
    content = content.strip()
    fenced = re.search(r"```(?:json)?\s*(.*?)```", content, re.DOTALL)
    if fenced:
        content = fenced.group(1).strip()
    start = content.find("[") if content.find("[") != -1 and (content.find("{") == -1 or content.find("[") < content.find("{")) else content.find("{")
    if start == -1:
        raise MalformedReply("no JSON object or array in reply")
    try:
        return json.loads(content[start:])
    except json.JSONDecodeError:
        pass
    # try trimming trailing prose after the JSON body
    decoder = json.JSONDecoder()
    try:
        value, _ = decoder.raw_decode(content[start:])
        return value
    except json.JSONDecodeError as exc:
        raise MalformedReply(f"invalid JSON in reply: {exc}") from exc


def _extract_query(content: str) -> str:
    fenced = re.search(r"```(?:cypher)?\s*(.*?)```", content, re.DOTALL)
    if fenced:
        return fenced.group(1).strip()
    stripped = content.strip()
    if stripped.upper().startswith(("MATCH", "CALL", "UNWIND", "WITH")):
        return stripped
    return ""
