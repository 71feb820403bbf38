"""Property value model for the knowledge graph.

Values are plain Python (None, bool, int, float, str, list) plus a
DateTime wrapper holding seconds since the simulation epoch. Keeping the
wrapper distinct from float lets the query evaluator type-check
duration_seconds and render ISO-8601 on export without losing precision
internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

from wareflow.sim.log import DEFAULT_EPOCH, iso_render


@dataclass(frozen=True, order=True)
class DateTime:
    seconds: float

    def iso(self, epoch=DEFAULT_EPOCH) -> str:
        return iso_render(self.seconds, epoch)

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"DateTime({self.seconds!r})"


Value = Union[None, bool, int, float, str, DateTime, list]


def value_to_json(value: Value) -> Any:
    """Encode a Value for the JSONL graph format.

    DateTimes carry both the exact float (round-trip fidelity) and the
    rendered ISO string (interop); everything else maps to native JSON.
    """
    if isinstance(value, DateTime):
        return {"$dt": value.seconds, "iso": value.iso()}
    if isinstance(value, list):
        return [value_to_json(v) for v in value]
    return value


def value_from_json(data: Any) -> Value:
    if isinstance(data, dict):
        if "$dt" in data:
            return DateTime(float(data["$dt"]))
        raise ValueError(f"unrecognized value encoding: {data!r}")
    if isinstance(data, list):
        return [value_from_json(v) for v in data]
    return data


def cypher_literal(value: Value) -> str:
    """Render a Value as a Cypher literal for script export."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, DateTime):
        return f'datetime("{value.iso()}")'
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace("'", "\\'")
        return f"'{escaped}'"
    if isinstance(value, list):
        return "[" + ", ".join(cypher_literal(v) for v in value) + "]"
    return repr(value)
