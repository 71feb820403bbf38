"""Rules-first query classification into operational vs investigative."""

from __future__ import annotations

import re

# Diagnostic cues that mark a question as investigative. "longer than" and
# "slower than" only count when the comparison targets peers ("others"),
# so factual questions like "how many packages took longer than the
# average" stay operational.
STRONG_CUES = ("why", "bottleneck", "reveal", "root cause")
COMPARATIVE_CUES = (r"longer\s+than\s+(\w+\s+)?others?", r"slower\s+than\s+(\w+\s+)?others?", r"\bslower\b")

OPERATIONAL = "operational"
INVESTIGATIVE = "investigative"


def classify_query(question: str, provider=None) -> str:
    """Rule layer first; the provider hint is consulted only on abstain."""
    if not question or not question.strip():
        raise ValueError("question must be non-empty")
    lowered = question.lower()
    for cue in STRONG_CUES:
        if cue in lowered:
            return INVESTIGATIVE
    for pattern in COMPARATIVE_CUES:
        if re.search(pattern, lowered):
            return INVESTIGATIVE
    if _looks_operational(lowered):
        return OPERATIONAL
    if provider is not None:
        hint = provider.classify_hint(question)
        if hint in (OPERATIONAL, INVESTIGATIVE):
            return hint
    return OPERATIONAL


_OPERATIONAL_OPENERS = ("how many", "how much", "what is", "which", "where", "who", "for each", "what are")


def _looks_operational(lowered: str) -> bool:
    return any(lowered.startswith(op) or f". {op}" in lowered for op in _OPERATIONAL_OPENERS)
