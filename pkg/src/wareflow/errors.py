"""Domain error hierarchy shared by every subsystem."""

from __future__ import annotations


class WareflowError(Exception):
    """Base class for all domain errors; carries a machine-readable code."""

    code = "ERROR"

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"{self.code}: {super().__str__()}"


class ConfigInvalid(WareflowError):
    code = "CONFIG_INVALID"

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(f"{v.code}: {v.message}" for v in self.violations)
        super().__init__(detail or "invalid configuration")


class UnknownResource(WareflowError):
    code = "UNKNOWN_RESOURCE"


class StorageFull(WareflowError):
    code = "STORAGE_FULL"


class NonPositiveSpeed(WareflowError):
    code = "NON_POSITIVE_SPEED"


class NegativeDistance(WareflowError):
    code = "NEGATIVE_DISTANCE"


class IncompleteTrace(WareflowError):
    code = "INCOMPLETE_TRACE"


class UnknownQuestion(WareflowError):
    code = "UNKNOWN_QUESTION"


class UnknownScope(WareflowError):
    code = "UNKNOWN_SCOPE"


class ValidationFailed(WareflowError):
    code = "VALIDATION_FAILED"

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(f"{v.code}: {v.message}" for v in self.violations)
        super().__init__(detail or "graph validation failed")


class ParseFailure(WareflowError):
    code = "PARSE_FAILURE"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IOFailure(WareflowError):
    code = "IO_FAILURE"


class UnmatchedIntent(WareflowError):
    code = "UNMATCHED_INTENT"


class StepExhausted(WareflowError):
    code = "STEP_EXHAUSTED"

    def __init__(self, step_index: int, last_error: str, evidence=None):
        super().__init__(f"step {step_index} failed after retries: {last_error}")
        self.step_index = step_index
        self.last_error = last_error
        self.evidence = evidence or []


class ProviderUnavailable(WareflowError):
    code = "PROVIDER_UNAVAILABLE"


class MalformedReply(WareflowError):
    code = "MALFORMED_REPLY"


class WrongState(WareflowError):
    code = "WRONG_STATE"


class RunNotFound(WareflowError):
    code = "RUN_NOT_FOUND"
