"""Provider registry: name strings to planner instances."""

from __future__ import annotations

import os

from wareflow.agent.fault import FaultInjectionPlanner
from wareflow.agent.remote import RemotePlanner
from wareflow.agent.rule_planner import RulePlanner
from wareflow.errors import ProviderUnavailable

ENV_ENDPOINT = "WAREFLOW_PLANNER_URL"
ENV_TOKEN = "WAREFLOW_PLANNER_TOKEN"
ENV_MODEL = "WAREFLOW_PLANNER_MODEL"
ENV_TEMPERATURE = "WAREFLOW_PLANNER_TEMPERATURE"
ENV_TIMEOUT = "WAREFLOW_PLANNER_TIMEOUT"


def resolve_provider(name: str = "rule"):
    """rule | remote | fault[:rate=0.3,seed=7]."""
    if name == "rule" or not name:
        return RulePlanner()
    if name == "remote":
        endpoint = os.environ.get(ENV_ENDPOINT)
        if not endpoint:
            raise ProviderUnavailable(f"remote planner needs {ENV_ENDPOINT}")
        return RemotePlanner(
            endpoint=endpoint,
            token=os.environ.get(ENV_TOKEN, ""),
            model=os.environ.get(ENV_MODEL, "planner"),
            temperature=float(os.environ.get(ENV_TEMPERATURE, "0.0")),
            timeout=float(os.environ.get(ENV_TIMEOUT, "30")),
        )
    if name.startswith("fault"):
        rate, seed = 0.3, 0
        if ":" in name:
            for part in name.split(":", 1)[1].split(","):
                key, _, value = part.partition("=")
                if key.strip() == "rate":
                    rate = float(value)
                elif key.strip() == "seed":
                    seed = int(value)
        return FaultInjectionPlanner(RulePlanner(), failure_rate=rate, seed=seed)
    raise ProviderUnavailable(f"unknown provider {name!r}")
