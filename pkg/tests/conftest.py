"""Shared fixtures: cached default runs so the suite stays fast."""

from __future__ import annotations

import pytest

from wareflow.graph import build_graph
from wareflow.sim import default_config, run_simulation

ACCEPTANCE_SEEDS = list(range(1, 21))


@pytest.fixture(scope="session")
def default_log():
    return run_simulation(default_config(seed=7))


@pytest.fixture(scope="session")
def default_graph(default_log):
    return build_graph(default_log)


@pytest.fixture(scope="session")
def seed_logs():
    """Logs for the twenty acceptance seeds, computed once per session."""
    return {seed: run_simulation(default_config(seed=seed)) for seed in ACCEPTANCE_SEEDS}
