"""Warehouse discharge-flow analysis stack.

Simulates an unloading-to-storage flow, materializes the result as a
property knowledge graph, answers operational and investigative questions
through a pluggable planner pipeline, and verifies everything against a
deterministic analytics oracle computed straight from the event log.
"""

__version__ = "0.1.0"
