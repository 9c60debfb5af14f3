"""Scenario files, seeded batch runs, and persisted, re-aggregatable results."""

from netboids.harness.artifacts import aggregate
from netboids.harness.experiments import (
    RunArtifacts,
    condition_config,
    make_graph,
    report,
    run_experiment,
    run_offline_learning,
    run_online_learning,
    run_swarm_quality,
)
from netboids.harness.scenario import PRESETS, SCENARIO_KEYS, Scenario

__all__ = [
    "PRESETS", "RunArtifacts", "SCENARIO_KEYS", "Scenario", "aggregate", "condition_config",
    "make_graph", "report", "run_experiment", "run_offline_learning", "run_online_learning",
    "run_swarm_quality",
]
