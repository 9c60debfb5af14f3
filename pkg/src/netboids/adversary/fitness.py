"""Learning error: how far the observer's vision-model replay lands from what it saw."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from netboids.adversary.genome import Genome
from netboids.errors import UsageError
from netboids.swarm import kernels
from netboids.swarm.state import Trajectory


@dataclass(frozen=True)
class Observation:
    """``window`` consecutive position snapshots starting at ``t0``, plus headings at ``t0``."""

    t0: int
    positions: np.ndarray
    velocities: np.ndarray

    def __post_init__(self):
        if self.positions.ndim != 3 or self.positions.shape[2] != 2:
            raise ValueError("observation positions must have shape (window, n, 2)")
        if self.velocities.shape != self.positions.shape[1:]:
            raise ValueError("observation velocities must have shape (n, 2)")

    @property
    def window(self) -> int:
        return self.positions.shape[0]

    @property
    def n(self) -> int:
        return self.positions.shape[1]

    @classmethod
    def from_trajectory(cls, traj: Trajectory, t0: int, window: int) -> Observation:
        if window < 1 or not traj.covers(t0, t0 + window - 1):
            raise UsageError(
                f"window [{t0}, {t0 + window - 1}] is outside the trajectory "
                f"[{traj.start_time}, {traj.end_time}]")
        k = t0 - traj.start_time
        return cls(
            t0,
            np.ascontiguousarray(traj.positions[k:k + window]),
            np.ascontiguousarray(traj.velocities[k]),
        )


def population_learning_errors(genomes: np.ndarray, obs: Observation, cfg) -> np.ndarray:
    """Learning error of every row of ``genomes`` (shape ``(P, 6)``)."""
    if obs.window < 2:
        raise UsageError(f"the observation window must span at least 2 steps, got {obs.window}")
    return kernels.population_errors(
        obs.positions[0], obs.velocities, obs.positions[-1],
        np.ascontiguousarray(genomes, dtype=np.float64),
        obs.window - 1, cfg.speed, cfg.space_w, cfg.space_h)


def learning_error(g: Genome, obs: Observation, cfg) -> float:
    """Summed distance between observed and replayed positions at the last observed step.

    The replay always assumes vision-based neighborhoods with the genome's
    parameters, whatever mechanism actually drove the swarm.
    """
    return float(population_learning_errors(g.to_array()[None, :], obs, cfg)[0])
