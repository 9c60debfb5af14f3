"""Offline and on-line observer sessions, and prediction scoring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from netboids import rng as rngmod
from netboids.adversary.de import DEConfig, LearnResult, de_run
from netboids.adversary.fitness import Observation
from netboids.adversary.genome import Genome
from netboids.errors import ConfigError, UsageError
from netboids.swarm import kernels
from netboids.swarm.simulation import initial_state, simulate_from
from netboids.swarm.state import SwarmState, Trajectory


@dataclass
class PredictResult:
    start: int
    errors: np.ndarray  # mean over genomes, one entry per predicted step
    cumulated: float

    def to_dict(self) -> dict:
        return {"start": self.start, "errors": self.errors.tolist(), "cumulated": self.cumulated}

    @classmethod
    def from_dict(cls, d: dict) -> PredictResult:
        return cls(int(d["start"]), np.array(d["errors"], dtype=np.float64), float(d["cumulated"]))


def predict(genomes: list[Genome], start: SwarmState, horizon: int, cfg, actual: Trajectory) -> PredictResult:
    """Replay each genome ``horizon`` steps from ``start`` and score it against ``actual``.

    The per-step error is averaged over the genomes; ``cumulated`` sums it
    over the horizon.
    """
    if horizon < 0:
        raise UsageError(f"horizon must be >= 0, got {horizon}")
    if not genomes:
        raise UsageError("predict needs at least one genome")
    if not actual.covers(start.time, start.time + horizon):
        raise UsageError(
            f"actual trajectory [{actual.start_time}, {actual.end_time}] does not cover "
            f"the prediction span [{start.time}, {start.time + horizon}]")
    if horizon == 0:
        return PredictResult(start.time, np.zeros(0), 0.0)
    k = start.time - actual.start_time
    target = np.ascontiguousarray(actual.positions[k + 1:k + 1 + horizon])
    G = np.array([g.to_array() for g in genomes])
    per_genome = kernels.prediction_errors(
        np.ascontiguousarray(start.positions), np.ascontiguousarray(start.velocities),
        target, G, cfg.speed, cfg.space_w, cfg.space_h)
    errors = per_genome.mean(axis=0)
    return PredictResult(start.time, errors, float(errors.sum()))


def offline_session(traj: Trajectory, t0: int, window: int, cfg, de: DEConfig) -> LearnResult:
    """Observe ``window`` steps from ``t0`` and learn for the full generation count."""
    if window < 2:
        raise UsageError(f"window must be >= 2, got {window}")
    obs = Observation.from_trajectory(traj, t0, window)
    return de_run(obs, cfg, de)


@dataclass(frozen=True)
class CyclePlan:
    index: int
    observe_start: int
    predict_start: int
    predict_end: int


def online_schedule(total_steps: int = 10000, window: int = 2, learn_steps: int = 600,
                    predict_steps: int = 1200, cycle_period: int = 667) -> list[CyclePlan]:
    """Cycle ``c`` observes from ``c * cycle_period``; learning occupies the next
    ``learn_steps`` steps; the forecast then runs from the newest state.

    A cycle counts when its observation and learning finish within
    ``total_steps``; its forecast may run past that point (the swarm keeps
    flying).
    """
    if window < 2:
        raise ConfigError(f"window must be >= 2, got {window}")
    if learn_steps < 0 or predict_steps < 0:
        raise ConfigError("learn_steps and predict_steps must be >= 0")
    if not window + learn_steps <= cycle_period <= total_steps:
        raise ConfigError(
            f"need window + learn_steps <= cycle_period <= total_steps, got "
            f"{window} + {learn_steps}, {cycle_period}, {total_steps}")
    plans = []
    c = 0
    while c * cycle_period + window + learn_steps <= total_steps:
        s = c * cycle_period
        p0 = s + window - 1 + learn_steps
        plans.append(CyclePlan(c, s, p0, p0 + predict_steps))
        c += 1
    return plans


@dataclass
class OnlineCycle:
    plan: CyclePlan
    learn: LearnResult
    prediction: PredictResult

    def __iter__(self):
        yield self.learn
        yield self.prediction


def online_session(cfg, de: DEConfig, total_steps: int = 10000, window: int = 2, learn_steps: int = 600,
                   predict_steps: int = 1200, cycle_period: int = 667, generation_cap: int = 50,
                   truth: Trajectory | None = None) -> list[OnlineCycle]:
    """Repeated sample-learn-predict cycles against one continuously running swarm.

    Each cycle's optimizer gets its own seed derived from ``de.seed`` and the
    cycle index, and is stopped after ``generation_cap`` generations.  The
    forecast uses the cycle's ``de.top_k`` best genomes.
    """
    plans = online_schedule(total_steps, window, learn_steps, predict_steps, cycle_period)
    horizon_end = max(p.predict_end for p in plans)
    if truth is None or not truth.covers(0, horizon_end):
        truth = simulate_from(initial_state(cfg), cfg, horizon_end)
    out = []
    for plan in plans:
        obs = Observation.from_trajectory(truth, plan.observe_start, window)
        cycle_de = DEConfig(de.pop_size, de.generations, de.F, de.CR,
                            rngmod.derive_seed(de.seed, f"cycle/{plan.index}"), de.top_k)
        learned = de_run(obs, cfg, cycle_de, budget=generation_cap)
        forecast = predict([g for g, _ in learned.top], truth.at(plan.predict_start),
                           predict_steps, cfg, truth)
        out.append(OnlineCycle(plan, learned, forecast))
    return out
