"""Classic DE/rand/1/bin over the boid-parameter genome."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from netboids import rng as rngmod
from netboids.adversary.fitness import Observation, population_learning_errors
from netboids.adversary.genome import GENES, Genome, clamp, random_population
from netboids.errors import ConfigError

N_GENES = len(GENES)


@dataclass(frozen=True)
class DEConfig:
    pop_size: int = 100
    generations: int = 300
    F: float = 0.8
    CR: float = 0.9
    seed: int = 0
    top_k: int = 5

    def __post_init__(self):
        if self.pop_size < 4:
            raise ConfigError(f"pop_size must be >= 4, got {self.pop_size}")
        if self.generations < 0:
            raise ConfigError(f"generations must be >= 0, got {self.generations}")
        if not 0.0 <= self.F <= 2.0:
            raise ConfigError(f"F must lie in [0, 2], got {self.F}")
        if not 0.0 <= self.CR <= 1.0:
            raise ConfigError(f"CR must lie in [0, 1], got {self.CR}")
        if not 1 <= self.top_k <= self.pop_size:
            raise ConfigError(f"top_k must lie in [1, pop_size], got {self.top_k}")


def mutate(r1: np.ndarray, r2: np.ndarray, r3: np.ndarray, F: float) -> np.ndarray:
    return clamp(r1 + F * (r2 - r3))


def crossover(target: np.ndarray, donor: np.ndarray, CR: float, rng: np.random.Generator) -> np.ndarray:
    """Binomial crossover; one randomly chosen gene always comes from the donor."""
    take = rng.random(target.shape[-1]) <= CR
    take[rng.integers(target.shape[-1])] = True
    return np.where(take, donor, target)


def de_mutate(r1: Genome, r2: Genome, r3: Genome, F: float) -> Genome:
    return Genome.from_array(mutate(r1.to_array(), r2.to_array(), r3.to_array(), F))


def de_crossover(target: Genome, donor: Genome, CR: float, rng: np.random.Generator) -> Genome:
    return Genome.from_array(crossover(target.to_array(), donor.to_array(), CR, rng))


def _pick_three(rng: np.random.Generator, pop_size: int, target: int) -> np.ndarray:
    idx = rng.choice(pop_size - 1, size=3, replace=False)
    return idx + (idx >= target)


@dataclass
class LearnResult:
    best: Genome
    best_fitness: float
    fitness_history: list[float]
    elapsed: int
    top: list[tuple[Genome, float]] = field(default_factory=list)
    runtime_s: float = 0.0

    def to_dict(self, with_runtime: bool = True) -> dict:
        d = {
            "best": self.best.as_dict(),
            "best_fitness": self.best_fitness,
            "fitness_history": list(self.fitness_history),
            "elapsed": self.elapsed,
            "top": [{"genome": g.as_dict(), "fitness": f} for g, f in self.top],
        }
        if with_runtime:
            d["runtime_s"] = self.runtime_s
        return d

    @classmethod
    def from_dict(cls, d: dict) -> LearnResult:
        return cls(
            best=Genome.from_dict(d["best"]),
            best_fitness=float(d["best_fitness"]),
            fitness_history=[float(x) for x in d["fitness_history"]],
            elapsed=int(d["elapsed"]),
            top=[(Genome.from_dict(t["genome"]), float(t["fitness"])) for t in d.get("top", [])],
            runtime_s=float(d.get("runtime_s", 0.0)),
        )

    def to_json(self, with_runtime: bool = True) -> str:
        return json.dumps(self.to_dict(with_runtime), indent=2)

    @classmethod
    def from_json(cls, text: str) -> LearnResult:
        return cls.from_dict(json.loads(text))


def evolve(objective: Callable[[np.ndarray], np.ndarray], de: DEConfig, budget: int | None = None,
           rng: np.random.Generator | None = None, initial: np.ndarray | None = None,
           on_generation: Callable[[int, np.ndarray, np.ndarray], None] | None = None) -> LearnResult:
    """Minimize ``objective`` (rows of a ``(P, 6)`` array -> fitness vector).

    All mutation and crossover draws for a generation are made in target
    order before the batch of trials is scored, so the result depends only
    on the seed.  A trial replaces its target when it is at least as fit.
    """
    started = time.perf_counter()
    rng = rngmod.stream(de.seed, rngmod.DE) if rng is None else rng
    generations = de.generations if budget is None else min(de.generations, max(0, budget))
    pop = random_population(de.pop_size, rng) if initial is None else clamp(np.array(initial, dtype=np.float64))
    if pop.shape != (de.pop_size, N_GENES):
        raise ConfigError(f"initial population must have shape ({de.pop_size}, {N_GENES})")
    fit = np.asarray(objective(pop), dtype=np.float64)
    history = [float(fit.min())]
    if on_generation is not None:
        on_generation(0, pop, fit)
    trials = np.empty_like(pop)
    for gen in range(1, generations + 1):
        for i in range(de.pop_size):
            r1, r2, r3 = _pick_three(rng, de.pop_size, i)
            donor = mutate(pop[r1], pop[r2], pop[r3], de.F)
            trials[i] = crossover(pop[i], donor, de.CR, rng)
        trial_fit = np.asarray(objective(trials), dtype=np.float64)
        better = trial_fit <= fit
        pop[better] = trials[better]
        fit[better] = trial_fit[better]
        history.append(float(fit.min()))
        if on_generation is not None:
            on_generation(gen, pop, fit)
    ranking = np.argsort(fit, kind="stable")
    top = [(Genome.from_array(pop[k]), float(fit[k])) for k in ranking[:de.top_k]]
    return LearnResult(
        best=top[0][0],
        best_fitness=top[0][1],
        fitness_history=history,
        elapsed=generations,
        top=top,
        runtime_s=time.perf_counter() - started,
    )


def de_run(obs: Observation, cfg, de: DEConfig, budget: int | None = None) -> LearnResult:
    """Fit the six boid parameters to ``obs`` by differential evolution."""
    return evolve(lambda pop: population_learning_errors(pop, obs, cfg), de, budget)
